#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "kernels/impl.hpp"

namespace fhenon::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

void LaneBatch::validate() const {
  const std::size_t n = x1.size();
  if (c0.size() != n || c1.size() != n || x2.size() != n || escaped_at.size() != n)
    throw std::invalid_argument("lane batch spans differ in length");
}

const KernelTable* kernels_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return &scalar::kTable;
    case Isa::Avx2:
#if defined(FHENON_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &avx2::kTable;
#endif
      return nullptr;
    case Isa::Neon:
#if defined(FHENON_HAVE_NEON)
      return &neon::kTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
    if (kernels_for(isa)) out.push_back(isa);
  return out;
}

namespace {

const KernelTable* pick_default() noexcept {
  if (const char* env = std::getenv("FHENON_SIMD")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
      if (want == isa_name(isa))
        if (const auto* t = kernels_for(isa)) return t;
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (const auto* t = kernels_for(isa)) return t;
  return &scalar::kTable;
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{pick_default()};
  return slot;
}

}  // namespace

const KernelTable& active_kernels() noexcept { return *active_slot().load(std::memory_order_acquire); }

bool set_active_isa(Isa isa) noexcept {
  const auto* t = kernels_for(isa);
  if (!t) return false;
  active_slot().store(t, std::memory_order_release);
  return true;
}

}  // namespace fhenon::kernels
