#pragma once

#include "fhenon/kernels.hpp"

namespace fhenon::kernels {

namespace scalar {
extern const KernelTable kTable;
}

#if defined(FHENON_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

#if defined(FHENON_HAVE_NEON)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace fhenon::kernels
