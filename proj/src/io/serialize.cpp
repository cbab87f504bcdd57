#include <cmath>

#include "fhenon/io.hpp"

namespace fhenon::io {

namespace {

std::string_view branch_name(FixedPointBranch b) {
  switch (b) {
    case FixedPointBranch::P1: return "P1";
    case FixedPointBranch::P2: return "P2";
    case FixedPointBranch::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::string_view stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Marginal: return "marginal";
  }
  return "unknown";
}

// JSON has no NaN; absent values become null.
nlohmann::json real_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json state_json(const StateVec& s) {
  auto a = nlohmann::json::array();
  for (double v : s.values()) a.push_back(real_or_null(v));
  return a;
}

}  // namespace

void write_orbit_csv(std::ostream& os, const OrbitTrace& trace) {
  os << "n,x1,x2\n";
  for (std::size_t n = 0; n < trace.states.size(); ++n) {
    const auto& s = trace.states[n];
    os << n << ',' << format_real(s.x1()) << ',' << format_real(s.x2()) << '\n';
  }
}

void write_fixed_points_csv(std::ostream& os, const std::vector<FixedPoint>& pts) {
  os << "branch,p,lambda_max,stability\n";
  for (const auto& fp : pts)
    os << branch_name(fp.branch) << ',' << format_real(fp.p) << ',' << format_real(fp.lambda_max)
       << ',' << stability_name(fp.stability) << '\n';
}

void write_stability_csv(std::ostream& os, const StabilityGrid& grid) {
  os << "c0,c1,stable\n";
  for (std::size_t i = 0; i < grid.c0_axis.count; ++i)
    for (std::size_t j = 0; j < grid.c1_axis.count; ++j)
      os << format_real(grid.c0_axis.at(i)) << ',' << format_real(grid.c1_axis.at(j)) << ','
         << (grid.at(i, j) ? 1 : 0) << '\n';
}

void write_lyapunov_csv(std::ostream& os, double c0, double c1, const LyapunovEstimate& est) {
  os << "c0,c1,h_mean,h_std,n_valid\n";
  os << format_real(c0) << ',' << format_real(c1) << ',' << format_real(est.h_mean) << ','
     << format_real(est.h_std) << ',' << est.n_valid << '\n';
}

void write_diagram_csv(std::ostream& os, const BifurcationDiagram& diag) {
  os << "c_value,x1_value,class,h\n";
  for (const auto& s : diag.samples) {
    const std::string c = format_real(s.c);
    const std::string h = s.h ? format_real(*s.h) : std::string();
    std::string cls(kind_name(s.kind));
    if (s.kind == AttractorKind::Periodic) cls += ":" + std::to_string(s.period);
    if (s.x1.empty()) {
      os << c << ",," << cls << ',' << h << '\n';
      continue;
    }
    for (double x : s.x1) os << c << ',' << format_real(x) << ',' << cls << ',' << h << '\n';
  }
}

void write_grid_csv(std::ostream& os, const SweepGrid& grid) {
  os << "c0,c1,h_mean,h_std,class,period,n_valid\n";
  for (const auto& cell : grid.cells) {
    os << format_real(cell.c0) << ',' << format_real(cell.c1) << ',' << format_real(cell.h_mean)
       << ',' << format_real(cell.h_std) << ',' << kind_name(cell.kind) << ',';
    if (cell.period > 0) os << cell.period;
    os << ',' << cell.n_valid << '\n';
  }
}

void write_basin_csv(std::ostream& os, const CoexistenceReport& report) {
  os << "ic1,ic2,attractor_id\n";
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    const StateVec ic = report.grid.at(i);
    os << format_real(ic.x1()) << ',' << format_real(ic.x2()) << ',' << report.labels[i] << '\n';
  }
}

nlohmann::json to_json(const FixedPoint& fp) {
  return {{"branch", branch_name(fp.branch)},
          {"p", fp.p},
          {"lambda_max", fp.lambda_max},
          {"stability", stability_name(fp.stability)}};
}

nlohmann::json to_json(const LyapunovEstimate& est) {
  nlohmann::json j;
  j["h_mean"] = real_or_null(est.h_mean);
  j["h_std"] = real_or_null(est.h_std);
  j["n_valid"] = est.n_valid;
  auto per = nlohmann::json::array();
  for (const auto& r : est.per_ic)
    per.push_back({{"ic", state_json(r.ic)}, {"h", real_or_null(r.h)}, {"diverged", r.diverged}});
  j["per_ic"] = std::move(per);
  return j;
}

nlohmann::json to_json(const AttractorClass& cls) {
  nlohmann::json j;
  j["kind"] = kind_name(cls.kind);
  j["period"] = cls.period;
  j["h"] = cls.h ? real_or_null(*cls.h) : nlohmann::json(nullptr);
  j["negative_h"] = cls.negative_h;
  auto cyc = nlohmann::json::array();
  for (const auto& s : cls.cycle) cyc.push_back(state_json(s));
  j["cycle"] = std::move(cyc);
  return j;
}

nlohmann::json to_json(const CoexistenceReport& report) {
  nlohmann::json j;
  const auto& g = report.grid;
  j["grid"] = {{"x1_min", g.x1_axis.lo}, {"x1_max", g.x1_axis.hi}, {"x1_count", g.x1_axis.count},
               {"x2_min", g.x2_axis.lo}, {"x2_max", g.x2_axis.hi}, {"x2_count", g.x2_axis.count}};
  j["seed"] = report.seed;
  auto list = nlohmann::json::array();
  for (std::size_t id = 0; id < report.attractors.size(); ++id) {
    const auto& a = report.attractors[id];
    auto aj = to_json(a.representative);
    aj["id"] = id;
    aj["representative_ic"] = state_json(a.representative_ic);
    aj["first_ic_index"] = a.first_ic_index;
    aj["basin_count"] = a.basin_count;
    aj["basin_fraction"] = a.basin_fraction;
    aj["h_mean"] = real_or_null(a.h_mean);
    aj["h_std"] = real_or_null(a.h_std);
    list.push_back(std::move(aj));
  }
  j["attractors"] = std::move(list);
  j["divergent_count"] = report.divergent_count;
  j["divergent_fraction"] = report.divergent_fraction;
  return j;
}

}  // namespace fhenon::io
