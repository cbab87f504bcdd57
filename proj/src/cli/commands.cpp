#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "fhenon/attractor.hpp"
#include "fhenon/cli.hpp"
#include "fhenon/fixed_points.hpp"
#include "fhenon/io.hpp"
#include "fhenon/kernels.hpp"
#include "fhenon/lyapunov.hpp"
#include "fhenon/map.hpp"
#include "fhenon/parallel.hpp"
#include "fhenon/sweep.hpp"

#ifndef FHENON_VERSION
#define FHENON_VERSION "0.0.0"
#endif

namespace fhenon::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Formats {
  bool csv = false, json = false, png = false;
};

Formats parse_formats(const std::string& text) {
  Formats f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") f.csv = true;
    else if (item == "json") f.json = true;
    else if (item == "png") f.png = true;
    else if (!item.empty())
      throw ConfigError("unknown format '" + item + "' (expected csv, json or png)");
  }
  if (!f.csv && !f.json && !f.png) throw ConfigError("format selects no output");
  return f;
}

/// Files written by one run. Everything is removed again if the run fails.
class Outputs {
 public:
  Outputs(fs::path dir, Formats formats) : dir_(std::move(dir)), formats_(formats) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw io::IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  const Formats& formats() const noexcept { return formats_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  void text(const std::string& name, const std::string& content) {
    io::write_text_file(claim(name), content);
  }

  template <typename Writer>
  void csv(const std::string& name, Writer&& write) {
    std::ostringstream os;
    write(os);
    text(name, os.str());
  }

  void png(const std::string& name, const io::Image& img) { io::write_png(claim(name), img); }

  fs::path claim(const std::string& name) {
    names_.push_back(name);
    return dir_ / name;
  }

  void discard() noexcept {
    for (const auto& n : names_) {
      std::error_code ec;
      fs::remove(dir_ / n, ec);
      auto part = dir_ / n;
      part += ".part";
      fs::remove(part, ec);
    }
    names_.clear();
  }

 private:
  fs::path dir_;
  Formats formats_;
  std::vector<std::string> names_;
};

struct Context {
  const RunConfig& cfg;
  Outputs& out;
  std::ostream& log;
  json result = json::object();
  unsigned threads = 1;
};

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json state_json(const StateVec& s) {
  auto a = json::array();
  for (double v : s.values()) a.push_back(real_or_null(v));
  return a;
}

MapParams map_params(const RunConfig& cfg) {
  MapParams p{cfg.real("alpha"), cfg.real("beta")};
  p.validate();
  return p;
}

FilterCoeffs two_taps(const RunConfig& cfg) { return {cfg.real("c0"), cfg.real("c1")}; }

std::size_t count_of(const RunConfig& cfg, std::string_view key) {
  const auto n = cfg.integer(key);
  if (n < 1) throw ConfigError("'" + std::string(key) + "' must be at least 1");
  return static_cast<std::size_t>(n);
}

Axis axis_of(const RunConfig& cfg, const std::string& prefix) {
  Axis a{cfg.real(prefix + "_min"), cfg.real(prefix + "_max"), count_of(cfg, prefix + "_count")};
  a.validate();
  return a;
}

IcBox ic_box(const RunConfig& cfg) {
  IcBox b{cfg.real("ic_x1_min"), cfg.real("ic_x1_max"), cfg.real("ic_x2_min"), cfg.real("ic_x2_max")};
  b.validate();
  return b;
}

Accumulation accumulation(const RunConfig& cfg) {
  return cfg.text("accumulation") == "after-transient" ? Accumulation::AfterTransient
                                                       : Accumulation::WholeRun;
}

/// Ensemble settings for commands that estimate h from random ICs.
LyapunovConfig lyapunov_config(const RunConfig& cfg) {
  LyapunovConfig lc;
  lc.n_total = cfg.integer("n_total");
  lc.n_transient = cfg.integer("n_transient");
  const auto n_ics = cfg.integer("n_ics");
  if (n_ics < 1) throw ConfigError("'n_ics' must be at least 1");
  lc.n_ics = static_cast<std::size_t>(n_ics);
  lc.ic_box = ic_box(cfg);
  lc.seed = cfg.seed("seed");
  lc.renorm_interval = cfg.integer("renorm_interval");
  lc.accumulation = accumulation(cfg);
  lc.guard = cfg.real("guard");
  lc.validate();
  return lc;
}

ClassifyConfig classify_config(const RunConfig& cfg) {
  ClassifyConfig cc;
  cc.transient = cfg.integer("transient");
  cc.tail = cfg.integer("tail");
  cc.tol = cfg.real("tol");
  const auto mp = cfg.integer("max_period");
  if (mp < 1 || mp > 1'000'000) throw ConfigError("'max_period' out of range");
  cc.max_period = static_cast<int>(mp);
  cc.h_threshold = cfg.real("h_threshold");
  cc.guard = cfg.real("guard");
  if (cfg.values().count("h_steps")) {
    cc.lyapunov.n_total = cfg.integer("h_steps");
    cc.lyapunov.n_transient = std::min(cc.lyapunov.n_transient, cc.lyapunov.n_total / 2);
  } else {
    cc.lyapunov.n_total = cfg.integer("n_total");
    cc.lyapunov.n_transient = cfg.integer("n_transient");
  }
  cc.lyapunov.renorm_interval = cfg.integer("renorm_interval");
  cc.lyapunov.accumulation = accumulation(cfg);
  cc.lyapunov.guard = cc.guard;
  cc.validate();
  return cc;
}

json kind_counts(const SweepGrid& grid) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : grid.cells) {
    std::string k(kind_name(c.kind));
    if (c.kind == AttractorKind::Periodic) k += ":" + std::to_string(c.period);
    ++counts[k];
  }
  return counts;
}

// Subcommands.

void cmd_orbit(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const MapParams p = map_params(cfg);
  std::vector<double> taps;
  if (const auto& list = cfg.text("coeffs"); !list.empty()) {
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        taps.push_back(io::parse_real(item));
      } catch (const std::invalid_argument&) {
        throw ConfigError("'coeffs' holds a non-number: '" + item + "'");
      }
    }
  } else {
    taps = {cfg.real("c0"), cfg.real("c1")};
  }
  const FilterCoeffs c(taps);
  std::vector<double> s0(c.state_dim(), cfg.real("x2"));
  s0[0] = cfg.real("x1");
  const auto trace = iterate(StateVec(std::move(s0)), cfg.integer("steps"), p, c, cfg.real("guard"));

  if (ctx.out.formats().csv) ctx.out.csv("orbit.csv", [&](auto& os) { io::write_orbit_csv(os, trace); });
  if (ctx.out.formats().json) {
    json j;
    j["diverged"] = trace.diverged;
    j["diverged_at"] = trace.diverged_at ? json(*trace.diverged_at) : json(nullptr);
    auto states = json::array();
    for (const auto& s : trace.states) states.push_back(state_json(s));
    j["states"] = std::move(states);
    ctx.out.text("orbit.json", j.dump(1) + "\n");
  }
  if (ctx.out.formats().png) ctx.out.png("orbit.png", io::render_series(trace));

  ctx.result["diverged"] = trace.diverged;
  ctx.result["diverged_at"] = trace.diverged_at ? json(*trace.diverged_at) : json(nullptr);
  ctx.result["final_state"] = state_json(trace.states.back());
  ctx.log << "orbit: " << trace.states.size() << " states";
  if (trace.diverged) ctx.log << ", diverged at step " << *trace.diverged_at;
  ctx.log << ", last x1 = " << io::format_real(trace.states.back().x1()) << '\n';
}

void cmd_fixed_points(Context& ctx) {
  const MapParams p = map_params(ctx.cfg);
  const auto pts = fixed_points(p, two_taps(ctx.cfg));
  if (ctx.out.formats().csv)
    ctx.out.csv("fixed_points.csv", [&](auto& os) { io::write_fixed_points_csv(os, pts); });
  auto list = json::array();
  for (const auto& fp : pts) list.push_back(io::to_json(fp));
  if (ctx.out.formats().json) ctx.out.text("fixed_points.json", list.dump(1) + "\n");
  ctx.result["fixed_points"] = list;
  if (pts.empty()) ctx.log << "no real fixed point\n";
  for (const auto& j : list)
    ctx.log << j["branch"].get<std::string>() << ": p = " << io::format_real(j["p"].get<double>())
            << ", lambda_max = " << io::format_real(j["lambda_max"].get<double>()) << " ("
            << j["stability"].get<std::string>() << ")\n";
}

void cmd_stability_region(Context& ctx) {
  const MapParams p = map_params(ctx.cfg);
  const Axis a0 = axis_of(ctx.cfg, "c0"), a1 = axis_of(ctx.cfg, "c1");
  const auto grid = stability_region(p, a0, a1);
  const auto p1 = p1_unstable_scan(p, a0, a1);

  if (ctx.out.formats().csv)
    ctx.out.csv("stability.csv", [&](auto& os) { io::write_stability_csv(os, grid); });
  if (ctx.out.formats().png) {
    const std::size_t w = a0.count, h = a1.count;
    std::vector<unsigned char> on(w * h);
    for (std::size_t x = 0; x < w; ++x)
      for (std::size_t y = 0; y < h; ++y) on[y * w + x] = grid.at(x, h - 1 - y) ? 1 : 0;
    io::write_png_1bit(ctx.out.claim("stability.png"), w, h, on);
  }
  json r;
  r["stable_cells"] = grid.stable_count();
  r["total_cells"] = grid.cells.size();
  r["p1_all_unstable"] = p1.all_unstable;
  r["p1_cells_checked"] = p1.cells_checked;
  r["p1_degenerate_cells"] = p1.degenerate_cells;
  r["p1_min_lambda"] = real_or_null(p1.min_lambda);
  if (ctx.out.formats().json) ctx.out.text("stability.json", r.dump(1) + "\n");
  ctx.result = r;
  ctx.log << "P2 stable in " << grid.stable_count() << " of " << grid.cells.size()
          << " cells; P1 unstable everywhere: " << (p1.all_unstable ? "yes" : "no") << '\n';
}

void cmd_lyapunov(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const MapParams p = map_params(cfg);
  const FilterCoeffs c = two_taps(cfg);
  const LyapunovConfig lc = lyapunov_config(cfg);
  const auto est = lyapunov_ensemble(p, c, lc);

  if (ctx.out.formats().csv) {
    ctx.out.csv("lyapunov.csv",
                [&](auto& os) { io::write_lyapunov_csv(os, c[0], c[1], est); });
    ctx.out.csv("lyapunov_per_ic.csv", [&](auto& os) {
      os << "ic1,ic2,h,diverged\n";
      for (const auto& r : est.per_ic)
        os << io::format_real(r.ic.x1()) << ',' << io::format_real(r.ic.x2()) << ','
           << io::format_real(r.h) << ',' << (r.diverged ? 1 : 0) << '\n';
    });
  }
  if (ctx.out.formats().json) ctx.out.text("lyapunov.json", io::to_json(est).dump(1) + "\n");

  if (cfg.flag("spectrum")) {
    std::vector<SpectrumRun> spec;
    for (const auto& ic : ensemble_ics(lc)) spec.push_back(lyapunov_spectrum(ic, p, c, lc));
    const auto ics = ensemble_ics(lc);
    if (ctx.out.formats().csv)
      ctx.out.csv("spectrum.csv", [&](auto& os) {
        os << "ic1,ic2,h0,h1,diverged\n";
        for (std::size_t i = 0; i < spec.size(); ++i)
          os << io::format_real(ics[i].x1()) << ',' << io::format_real(ics[i].x2()) << ','
             << io::format_real(spec[i].h0) << ',' << io::format_real(spec[i].h1) << ','
             << (spec[i].diverged ? 1 : 0) << '\n';
      });
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& s : spec)
      if (!s.diverged) sum += s.h0 + s.h1, ++n;
    ctx.result["mean_h0_plus_h1"] = n ? json(sum / static_cast<double>(n)) : json(nullptr);
  }

  ctx.result["h_mean"] = real_or_null(est.h_mean);
  ctx.result["h_std"] = real_or_null(est.h_std);
  ctx.result["n_valid"] = est.n_valid;
  ctx.log << "h = " << io::format_real(est.h_mean) << " +- " << io::format_real(est.h_std) << " ("
          << est.n_valid << " of " << est.per_ic.size() << " initial conditions bounded)\n";
}

void cmd_bifurcation(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const MapParams p = map_params(cfg);
  const bool along_c1 = cfg.text("sweep_axis") == "c1";
  const Axis sweep = axis_of(cfg, along_c1 ? "c1" : "c0");
  const double fixed = along_c1 ? cfg.real("c0") : cfg.real("c1");

  BifurcationConfig bc;
  bc.classify = classify_config(cfg);
  const auto record = cfg.integer("record");
  if (record < 1) throw ConfigError("'record' must be at least 1");
  bc.record = static_cast<std::size_t>(record);
  bc.continuation = cfg.flag("continuation");
  bc.direction = cfg.text("direction") == "backward" ? SweepDirection::Backward : SweepDirection::Forward;
  bc.restart_box = ic_box(cfg);
  bc.seed = cfg.seed("seed");
  const auto diag = bifurcation_1d(p, along_c1 ? SweepAxis::C1 : SweepAxis::C0, fixed, sweep, bc);

  if (ctx.out.formats().csv) ctx.out.csv("diagram.csv", [&](auto& os) { io::write_diagram_csv(os, diag); });
  if (ctx.out.formats().json) {
    auto list = json::array();
    for (const auto& s : diag.samples)
      list.push_back({{"c", s.c},
                      {"kind", kind_name(s.kind)},
                      {"period", s.period},
                      {"h", s.h ? real_or_null(*s.h) : json(nullptr)},
                      {"ic", state_json(s.ic)},
                      {"restarted", s.restarted}});
    ctx.out.text("diagram.json", list.dump(1) + "\n");
  }
  if (ctx.out.formats().png) ctx.out.png("diagram.png", io::render_diagram(diag));

  std::map<std::string, std::size_t> counts;
  std::size_t restarts = 0;
  for (const auto& s : diag.samples) {
    std::string k(kind_name(s.kind));
    if (s.kind == AttractorKind::Periodic) k += ":" + std::to_string(s.period);
    ++counts[k];
    restarts += s.restarted ? 1 : 0;
  }
  ctx.result["kinds"] = counts;
  ctx.result["restarts"] = restarts;
  ctx.log << "bifurcation: " << diag.samples.size() << " points, " << restarts << " restarts\n";
}

SweepConfig sweep_config(const RunConfig& cfg, unsigned threads) {
  SweepConfig sc;
  sc.classify = classify_config(cfg);
  sc.seed = cfg.seed("seed");
  sc.threads = threads;
  if (cfg.values().count("n_ics")) {
    sc.lyapunov = lyapunov_config(cfg);
  } else {
    sc.lyapunov.ic_box = ic_box(cfg);
    sc.lyapunov.guard = cfg.real("guard");
  }
  return sc;
}

void cmd_sweep_lyapunov(Context& ctx) {
  const MapParams p = map_params(ctx.cfg);
  const Axis a0 = axis_of(ctx.cfg, "c0"), a1 = axis_of(ctx.cfg, "c1");
  const auto grid = lyapunov_map_2d(p, a0, a1, sweep_config(ctx.cfg, ctx.threads));

  if (ctx.out.formats().csv) ctx.out.csv("lyapunov_map.csv", [&](auto& os) { io::write_grid_csv(os, grid); });
  if (ctx.out.formats().json) ctx.out.text("lyapunov_map.json", kind_counts(grid).dump(1) + "\n");
  if (ctx.out.formats().png) {
    io::HeatScale scale;
    ctx.out.png("lyapunov_map.png", io::render_lyapunov_map(grid, scale));
    ctx.result["color_scale"] = {{"h_min", scale.h_min}, {"h_max", scale.h_max}};
  }
  ctx.result["kinds"] = kind_counts(grid);
  ctx.log << "sweep-lyapunov: " << grid.cells.size() << " cells\n";
}

void cmd_sweep_period(Context& ctx) {
  const MapParams p = map_params(ctx.cfg);
  const Axis a0 = axis_of(ctx.cfg, "c0"), a1 = axis_of(ctx.cfg, "c1");
  const auto grid = period_map_2d(p, a0, a1, sweep_config(ctx.cfg, ctx.threads));

  if (ctx.out.formats().csv) ctx.out.csv("period_map.csv", [&](auto& os) { io::write_grid_csv(os, grid); });
  if (ctx.out.formats().json) ctx.out.text("period_map.json", kind_counts(grid).dump(1) + "\n");
  if (ctx.out.formats().png) ctx.out.png("period_map.png", io::render_period_map(grid));
  ctx.result["kinds"] = kind_counts(grid);
  ctx.log << "sweep-period: " << grid.cells.size() << " cells\n";
}

void cmd_basins(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const MapParams p = map_params(cfg);
  IcGrid grid;
  grid.x1_axis = axis_of(cfg, "grid_x1");
  grid.x2_axis = axis_of(cfg, "grid_x2");
  CoexistenceConfig cc;
  cc.classify = classify_config(cfg);
  cc.cluster_tol = cfg.real("cluster_tol");
  cc.h_spread_floor = cfg.real("h_spread_floor");
  cc.threads = ctx.threads;
  const auto report = find_coexisting(p, two_taps(cfg), grid, cc);
  const json rj = io::to_json(report);

  if (ctx.out.formats().csv) ctx.out.csv("basins.csv", [&](auto& os) { io::write_basin_csv(os, report); });
  if (ctx.out.formats().json) ctx.out.text("attractors.json", rj.dump(1) + "\n");
  if (ctx.out.formats().png) ctx.out.png("basins.png", io::render_basins(report));

  ctx.result["attractors"] = json::array();
  for (const auto& a : rj["attractors"])
    ctx.result["attractors"].push_back({{"id", a["id"]},
                                        {"kind", a["kind"]},
                                        {"period", a["period"]},
                                        {"h_mean", a["h_mean"]},
                                        {"h_std", a["h_std"]},
                                        {"basin_fraction", a["basin_fraction"]}});
  ctx.result["divergent_fraction"] = report.divergent_fraction;

  ctx.log << report.attractors.size() << " attractor(s):\n";
  for (std::size_t id = 0; id < report.attractors.size(); ++id) {
    const auto& a = report.attractors[id];
    ctx.log << "  #" << id << ' ' << kind_name(a.representative.kind);
    if (a.representative.periodic()) ctx.log << " period " << a.representative.period;
    ctx.log << ", h = " << io::format_real(a.h_mean) << " +- " << io::format_real(a.h_std)
            << ", basin " << io::format_real(a.basin_fraction) << '\n';
  }
  ctx.log << "  divergent fraction " << io::format_real(report.divergent_fraction) << '\n';
}

using Command = void (*)(Context&);

Command command_fn(const std::string& name) {
  static const std::map<std::string, Command> table{
      {"orbit", &cmd_orbit},
      {"fixed-points", &cmd_fixed_points},
      {"stability-region", &cmd_stability_region},
      {"lyapunov", &cmd_lyapunov},
      {"bifurcation", &cmd_bifurcation},
      {"sweep-lyapunov", &cmd_sweep_lyapunov},
      {"sweep-period", &cmd_sweep_period},
      {"basins", &cmd_basins},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown command '" + name + "'");
  return it->second;
}

std::string_view command_help(std::string_view name) {
  if (name == "orbit") return "iterate one orbit";
  if (name == "fixed-points") return "fixed points and their stability";
  if (name == "stability-region") return "where the positive fixed point is stable in the (c0, c1) plane";
  if (name == "lyapunov") return "largest Lyapunov exponent over an ensemble of initial conditions";
  if (name == "bifurcation") return "bifurcation diagram along c1 (or c0)";
  if (name == "sweep-lyapunov") return "Lyapunov exponent map over the (c0, c1) plane";
  if (name == "sweep-period") return "period map over the (c0, c1) plane";
  if (name == "basins") return "coexisting attractors and their basins";
  return "";
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  std::optional<Outputs> outputs;
  try {
    const Command fn = command_fn(cfg.command());
    const auto threads = cfg.integer("threads");
    if (threads < 0) throw ConfigError("'threads' must be non-negative");
    outputs.emplace(fs::path(cfg.text("out_dir")), parse_formats(cfg.text("format")));

    Context ctx{cfg, *outputs, out};
    ctx.threads = threads == 0 ? default_thread_count() : static_cast<unsigned>(threads);
    fn(ctx);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    json meta;
    meta["command"] = cfg.command();
    meta["version"] = FHENON_VERSION;
    meta["seed"] = cfg.seed("seed");
    meta["config"] = cfg.to_json();
    meta["simd"] = kernels::isa_name(kernels::active_kernels().isa);
    meta["threads_used"] = ctx.threads;
    meta["wall_time_s"] = wall;
    meta["outputs"] = outputs->names();
    meta["result"] = std::move(ctx.result);
    outputs->text("metadata.json", meta.dump(2) + "\n");
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    if (outputs) outputs->discard();
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    if (outputs) outputs->discard();
    return kExitConfig;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    if (outputs) outputs->discard();
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    if (outputs) outputs->discard();
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (outputs) outputs->discard();
    return kExitFailure;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Filtered Henon map laboratory", "fhenon"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FHENON_VERSION);

  struct Sub {
    CLI::App* app = nullptr;
    std::string config;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Sub> subs;
  for (const auto name : command_names()) {
    auto& s = subs[std::string(name)];
    s.app = app.add_subcommand(std::string(name), std::string(command_help(name)));
    s.app->add_option("--config", s.config, "key = value file or metadata.json of an earlier run");
    for (const KeyDef* def : keys_for(name)) {
      std::string flag(def->name);
      std::replace(flag.begin(), flag.end(), '_', '-');
      auto* opt = s.app->add_option("--" + flag, s.values[std::string(def->name)], std::string(def->help));
      opt->default_str(default_value(name, *def));
      s.options[std::string(def->name)] = opt;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  for (auto& [name, s] : subs) {
    if (!s.app->parsed()) continue;
    try {
      KeyValues flags;
      for (const auto& [key, opt] : s.options)
        if (opt->count() > 0) flags.emplace_back(key, s.values[key]);
      const KeyValues file = s.config.empty() ? KeyValues{} : read_config_file(s.config, name);
      const RunConfig cfg(name, file, flags);
      return run_command(cfg, out, err);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const io::IoError& e) {
      err << "error: " << e.what() << '\n';
      return kExitIo;
    }
  }
  err << "error: no command given\n";
  return kExitConfig;
}

}  // namespace fhenon::cli
