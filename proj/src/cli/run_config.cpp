#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fhenon/cli.hpp"
#include "fhenon/io.hpp"

namespace fhenon::cli {

namespace {

enum : unsigned {
  kOrbit = 1u << 0,
  kFixed = 1u << 1,
  kStability = 1u << 2,
  kLyapunov = 1u << 3,
  kBifurcation = 1u << 4,
  kSweepLyapunov = 1u << 5,
  kSweepPeriod = 1u << 6,
  kBasins = 1u << 7,
  kAll = 0xffu,
  kGrid2d = kStability | kSweepLyapunov | kSweepPeriod,
  kClassify = kBifurcation | kSweepLyapunov | kSweepPeriod | kBasins,
  kTangent = kLyapunov | kClassify,
  kIcBox = kLyapunov | kBifurcation | kSweepLyapunov | kSweepPeriod,
};

constexpr std::array kKeys{
    KeyDef{"alpha", KeyType::Real, "1.4", "map constant alpha", kAll},
    KeyDef{"beta", KeyType::Real, "0.3", "map constant beta", kAll},
    KeyDef{"c0", KeyType::Real, "0.5", "filter coefficient c0", kAll},
    KeyDef{"c1", KeyType::Real, "0.5", "filter coefficient c1", kAll},
    KeyDef{"seed", KeyType::Seed, "1", "root seed of every random draw", kAll},
    KeyDef{"threads", KeyType::Int, "0", "worker threads (0 = all processors)", kAll},
    KeyDef{"out_dir", KeyType::Text, "out", "output directory", kAll},
    KeyDef{"format", KeyType::Text, "csv,png", "comma-separated subset of csv,json,png", kAll},
    KeyDef{"guard", KeyType::Real, "1e8", "an orbit diverges once |x1| exceeds this", kAll},

    KeyDef{"coeffs", KeyType::Text, "", "comma-separated taps c0,c1,...; overrides c0 and c1", kOrbit},
    KeyDef{"steps", KeyType::Int, "200", "iterations", kOrbit},
    KeyDef{"x1", KeyType::Real, "0.1", "initial x1", kOrbit},
    KeyDef{"x2", KeyType::Real, "0.1", "initial x2 (and older delay-line entries)", kOrbit},

    KeyDef{"c0_min", KeyType::Real, "-1.5", "lower end of the c0 axis", kGrid2d | kBifurcation},
    KeyDef{"c0_max", KeyType::Real, "1.5", "upper end of the c0 axis", kGrid2d | kBifurcation},
    KeyDef{"c0_count", KeyType::Int, "300", "samples along c0", kGrid2d | kBifurcation},
    KeyDef{"c1_min", KeyType::Real, "-1.5", "lower end of the c1 axis", kGrid2d | kBifurcation},
    KeyDef{"c1_max", KeyType::Real, "1.5", "upper end of the c1 axis", kGrid2d | kBifurcation},
    KeyDef{"c1_count", KeyType::Int, "300", "samples along c1", kGrid2d | kBifurcation},

    KeyDef{"n_total", KeyType::Int, "3000", "iterations per exponent estimate", kLyapunov | kSweepLyapunov},
    KeyDef{"n_transient", KeyType::Int, "500", "transient (used by after-transient accumulation)",
           kLyapunov | kSweepLyapunov},
    KeyDef{"n_ics", KeyType::Int, "25", "initial conditions per estimate", kLyapunov | kSweepLyapunov},
    KeyDef{"ic_x1_min", KeyType::Real, "0", "initial-condition box", kIcBox},
    KeyDef{"ic_x1_max", KeyType::Real, "1", "initial-condition box", kIcBox},
    KeyDef{"ic_x2_min", KeyType::Real, "0", "initial-condition box", kIcBox},
    KeyDef{"ic_x2_max", KeyType::Real, "1", "initial-condition box", kIcBox},
    KeyDef{"renorm_interval", KeyType::Int, "1", "steps between tangent renormalizations", kTangent},
    KeyDef{"accumulation", KeyType::Choice, "whole-run", "steps averaged into h", kTangent,
           "whole-run|after-transient"},
    KeyDef{"spectrum", KeyType::Bool, "false", "also compute both exponents per initial condition",
           kLyapunov},

    KeyDef{"transient", KeyType::Int, "1000", "iterations discarded before classifying", kClassify},
    KeyDef{"tail", KeyType::Int, "512", "iterations inspected for a period", kClassify},
    KeyDef{"tol", KeyType::Real, "1e-6", "period detection tolerance (infinity norm)", kClassify},
    KeyDef{"max_period", KeyType::Int, "64", "largest period detected", kClassify},
    KeyDef{"h_threshold", KeyType::Real, "1e-3", "h above this is chaos", kClassify},
    KeyDef{"h_steps", KeyType::Int, "3000", "iterations for the exponent of a classified orbit",
           kBifurcation | kSweepPeriod | kBasins},

    KeyDef{"sweep_axis", KeyType::Choice, "c1", "coefficient swept", kBifurcation, "c0|c1"},
    KeyDef{"direction", KeyType::Choice, "forward", "continuation direction", kBifurcation,
           "forward|backward"},
    KeyDef{"continuation", KeyType::Bool, "true", "follow the attractor from point to point",
           kBifurcation},
    KeyDef{"record", KeyType::Int, "256", "x1 values kept per non-periodic point", kBifurcation},

    KeyDef{"grid_x1_min", KeyType::Real, "0", "initial-condition lattice", kBasins},
    KeyDef{"grid_x1_max", KeyType::Real, "1", "initial-condition lattice", kBasins},
    KeyDef{"grid_x1_count", KeyType::Int, "100", "initial-condition lattice", kBasins},
    KeyDef{"grid_x2_min", KeyType::Real, "0", "initial-condition lattice", kBasins},
    KeyDef{"grid_x2_max", KeyType::Real, "1", "initial-condition lattice", kBasins},
    KeyDef{"grid_x2_count", KeyType::Int, "100", "initial-condition lattice", kBasins},
    KeyDef{"cluster_tol", KeyType::Real, "1e-4", "distance below which two cycles are the same",
           kBasins},
    KeyDef{"h_spread_floor", KeyType::Real, "1e-3", "minimum h spread within one attractor",
           kBasins},
};

struct CommandDefault {
  unsigned command;
  std::string_view key;
  std::string_view value;
};

constexpr std::array kCommandDefaults{
    CommandDefault{kLyapunov, "c0", "1"},
    CommandDefault{kLyapunov, "c1", "0"},
    CommandDefault{kStability, "c0_count", "600"},
    CommandDefault{kStability, "c1_count", "600"},
    CommandDefault{kSweepLyapunov, "n_ics", "5"},
    CommandDefault{kBifurcation, "c1_min", "0.68"},
    CommandDefault{kBifurcation, "c1_max", "0.72"},
    CommandDefault{kBifurcation, "c1_count", "400"},
    CommandDefault{kBifurcation, "c0_count", "400"},
    CommandDefault{kSweepPeriod, "c0_min", "0.74"},
    CommandDefault{kSweepPeriod, "c0_max", "1.14"},
    CommandDefault{kSweepPeriod, "c0_count", "400"},
    CommandDefault{kSweepPeriod, "c1_min", "0.68"},
    CommandDefault{kSweepPeriod, "c1_max", "0.83"},
    CommandDefault{kSweepPeriod, "c1_count", "200"},
    CommandDefault{kBasins, "c1", "0.707"},
};

unsigned command_bit(std::string_view command) {
  const auto& names = command_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == command) return 1u << i;
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<bool> parse_bool(std::string_view v) {
  std::string s(v);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  return std::nullopt;
}

template <typename T>
std::optional<T> parse_integer(std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) return std::nullopt;
  return out;
}

std::string describe(const KeyDef& def) {
  return "'" + std::string(def.name) + "'";
}

/// Checks `value` against the key's type; returns the normalized text.
std::string check_value(const KeyDef& def, const std::string& value) {
  switch (def.type) {
    case KeyType::Real:
      try {
        return io::format_real(io::parse_real(value));
      } catch (const std::invalid_argument&) {
        throw ConfigError(describe(def) + " expects a real number, got '" + value + "'");
      }
    case KeyType::Int:
      if (!parse_integer<std::int64_t>(value))
        throw ConfigError(describe(def) + " expects an integer, got '" + value + "'");
      return value;
    case KeyType::Seed:
      if (!parse_integer<std::uint64_t>(value))
        throw ConfigError(describe(def) + " expects an unsigned integer, got '" + value + "'");
      return value;
    case KeyType::Bool: {
      const auto b = parse_bool(value);
      if (!b) throw ConfigError(describe(def) + " expects true or false, got '" + value + "'");
      return *b ? "true" : "false";
    }
    case KeyType::Choice: {
      std::string_view rest = def.choices;
      while (!rest.empty()) {
        const auto bar = rest.find('|');
        if (rest.substr(0, bar) == value) return value;
        rest = bar == std::string_view::npos ? std::string_view{} : rest.substr(bar + 1);
      }
      throw ConfigError(describe(def) + " must be one of " + std::string(def.choices) + ", got '" +
                        value + "'");
    }
    case KeyType::Text: return value;
  }
  return value;
}

std::string json_scalar_text(const std::string& key, const nlohmann::json& v) {
  switch (v.type()) {
    case nlohmann::json::value_t::string: return v.get<std::string>();
    case nlohmann::json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case nlohmann::json::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return io::format_real(v.get<double>());
    default: throw ConfigError("config key '" + key + "' must hold a scalar");
  }
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{
      "orbit",          "fixed-points", "stability-region", "lyapunov",
      "bifurcation",    "sweep-lyapunov", "sweep-period",   "basins"};
  return names;
}

std::vector<const KeyDef*> keys_for(std::string_view command) {
  const unsigned bit = command_bit(command);
  std::vector<const KeyDef*> out;
  for (const auto& k : kKeys)
    if (k.commands & bit) out.push_back(&k);
  return out;
}

std::string default_value(std::string_view command, const KeyDef& key) {
  const unsigned bit = command_bit(command);
  for (const auto& d : kCommandDefaults)
    if (d.command == bit && d.key == key.name) return std::string(d.value);
  return std::string(key.fallback);
}

std::string canonical_key(std::string_view key) {
  std::string out(key);
  for (auto& ch : out) {
    if (ch == '-') ch = '_';
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

KeyValues read_config_file(const std::filesystem::path& path, std::string_view command) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io::IoError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();

  KeyValues out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    if (j.contains("command") && j["command"].is_string() &&
        j["command"].get<std::string>() != command)
      throw ConfigError(path.string() + " was written by '" + j["command"].get<std::string>() +
                        "', not '" + std::string(command) + "'");
    const nlohmann::json& obj = j.contains("config") ? j["config"] : j;
    if (!obj.is_object()) throw ConfigError(path.string() + ": expected a JSON object of keys");
    for (const auto& [k, v] : obj.items()) out.emplace_back(canonical_key(k), json_scalar_text(k, v));
    return out;
  }

  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = canonical_key(trim(std::string_view(t).substr(0, eq)));
    if (key.empty())
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

RunConfig::RunConfig(std::string_view command, const KeyValues& file_values,
                     const KeyValues& flag_values)
    : command_(command) {
  for (const KeyDef* def : keys_for(command)) {
    defs_.emplace(std::string(def->name), def);
    values_.emplace(std::string(def->name), default_value(command, *def));
  }
  auto apply = [&](const KeyValues& kv, std::string_view origin) {
    std::set<std::string> seen;
    for (const auto& [k, v] : kv) {
      const std::string key = canonical_key(k);
      const auto it = defs_.find(key);
      if (it == defs_.end())
        throw ConfigError("unknown key '" + k + "' for " + command_ + " (" + std::string(origin) +
                          ")");
      if (!seen.insert(key).second)
        throw ConfigError("key '" + key + "' given twice (" + std::string(origin) + ")");
      values_[key] = check_value(*it->second, v);
    }
  };
  apply(file_values, "config file");
  apply(flag_values, "command line");
  for (auto& [k, v] : values_) v = check_value(*defs_.at(k), v);
}

const std::string& RunConfig::raw(std::string_view key) const {
  const auto it = values_.find(std::string(key));
  if (it == values_.end())
    throw ConfigError("key '" + std::string(key) + "' does not apply to " + command_);
  return it->second;
}

double RunConfig::real(std::string_view key) const { return io::parse_real(raw(key)); }

std::int64_t RunConfig::integer(std::string_view key) const {
  return *parse_integer<std::int64_t>(raw(key));
}

std::uint64_t RunConfig::seed(std::string_view key) const {
  return *parse_integer<std::uint64_t>(raw(key));
}

bool RunConfig::flag(std::string_view key) const { return *parse_bool(raw(key)); }

const std::string& RunConfig::text(std::string_view key) const { return raw(key); }

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : values_) {
    switch (defs_.at(k)->type) {
      case KeyType::Real: {
        const double x = real(k);
        // JSON has no infinities; keep those as text.
        j[k] = std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(v);
        break;
      }
      case KeyType::Int: j[k] = integer(k); break;
      case KeyType::Seed: j[k] = seed(k); break;
      case KeyType::Bool: j[k] = flag(k); break;
      default: j[k] = v; break;
    }
  }
  return j;
}

}  // namespace fhenon::cli
