#pragma once

// Command-line front end. Every subcommand reads a flat set of keys whose
// values come from, in increasing priority: built-in defaults, per-command
// defaults, a config file (--config) and command-line flags.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fhenon::cli {

/// Invalid or unknown configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

enum class KeyType { Real, Int, Seed, Bool, Text, Choice };

struct KeyDef {
  std::string_view name;  ///< canonical form, words joined by '_'
  KeyType type;
  std::string_view fallback;  ///< default unless the command overrides it
  std::string_view help;
  unsigned commands;            ///< bit mask over command_names()
  std::string_view choices{};   ///< '|'-separated, for KeyType::Choice
};

/// Subcommand names, in bit order of KeyDef::commands.
const std::vector<std::string_view>& command_names();

/// Keys accepted by `command`, in registry order. Throws ConfigError for an
/// unknown command.
std::vector<const KeyDef*> keys_for(std::string_view command);

/// Default value of `key` for `command`.
std::string default_value(std::string_view command, const KeyDef& key);

/// Lower-case and '-' -> '_'.
std::string canonical_key(std::string_view key);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses a config file: either `key = value` lines (# starts a comment) or
/// a JSON object, such as a metadata file, whose "config" member (or the
/// object itself) holds the keys. Throws ConfigError / io::IoError.
KeyValues read_config_file(const std::filesystem::path& path, std::string_view command);

/// Fully resolved settings of one run.
class RunConfig {
 public:
  /// Applies the precedence rules and type-checks every value.
  RunConfig(std::string_view command, const KeyValues& file_values, const KeyValues& flag_values);

  const std::string& command() const noexcept { return command_; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  double real(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::uint64_t seed(std::string_view key) const;
  bool flag(std::string_view key) const;
  const std::string& text(std::string_view key) const;

  /// Typed JSON echo of every key.
  nlohmann::json to_json() const;

 private:
  const std::string& raw(std::string_view key) const;

  std::string command_;
  std::map<std::string, std::string> values_;
  std::map<std::string, const KeyDef*> defs_;
};

/// Runs the subcommand described by `cfg`, writing its files and metadata.
/// Returns an exit code; diagnostics go to `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Entry point: argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fhenon::cli
