#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace galoissat::cli {

struct FieldSpec {
  std::string key;  // flag is --key, env var is GALOISSAT_KEY
  std::string desk_default;
  std::string paper_default;
  std::string help;
  bool boolean = false;
  std::vector<std::string> choices;  // empty: free-form
};

/// Every configurable field, in help order.
const std::vector<FieldSpec>& fields();
const FieldSpec* find_field(const std::string& key);

/// GALOISSAT_ + upper-cased key with '-' mapped to '_'.
std::string env_name(const std::string& key);

/// Default value as shown in --help, e.g. "64 (paper: 3000)".
std::string default_label(const FieldSpec& f);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Source { Default, ConfigFile, Env, Flag };
const char* source_name(Source s);

/// key=value lines; blank lines and '#' comments are skipped. Keys must be
/// known fields or "profile".
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
EnvLookup process_env();

struct Inputs {
  std::map<std::string, std::string> flags;
  std::optional<std::string> profile_flag;
  std::optional<std::string> config_path_flag;
  EnvLookup env;
  /// Used for "auto" worker counts; 0 means query the machine.
  unsigned hardware_threads = 0;
};

class Config {
 public:
  const std::string& get(const std::string& key) const;
  Source source(const std::string& key) const;
  const std::string& profile() const { return profile_; }

  double get_double(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  unsigned get_unsigned(const std::string& key) const;
  bool get_bool(const std::string& key) const;

 private:
  friend Config resolve(const Inputs& in);
  struct Entry {
    std::string value;
    Source source;
  };
  std::map<std::string, Entry> values_;
  std::string profile_;
};

/// Resolves every field with precedence flag > env > config file > profile
/// default. The profile itself resolves as --profile > GALOISSAT_PROFILE >
/// config file "profile" > desk, and the config file path as --config >
/// GALOISSAT_CONFIG. Throws ConfigError on unknown keys or invalid values.
Config resolve(const Inputs& in);

}  // namespace galoissat::cli
