#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace galoissat::cli {

const std::vector<FieldSpec>& fields() {
  static const std::vector<FieldSpec> table = {
      {"batch", "64", "3000", "Batch size (independent logit sets trained in parallel)"},
      {"epochs", "10", "10", "Training epochs"},
      {"lr", "0.5", "0.5", "Adam learning rate"},
      {"tau", "1.0", "1.0", "Gumbel-softmax temperature"},
      {"k", "3", "3", "Clause width after normalization"},
      {"seed", "0", "0", "Random seed for training and sampling"},
      {"batch-select", "min_loss", "min_loss", "Which batch row seeds the candidates", false,
       {"min_loss", "max_loss"}},
      {"threads", "1", "1", "Training threads over batch elements"},
      {"pool-size", "workers", "100", "Number of augmented candidate formulas"},
      {"rho", "0.0005", "0.0005", "Fraction of variables fixed per candidate"},
      {"d", "3", "7", "Number of branching variables for cubes"},
      {"mode", "auto", "auto", "Job sets to run", false, {"sat", "unsat", "auto"}},
      {"backend", "internal", "internal", "internal or external:<path> [args]"},
      {"workers", "auto", "auto", "Concurrent solver jobs (auto: hardware threads)"},
      {"timeout-secs", "60", "5000", "Wall-clock limit per instance, training included"},
      {"strict", "false", "false", "Reject header/body clause-count mismatches", true},
      {"out", "", "", "Output file (bench: report path, .csv and .json are both written)"},
      {"out-dir", "", "", "Directory for generated formulas and manifest"},
      {"artifact", "", "", "Training artifact produced by `train`"},
      {"log", "", "", "Write the per-job JSON log to this path"},
      {"dir", "", "", "Directory of .cnf/.dimacs instances"},
      {"labels", "", "", "Expected outcomes: `<file> <sat|unsat>` per line"},
      {"time-source", "wall", "wall", "Report wall time or deterministic work units", false,
       {"wall", "work"}},
      {"cpu-only-par2", "false", "false", "Score PAR-2 on solver time only", true},
      {"pool-eval", "false", "false", "Run every candidate to completion for pool statistics",
       true},
      {"instance-jobs", "1", "1", "Instances solved concurrently (wall times become incomparable)"},
  };
  return table;
}

const FieldSpec* find_field(const std::string& key) {
  for (const auto& f : fields())
    if (f.key == key) return &f;
  return nullptr;
}

std::string env_name(const std::string& key) {
  std::string out = "GALOISSAT_";
  for (char c : key) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string default_label(const FieldSpec& f) {
  std::string d = f.desk_default.empty() ? "none" : f.desk_default;
  if (f.paper_default != f.desk_default) d += " (paper: " + f.paper_default + ")";
  return d;
}

const char* source_name(Source s) {
  switch (s) {
    case Source::Default: return "default";
    case Source::ConfigFile: return "config file";
    case Source::Env: return "environment";
    case Source::Flag: return "flag";
  }
  return "default";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_bool(const std::string& v) {
  std::string l;
  for (char c : v) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "1" || l == "true" || l == "yes" || l == "on") return "true";
  if (l == "0" || l == "false" || l == "no" || l == "off") return "false";
  return v;
}

void check_value(const FieldSpec& f, const std::string& v, Source src) {
  auto bad = [&](const std::string& why) {
    return ConfigError("invalid value '" + v + "' for " + f.key + " (from " + source_name(src) +
                       "): " + why);
  };
  if (f.boolean && v != "true" && v != "false") throw bad("expected true or false");
  if (!f.choices.empty() &&
      std::find(f.choices.begin(), f.choices.end(), v) == f.choices.end()) {
    std::string list;
    for (const auto& c : f.choices) list += (list.empty() ? "" : ", ") + c;
    throw bad("expected one of " + list);
  }
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(n) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    if (key != "profile" && !find_field(key))
      throw ConfigError(origin + ":" + std::to_string(n) + ": unknown key '" + key + "'");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
}

Config resolve(const Inputs& in) {
  EnvLookup env = in.env ? in.env : [](const std::string&) -> std::optional<std::string> {
    return std::nullopt;
  };

  std::map<std::string, std::string> file;
  std::optional<std::string> path = in.config_path_flag;
  if (!path) path = env("GALOISSAT_CONFIG");
  if (path && !path->empty()) {
    std::ifstream f(*path);
    if (!f) throw ConfigError("cannot read config file " + *path);
    std::stringstream ss;
    ss << f.rdbuf();
    file = parse_config_text(ss.str(), *path);
  }

  Config cfg;
  if (in.profile_flag) cfg.profile_ = *in.profile_flag;
  else if (auto e = env("GALOISSAT_PROFILE")) cfg.profile_ = *e;
  else if (auto it = file.find("profile"); it != file.end()) cfg.profile_ = it->second;
  else cfg.profile_ = "desk";
  if (cfg.profile_ != "desk" && cfg.profile_ != "paper")
    throw ConfigError("unknown profile '" + cfg.profile_ + "' (expected desk or paper)");
  const bool paper = cfg.profile_ == "paper";

  for (const auto& f : fields()) {
    Config::Entry e{paper ? f.paper_default : f.desk_default, Source::Default};
    if (auto it = in.flags.find(f.key); it != in.flags.end()) e = {it->second, Source::Flag};
    else if (auto v = env(env_name(f.key))) e = {*v, Source::Env};
    else if (auto it2 = file.find(f.key); it2 != file.end()) e = {it2->second, Source::ConfigFile};
    if (f.boolean) e.value = normalize_bool(e.value);
    check_value(f, e.value, e.source);
    cfg.values_[f.key] = std::move(e);
  }
  for (const auto& [k, v] : in.flags)
    if (!find_field(k)) throw ConfigError("unknown option --" + k);

  auto& workers = cfg.values_["workers"];
  if (workers.value == "auto") {
    unsigned hw = in.hardware_threads ? in.hardware_threads : std::thread::hardware_concurrency();
    workers.value = std::to_string(std::max(1u, hw));
  }
  auto& pool = cfg.values_["pool-size"];
  if (pool.value == "workers") pool.value = workers.value;

  // Surface type errors at resolution time rather than at first use.
  for (const char* key : {"batch", "epochs", "k", "threads", "pool-size", "d", "workers",
                          "instance-jobs"})
    cfg.get_unsigned(key);
  for (const char* key : {"lr", "tau", "rho", "timeout-secs"}) cfg.get_double(key);
  cfg.get_u64("seed");
  return cfg;
}

const std::string& Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("no such field: " + key);
  return it->second.value;
}

Source Config::source(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("no such field: " + key);
  return it->second.source;
}

double Config::get_double(const std::string& key) const {
  const std::string& v = get(key);
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size())
    throw ConfigError("invalid value '" + v + "' for " + key + " (from " +
                      source_name(source(key)) + "): expected a number");
  return d;
}

std::uint64_t Config::get_u64(const std::string& key) const {
  const std::string& v = get(key);
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("invalid value '" + v + "' for " + key + " (from " +
                      source_name(source(key)) + "): expected a non-negative integer");
  return out;
}

unsigned Config::get_unsigned(const std::string& key) const {
  std::uint64_t v = get_u64(key);
  if (v > 0xffffffffu) throw ConfigError("value for " + key + " is out of range");
  return static_cast<unsigned>(v);
}

bool Config::get_bool(const std::string& key) const { return get(key) == "true"; }

}  // namespace galoissat::cli
