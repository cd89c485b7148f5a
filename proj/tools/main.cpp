#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "galoissat/galoissat.h"

namespace {

using galoissat::cli::Config;
using galoissat::cli::ConfigError;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

/// Raised from subcommand bodies; carries the exit code.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(gs_status s) {
  switch (s) {
    case GS_OK: return kExitOk;
    case GS_ERR_INVALID_ARGUMENT:
    case GS_ERR_PARSE:
    case GS_ERR_IO: return kExitUsage;
    case GS_ERR_UNSAT_AT_PARSE: return kExitUnsat;
    default: return kExitInternal;
  }
}

void check(gs_status s) {
  if (s != GS_OK) throw Failure{exit_code_for(s), std::string(gs_status_name(s)) + ": " + gs_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using CnfPtr = std::unique_ptr<gs_cnf, Deleter<gs_cnf, gs_cnf_free>>;
using NormPtr = std::unique_ptr<gs_normalized, Deleter<gs_normalized, gs_normalized_free>>;
using TrainPtr = std::unique_ptr<gs_train_result, Deleter<gs_train_result, gs_train_result_free>>;
using JobsPtr = std::unique_ptr<gs_jobs, Deleter<gs_jobs, gs_jobs_free>>;
using ResultPtr = std::unique_ptr<gs_result, Deleter<gs_result, gs_result_free>>;
using ReportPtr = std::unique_ptr<gs_bench_report, Deleter<gs_bench_report, gs_bench_report_free>>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { gs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot open " + path};
  return read_all(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{kExitUsage, "cannot write " + path};
}

void print_warnings(const gs_cnf* cnf) {
  for (size_t i = 0; i < gs_cnf_warning_count(cnf); ++i)
    std::cerr << "c warning: " << gs_cnf_warning(cnf, i) << "\n";
}

CnfPtr load_cnf(const std::string& path, bool strict) {
  gs_cnf* raw = nullptr;
  if (path.empty() || path == "-") {
    std::string text = read_all(std::cin);
    check(gs_cnf_parse(text.data(), text.size(), strict, &raw));
  } else {
    check(gs_cnf_read_file(path.c_str(), strict, &raw));
  }
  CnfPtr cnf(raw);
  print_warnings(cnf.get());
  return cnf;
}

gs_train_config train_config(const Config& c) {
  gs_train_config t;
  gs_train_config_default(&t);
  t.batch_size = c.get_unsigned("batch");
  t.epochs = c.get_unsigned("epochs");
  t.learning_rate = c.get_double("lr");
  t.temperature = c.get_double("tau");
  t.clause_width = c.get_unsigned("k");
  t.seed = c.get_u64("seed");
  t.batch_select = c.get("batch-select") == "max_loss" ? GS_MAX_LOSS : GS_MIN_LOSS;
  t.threads = c.get_unsigned("threads");
  return t;
}

gs_run_config run_config(const Config& c) {
  gs_run_config r;
  gs_run_config_default(&r);
  r.train = train_config(c);
  r.pool_size = c.get_unsigned("pool-size");
  r.rho = c.get_double("rho");
  r.depth = c.get_unsigned("d");
  const std::string& m = c.get("mode");
  r.mode = m == "sat" ? GS_MODE_SAT : m == "unsat" ? GS_MODE_UNSAT : GS_MODE_AUTO;
  r.workers = c.get_unsigned("workers");
  r.timeout_secs = c.get_double("timeout-secs");
  r.backend = c.get("backend").c_str();
  return r;
}

void print_status(gs_outcome o) {
  switch (o) {
    case GS_SAT: std::cout << "s SATISFIABLE\n"; break;
    case GS_UNSAT: std::cout << "s UNSATISFIABLE\n"; break;
    default: std::cout << "s UNKNOWN\n"; break;
  }
}

void print_model(const gs_result* r) {
  std::vector<uint8_t> model(gs_result_model(r, nullptr, 0));
  gs_result_model(r, model.data(), model.size());
  std::string line = "v";
  for (size_t v = 0; v <= model.size(); ++v) {
    std::string lit = v == model.size() ? "0" : (model[v] ? "" : "-") + std::to_string(v + 1);
    if (line.size() + 1 + lit.size() > 78) {
      std::cout << line << "\n";
      line = "v";
    }
    line += " " + lit;
  }
  std::cout << line << "\n";
}

int report_result(const gs_result* r) {
  gs_outcome o = gs_result_outcome(r);
  print_status(o);
  if (o == GS_SAT) print_model(r);
  std::cout.flush();
  return o == GS_SAT ? kExitSat : o == GS_UNSAT ? kExitUnsat : kExitOk;
}

std::string require(const Config& c, const std::string& key) {
  const std::string& v = c.get(key);
  if (v.empty()) throw Failure{kExitUsage, "--" + key + " is required"};
  return v;
}

// Subcommands. Each receives the resolved config and its positional input.

int cmd_solve(const Config& c, const std::string& input) {
  CnfPtr cnf = load_cnf(input, c.get_bool("strict"));
  gs_result* raw = nullptr;
  check(gs_solve(cnf.get(), c.get_double("timeout-secs"), &raw));
  ResultPtr r(raw);
  return report_result(r.get());
}

int cmd_tseitin(const Config& c, const std::string& input) {
  CnfPtr cnf = load_cnf(input, c.get_bool("strict"));
  gs_normalized* raw = nullptr;
  gs_status s = gs_normalize(cnf.get(), c.get_unsigned("k"), &raw);
  if (s == GS_ERR_UNSAT_AT_PARSE) {
    std::cerr << "c input contains the empty clause\n";
    std::cout << "s UNSATISFIABLE\n";
    return kExitUnsat;
  }
  check(s);
  NormPtr norm(raw);
  OwnedString text;
  check(gs_normalized_write(norm.get(), &text.p));
  const std::string& out = c.get("out");
  if (out.empty()) std::cout << text.str();
  else write_file(out, text.str());
  return kExitOk;
}

int cmd_train(const Config& c, const std::string& input) {
  CnfPtr cnf = load_cnf(input, c.get_bool("strict"));
  gs_train_config tc = train_config(c);
  gs_normalized* nraw = nullptr;
  check(gs_normalize(cnf.get(), tc.clause_width, &nraw));
  NormPtr norm(nraw);
  gs_train_result* traw = nullptr;
  check(gs_train(norm.get(), &tc, &traw));
  TrainPtr trained(traw);
  OwnedString json;
  check(gs_train_result_to_json(trained.get(), &tc, &json.p));
  const std::string& out = c.get("out");
  if (out.empty()) std::cout << json.str();
  else write_file(out, json.str());
  return kExitOk;
}

TrainPtr load_artifact(const Config& c, gs_train_config* cfg_out) {
  std::string text = read_file(require(c, "artifact"));
  gs_train_result* raw = nullptr;
  check(gs_train_result_from_json(text.c_str(), &raw, cfg_out));
  return TrainPtr(raw);
}

std::string base_name(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

int cmd_pool(const Config& c, const std::string& input) {
  CnfPtr cnf = load_cnf(input, c.get_bool("strict"));
  gs_train_config art;
  TrainPtr trained = load_artifact(c, &art);
  gs_pool_config pc;
  gs_pool_config_default(&pc);
  pc.pool_size = c.get_unsigned("pool-size");
  pc.rho = c.get_double("rho");
  // Unless overridden, sample the pool exactly as the trained run would.
  using galoissat::cli::Source;
  pc.temperature = c.source("tau") == Source::Default ? art.temperature : c.get_double("tau");
  pc.seed = c.source("seed") == Source::Default ? art.seed : c.get_u64("seed");
  gs_jobs* raw = nullptr;
  check(gs_pool_build(cnf.get(), trained.get(), &pc, &raw));
  JobsPtr jobs(raw);
  std::string dir = require(c, "out-dir");
  check(gs_jobs_write_dir(jobs.get(), dir.c_str(), base_name(input).c_str()));
  std::cerr << "c wrote " << gs_jobs_count(jobs.get()) << " candidate formulas to " << dir << "\n";
  return kExitOk;
}

int cmd_cubes(const Config& c, const std::string& input) {
  CnfPtr cnf = load_cnf(input, c.get_bool("strict"));
  gs_train_config art;
  TrainPtr trained = load_artifact(c, &art);
  using galoissat::cli::Source;
  double tau = c.source("tau") == Source::Default ? art.temperature : c.get_double("tau");
  gs_jobs* raw = nullptr;
  check(gs_cubes_build(cnf.get(), trained.get(), c.get_unsigned("d"), tau, &raw));
  JobsPtr jobs(raw);
  std::string dir = require(c, "out-dir");
  check(gs_jobs_write_dir(jobs.get(), dir.c_str(), base_name(input).c_str()));
  std::cerr << "c wrote " << gs_jobs_count(jobs.get()) << " cube formulas to " << dir << "\n";
  return kExitOk;
}

int cmd_run(const Config& c, const std::string& input) {
  CnfPtr cnf = load_cnf(input, c.get_bool("strict"));
  gs_run_config rc = run_config(c);
  gs_result* raw = nullptr;
  check(gs_run(cnf.get(), &rc, &raw));
  ResultPtr r(raw);
  if (const std::string& log = c.get("log"); !log.empty()) {
    OwnedString json;
    check(gs_result_log_json(r.get(), base_name(input).c_str(), &json.p));
    write_file(log, json.str());
  }
  return report_result(r.get());
}

std::pair<std::string, std::string> report_paths(const std::string& out) {
  auto ends_with = [&](const char* ext) {
    std::string e(ext);
    return out.size() >= e.size() && out.compare(out.size() - e.size(), e.size(), e) == 0;
  };
  if (ends_with(".csv")) return {out, out.substr(0, out.size() - 4) + ".json"};
  if (ends_with(".json")) return {out.substr(0, out.size() - 5) + ".csv", out};
  return {out + ".csv", out + ".json"};
}

int cmd_bench(const Config& c) {
  gs_bench_config bc;
  gs_bench_config_default(&bc);
  bc.run = run_config(c);
  bc.time_source_work = c.get("time-source") == "work";
  bc.cpu_only_par2 = c.get_bool("cpu-only-par2");
  bc.pool_eval = c.get_bool("pool-eval");
  bc.instance_jobs = c.get_unsigned("instance-jobs");
  const std::string& labels = c.get("labels");
  if (!labels.empty()) bc.labels_path = labels.c_str();
  std::string csv_path;
  std::string json_path;
  if (const std::string& out = c.get("out"); !out.empty()) {
    std::tie(csv_path, json_path) = report_paths(out);
    bc.csv_out = csv_path.c_str();
    bc.json_out = json_path.c_str();
  }
  std::string dir = require(c, "dir");
  gs_bench_report* raw = nullptr;
  gs_status s = gs_bench(dir.c_str(), &bc, &raw);
  ReportPtr rep(raw);
  if (rep && csv_path.empty()) {
    OwnedString csv;
    check(gs_bench_report_csv(rep.get(), &csv.p));
    std::cout << csv.str();
  }
  if (rep)
    std::cerr << "c instances " << gs_bench_report_count(rep.get()) << " solved "
              << gs_bench_report_solved(rep.get()) << " avg_par2 "
              << gs_bench_report_avg_par2(rep.get()) << "\n";
  check(s);
  return kExitOk;
}

/// Accepts competition output (`s`/`v` lines) or a bare literal list.
int cmd_verify(const Config& c, const std::string& input, const std::string& solution) {
  CnfPtr cnf = load_cnf(input, c.get_bool("strict"));
  std::string text = read_file(solution);
  std::istringstream in(text);
  std::string line;
  std::string body;
  bool competition = false;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      competition = true;
      if (line.find("UNSATISFIABLE") != std::string::npos || line.find("UNKNOWN") != std::string::npos) {
        std::cout << "c solution claims " << line.substr(2) << "; no model to check\n";
        return kExitOk;
      }
    } else if (line.rfind("v", 0) == 0) {
      competition = true;
      body += line.substr(1) + "\n";
    } else if (!competition && line.rfind("c", 0) != 0) {
      body += line + "\n";
    }
  }
  const uint32_t n = gs_cnf_num_vars(cnf.get());
  std::vector<uint8_t> model(n, 0);
  std::istringstream lits(body);
  for (std::string tok; lits >> tok;) {
    long long lit = 0;
    try {
      size_t used = 0;
      lit = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "bad literal '" + tok + "' in " + solution};
    }
    if (lit == 0) continue;
    unsigned long long v = static_cast<unsigned long long>(lit < 0 ? -lit : lit);
    if (v > n) throw Failure{kExitUsage, "literal " + tok + " exceeds the variable count"};
    model[v - 1] = lit > 0;
  }
  int ok = 0;
  check(gs_cnf_verify_model(cnf.get(), model.data(), model.size(), &ok));
  if (!ok) {
    std::cout << "c model FALSIFIES the formula\n";
    return kExitUsage;
  }
  std::cout << "c model verified\n";
  return kExitOk;
}

struct Sub {
  CLI::App* app;
  std::vector<std::string> keys;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::string profile;
  std::string config;
  std::string input;
  std::string solution;
};

void add_fields(Sub& s, const std::vector<std::string>& keys) {
  for (const auto& key : keys) {
    const auto* f = galoissat::cli::find_field(key);
    std::string desc = f->help + " [default: " + galoissat::cli::default_label(*f) + "]";
    s.keys.push_back(key);
    if (f->boolean) {
      s.app->add_flag("--" + key, s.flags[key], desc);
    } else {
      auto* opt = s.app->add_option("--" + key, s.values[key], desc);
      static const std::map<std::string, std::string> kTypes = {
          {"batch", "UINT"}, {"epochs", "UINT"}, {"k", "UINT"}, {"threads", "UINT"},
          {"pool-size", "UINT"}, {"d", "UINT"}, {"workers", "UINT"}, {"instance-jobs", "UINT"},
          {"seed", "UINT64"}, {"lr", "FLOAT"}, {"tau", "FLOAT"}, {"rho", "FLOAT"},
          {"timeout-secs", "FLOAT"}, {"backend", "SPEC"}};
      auto t = kTypes.find(key);
      opt->type_name(t != kTypes.end() ? t->second : "PATH");
      if (!f->choices.empty()) {
        std::string list;
        for (const auto& ch : f->choices) list += (list.empty() ? "" : "|") + ch;
        opt->type_name("{" + list + "}");
      }
    }
  }
  s.app->add_option("--profile", s.profile, "Default set: desk or paper [default: desk]")
      ->type_name("{desk|paper}");
  s.app->add_option("--config", s.config, "key=value configuration file [default: none]")
      ->type_name("PATH");
}

Config resolve_for(const Sub& s) {
  galoissat::cli::Inputs in;
  for (const auto& key : s.keys) {
    const std::string flag = "--" + key;
    if (s.app->get_option(flag)->count() == 0) continue;
    auto b = s.flags.find(key);
    in.flags[key] = b != s.flags.end() ? (b->second ? "true" : "false") : s.values.at(key);
  }
  if (s.app->get_option("--profile")->count()) in.profile_flag = s.profile;
  if (s.app->get_option("--config")->count()) in.config_path_flag = s.config;
  in.env = galoissat::cli::process_env();
  return galoissat::cli::resolve(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"galoissat: gradient-guided parallel SAT solving"};
  app.set_version_flag("--version", gs_version());
  app.require_subcommand(1);
  app.get_formatter()->column_width(34);

  const std::vector<std::string> train_keys = {"batch", "epochs", "lr", "tau", "k",
                                                "seed", "batch-select", "threads"};
  const std::vector<std::string> solve_keys = {"pool-size", "rho", "d", "mode",
                                               "backend", "workers", "timeout-secs"};

  std::map<std::string, Sub> subs;
  auto make = [&](const std::string& name, const std::string& desc) -> Sub& {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, desc);
    return s;
  };

  Sub& solve = make("solve", "Solve with the built-in CDCL solver (competition output)");
  solve.app->add_option("input", solve.input, "DIMACS file")->required();
  add_fields(solve, {"timeout-secs", "strict"});

  Sub& tseitin = make("tseitin", "Rewrite a formula to fixed clause width");
  tseitin.app->add_option("input", tseitin.input, "DIMACS file (default: stdin)");
  add_fields(tseitin, {"k", "out", "strict"});

  Sub& train = make("train", "Train logits and write the training artifact");
  train.app->add_option("input", train.input, "DIMACS file")->required();
  {
    auto keys = train_keys;
    keys.insert(keys.end(), {"out", "strict"});
    add_fields(train, keys);
  }

  Sub& pool = make("pool", "Write candidate-augmented formulas from a training artifact");
  pool.app->add_option("input", pool.input, "DIMACS file")->required();
  add_fields(pool, {"artifact", "out-dir", "pool-size", "rho", "tau", "seed", "workers", "strict"});

  Sub& cubes = make("cubes", "Write the 2^d cube formulas from a training artifact");
  cubes.app->add_option("input", cubes.input, "DIMACS file")->required();
  add_fields(cubes, {"artifact", "out-dir", "d", "tau", "strict"});

  Sub& run = make("run", "Full flow: normalize, train, build jobs, solve in parallel");
  run.app->add_option("input", run.input, "DIMACS file")->required();
  {
    auto keys = train_keys;
    keys.insert(keys.end(), solve_keys.begin(), solve_keys.end());
    keys.insert(keys.end(), {"log", "strict"});
    add_fields(run, keys);
  }

  Sub& bench = make("bench", "Run every instance of a directory and report PAR-2");
  {
    auto keys = std::vector<std::string>{"dir", "labels", "out", "time-source", "cpu-only-par2",
                                         "pool-eval", "instance-jobs"};
    keys.insert(keys.end(), train_keys.begin(), train_keys.end());
    keys.insert(keys.end(), solve_keys.begin(), solve_keys.end());
    add_fields(bench, keys);
  }

  Sub& verify = make("verify", "Check a model against a formula");
  verify.app->add_option("input", verify.input, "DIMACS file")->required();
  verify.app->add_option("solution", verify.solution, "solver output or literal list")->required();
  add_fields(verify, {"strict"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  for (auto& [name, s] : subs) {
    if (!s.app->parsed()) continue;
    try {
      Config c = resolve_for(s);
      if (name == "solve") return cmd_solve(c, s.input);
      if (name == "tseitin") return cmd_tseitin(c, s.input);
      if (name == "train") return cmd_train(c, s.input);
      if (name == "pool") return cmd_pool(c, s.input);
      if (name == "cubes") return cmd_cubes(c, s.input);
      if (name == "run") return cmd_run(c, s.input);
      if (name == "bench") return cmd_bench(c);
      if (name == "verify") return cmd_verify(c, s.input, s.solution);
    } catch (const ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const Failure& f) {
      std::cerr << "error: " << f.message << "\n";
      if (f.code == kExitUnsat) std::cout << "s UNSATISFIABLE\n";
      return f.code;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitInternal;
    }
  }
  return kExitUsage;
}
