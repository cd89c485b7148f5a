#include "galoissat/galoissat.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "artifacts.hpp"
#include "bench.hpp"
#include "cdcl.hpp"
#include "normalizer.hpp"
#include "pipeline.hpp"

using namespace galoissat;

struct gs_cnf {
  Cnf cnf;
  std::vector<std::string> warnings;
};

struct gs_normalized {
  NormalizedCnf norm;
  gs_cnf view;
};

struct gs_train_result {
  TrainResult result;
};

struct gs_jobs {
  bool cubes = false;
  std::vector<gs_cnf> jobs;
  std::vector<std::vector<Literal>> units;
  std::vector<std::vector<double>> confidence;  // pool only
  std::vector<Var> branch_vars;                 // cubes only
  std::size_t selection_size = 0;
};

struct gs_result {
  PipelineResult result;
};

struct gs_bench_report {
  BenchReport report;
};

namespace {

thread_local std::string g_last_error;

gs_status fail(gs_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Maps the core's exception types onto status codes.
template <class Fn>
gs_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const UnsatAtParse& e) {
    return fail(GS_ERR_UNSAT_AT_PARSE, e.what());
  } catch (const DimacsError& e) {
    return fail(GS_ERR_PARSE, e.what());
  } catch (const ModelVerificationError& e) {
    return fail(GS_ERR_MODEL_VERIFICATION, e.what());
  } catch (const std::domain_error& e) {
    return fail(GS_ERR_NUMERIC, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(GS_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(GS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GS_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define GS_REQUIRE(cond, what) \
  if (!(cond)) return fail(GS_ERR_INVALID_ARGUMENT, what)

gs_outcome to_c(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Sat: return GS_SAT;
    case OutcomeKind::Unsat: return GS_UNSAT;
    case OutcomeKind::Timeout: return GS_TIMEOUT;
    case OutcomeKind::Unknown: return GS_UNKNOWN;
  }
  return GS_UNKNOWN;
}

OutcomeKind from_c(gs_outcome o) {
  switch (o) {
    case GS_SAT: return OutcomeKind::Sat;
    case GS_UNSAT: return OutcomeKind::Unsat;
    case GS_TIMEOUT: return OutcomeKind::Timeout;
    default: return OutcomeKind::Unknown;
  }
}

TrainConfig to_core(const gs_train_config& c) {
  TrainConfig t;
  t.batch_size = c.batch_size;
  t.epochs = c.epochs;
  t.learning_rate = c.learning_rate;
  t.temperature = c.temperature;
  t.clause_width = c.clause_width;
  t.seed = c.seed;
  t.batch_select = c.batch_select == GS_MAX_LOSS ? BatchSelect::MaxLoss : BatchSelect::MinLoss;
  t.adam_beta1 = c.adam_beta1;
  t.adam_beta2 = c.adam_beta2;
  t.adam_eps = c.adam_eps;
  t.threads = c.threads == 0 ? 1 : c.threads;
  return t;
}

void from_core(const TrainConfig& t, gs_train_config& c) {
  c.batch_size = t.batch_size;
  c.epochs = t.epochs;
  c.learning_rate = t.learning_rate;
  c.temperature = t.temperature;
  c.clause_width = t.clause_width;
  c.seed = t.seed;
  c.batch_select = t.batch_select == BatchSelect::MaxLoss ? GS_MAX_LOSS : GS_MIN_LOSS;
  c.adam_beta1 = t.adam_beta1;
  c.adam_beta2 = t.adam_beta2;
  c.adam_eps = t.adam_eps;
  c.threads = t.threads;
}

PipelineConfig to_core(const gs_run_config& c) {
  PipelineConfig p;
  p.train = to_core(c.train);
  p.pool_size = c.pool_size;
  p.rho = c.rho;
  p.depth = c.depth;
  p.mode = c.mode == GS_MODE_SAT ? RunMode::Sat : c.mode == GS_MODE_UNSAT ? RunMode::Unsat
                                                                          : RunMode::Auto;
  p.workers = c.workers == 0 ? 1 : c.workers;
  p.timeout_s = c.timeout_secs;
  return p;
}

std::unique_ptr<Backend> make_backend(const char* spec) {
  std::string s = spec ? spec : "internal";
  if (s.empty() || s == "internal") return std::make_unique<InternalBackend>();
  const std::string prefix = "external:";
  if (s.rfind(prefix, 0) == 0) {
    std::istringstream in(s.substr(prefix.size()));
    std::string binary;
    in >> binary;
    if (binary.empty()) throw std::invalid_argument("external backend needs a binary path");
    std::vector<std::string> args;
    for (std::string a; in >> a;) args.push_back(a);
    return std::make_unique<ExternalBackend>(binary, args);
  }
  throw std::invalid_argument("unknown backend '" + s + "' (expected internal or external:<path>)");
}

}  // namespace

extern "C" {

const char* gs_last_error(void) { return g_last_error.c_str(); }

const char* gs_status_name(gs_status status) {
  switch (status) {
    case GS_OK: return "ok";
    case GS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GS_ERR_PARSE: return "parse error";
    case GS_ERR_IO: return "i/o error";
    case GS_ERR_UNSAT_AT_PARSE: return "unsat at parse";
    case GS_ERR_NUMERIC: return "numeric error";
    case GS_ERR_MODEL_VERIFICATION: return "model verification failed";
    case GS_ERR_LABEL_MISMATCH: return "label mismatch";
    case GS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gs_version(void) { return "0.1.0"; }

void gs_string_free(char* s) { std::free(s); }

// CNF

gs_status gs_cnf_parse(const char* text, size_t len, int strict, gs_cnf** out) {
  GS_REQUIRE(out && (text || len == 0), "null argument");
  return guarded([&] {
    ParseResult pr = parse_dimacs(std::string_view(text ? text : "", len), {strict != 0});
    *out = new gs_cnf{std::move(pr.cnf), std::move(pr.warnings)};
    return GS_OK;
  });
}

gs_status gs_cnf_read_file(const char* path, int strict, gs_cnf** out) {
  GS_REQUIRE(path && out, "null argument");
  if (!std::ifstream(path)) return fail(GS_ERR_IO, std::string("cannot open ") + path);
  return guarded([&] {
    ParseResult pr = read_dimacs_file(path, {strict != 0});
    *out = new gs_cnf{std::move(pr.cnf), std::move(pr.warnings)};
    return GS_OK;
  });
}

gs_status gs_cnf_from_literals(uint32_t num_vars, const int64_t* lits, size_t len, gs_cnf** out) {
  GS_REQUIRE(out && (lits || len == 0), "null argument");
  return guarded([&] {
    std::vector<Clause> clauses;
    Clause cur;
    bool empty_clause = false;
    for (size_t i = 0; i < len; ++i) {
      if (lits[i] == 0) {
        if (cur.empty()) empty_clause = true;
        else clauses.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(Literal::from_dimacs(lits[i]));
      }
    }
    if (!cur.empty()) throw std::invalid_argument("last clause is not terminated by 0");
    *out = new gs_cnf{Cnf(num_vars, std::move(clauses), empty_clause), {}};
    return GS_OK;
  });
}

size_t gs_cnf_warning_count(const gs_cnf* cnf) { return cnf ? cnf->warnings.size() : 0; }
const char* gs_cnf_warning(const gs_cnf* cnf, size_t i) {
  return cnf && i < cnf->warnings.size() ? cnf->warnings[i].c_str() : nullptr;
}
uint32_t gs_cnf_num_vars(const gs_cnf* cnf) { return cnf ? cnf->cnf.num_vars() : 0; }
size_t gs_cnf_num_clauses(const gs_cnf* cnf) { return cnf ? cnf->cnf.num_clauses() : 0; }
int gs_cnf_trivially_unsat(const gs_cnf* cnf) { return cnf && cnf->cnf.trivially_unsat(); }

gs_status gs_cnf_write(const gs_cnf* cnf, char** out_text) {
  GS_REQUIRE(cnf && out_text, "null argument");
  return guarded([&] {
    *out_text = dup_string(write_dimacs(cnf->cnf));
    return GS_OK;
  });
}

gs_status gs_cnf_write_file(const gs_cnf* cnf, const char* path) {
  GS_REQUIRE(cnf && path, "null argument");
  return guarded([&] {
    try {
      write_dimacs_file(cnf->cnf, path);
    } catch (const std::runtime_error& e) {
      return fail(GS_ERR_IO, e.what());
    }
    return GS_OK;
  });
}

gs_status gs_cnf_verify_model(const gs_cnf* cnf, const uint8_t* values, size_t len, int* out_ok) {
  GS_REQUIRE(cnf && out_ok && (values || len == 0), "null argument");
  return guarded([&] {
    Assignment a(std::vector<std::uint8_t>(values, values + len));
    *out_ok = verify_model(cnf->cnf, a) ? 1 : 0;
    return GS_OK;
  });
}

gs_status gs_cnf_augment(const gs_cnf* cnf, const int64_t* lits, size_t n, gs_cnf** out) {
  GS_REQUIRE(cnf && out && (lits || n == 0), "null argument");
  return guarded([&] {
    std::vector<Literal> units;
    for (size_t i = 0; i < n; ++i) units.push_back(Literal::from_dimacs(lits[i]));
    *out = new gs_cnf{augment_with_units(cnf->cnf, units), {}};
    return GS_OK;
  });
}

void gs_cnf_free(gs_cnf* cnf) { delete cnf; }

// Normalization

gs_status gs_normalize(const gs_cnf* cnf, unsigned k, gs_normalized** out) {
  GS_REQUIRE(cnf && out, "null argument");
  return guarded([&] {
    NormalizedCnf norm = normalize(cnf->cnf, k);
    auto* h = new gs_normalized{std::move(norm), {}};
    h->view.cnf = h->norm.cnf;
    *out = h;
    return GS_OK;
  });
}

uint32_t gs_normalized_original_vars(const gs_normalized* n) { return n ? n->norm.original_vars : 0; }
uint32_t gs_normalized_total_vars(const gs_normalized* n) { return n ? n->norm.total_vars : 0; }
const gs_cnf* gs_normalized_cnf(const gs_normalized* n) { return n ? &n->view : nullptr; }

gs_status gs_normalized_write(const gs_normalized* n, char** out_text) {
  GS_REQUIRE(n && out_text, "null argument");
  return guarded([&] {
    std::string comment = "original_vars " + std::to_string(n->norm.original_vars);
    *out_text = dup_string(write_dimacs(n->norm.cnf, std::span(&comment, 1)));
    return GS_OK;
  });
}

gs_status gs_project_assignment(const gs_normalized* n, const uint8_t* full, size_t full_len,
                                uint8_t* out, size_t out_len) {
  GS_REQUIRE(n && (full || full_len == 0) && (out || out_len == 0), "null argument");
  return guarded([&] {
    Assignment p = project_assignment(n->norm, Assignment(std::vector<std::uint8_t>(full, full + full_len)));
    if (out_len != p.size())
      return fail(GS_ERR_INVALID_ARGUMENT, "output buffer must hold original_vars entries");
    std::copy(p.bits().begin(), p.bits().end(), out);
    return GS_OK;
  });
}

void gs_normalized_free(gs_normalized* n) { delete n; }

// Training

void gs_train_config_default(gs_train_config* cfg) {
  if (cfg) from_core(TrainConfig{}, *cfg);
}

gs_status gs_train(const gs_normalized* norm, const gs_train_config* cfg, gs_train_result** out) {
  GS_REQUIRE(norm && cfg && out, "null argument");
  return guarded([&] {
    *out = new gs_train_result{train(norm->norm, to_core(*cfg))};
    return GS_OK;
  });
}

uint32_t gs_train_result_original_vars(const gs_train_result* r) { return r ? r->result.original_vars : 0; }
uint32_t gs_train_result_total_vars(const gs_train_result* r) { return r ? r->result.total_vars : 0; }
size_t gs_train_result_selected_batch(const gs_train_result* r) { return r ? r->result.selected_batch : 0; }
size_t gs_train_result_batch_size(const gs_train_result* r) {
  return r ? r->result.per_batch_losses.size() : 0;
}

gs_status gs_train_result_theta(const gs_train_result* r, double* out, size_t len) {
  GS_REQUIRE(r && (out || len == 0), "null argument");
  GS_REQUIRE(len == r->result.theta_sel.size() * 2, "buffer must hold total_vars * 2 values");
  for (size_t v = 0; v < r->result.theta_sel.size(); ++v) {
    out[2 * v] = r->result.theta_sel[v][0];
    out[2 * v + 1] = r->result.theta_sel[v][1];
  }
  return GS_OK;
}

gs_status gs_train_result_losses(const gs_train_result* r, double* out, size_t len) {
  GS_REQUIRE(r && (out || len == 0), "null argument");
  GS_REQUIRE(len == r->result.per_batch_losses.size(), "buffer must hold batch_size values");
  std::copy(r->result.per_batch_losses.begin(), r->result.per_batch_losses.end(), out);
  return GS_OK;
}

gs_status gs_train_result_to_json(const gs_train_result* r, const gs_train_config* cfg,
                                  char** out_json) {
  GS_REQUIRE(r && cfg && out_json, "null argument");
  return guarded([&] {
    *out_json = dup_string(train_artifact_json(r->result, to_core(*cfg)));
    return GS_OK;
  });
}

gs_status gs_train_result_from_json(const char* json, gs_train_result** out,
                                    gs_train_config* cfg_out) {
  GS_REQUIRE(json && out, "null argument");
  return guarded([&] {
    TrainConfig cfg;
    TrainResult r;
    try {
      r = parse_train_artifact(json, &cfg);
    } catch (const std::runtime_error& e) {
      return fail(GS_ERR_PARSE, e.what());
    }
    if (cfg_out) from_core(cfg, *cfg_out);
    *out = new gs_train_result{std::move(r)};
    return GS_OK;
  });
}

void gs_train_result_free(gs_train_result* r) { delete r; }

// Pools and cubes

void gs_pool_config_default(gs_pool_config* cfg) {
  if (!cfg) return;
  PoolConfig p;
  cfg->pool_size = p.pool_size;
  cfg->rho = p.confidence_fraction;
  cfg->temperature = p.temperature;
  cfg->seed = p.seed;
}

gs_status gs_pool_build(const gs_cnf* cnf, const gs_train_result* trained,
                        const gs_pool_config* cfg, gs_jobs** out) {
  GS_REQUIRE(cnf && trained && cfg && out, "null argument");
  GS_REQUIRE(trained->result.original_vars == cnf->cnf.num_vars(),
             "train artifact does not match the formula's variable count");
  return guarded([&] {
    PoolConfig pc{cfg->pool_size, cfg->rho, cfg->temperature, pool_seed(cfg->seed)};
    std::vector<Candidate> pool = sample_pool(trained->result.theta_sel, cnf->cnf.num_vars(), pc);
    auto h = std::make_unique<gs_jobs>();
    h->selection_size = partial_size(cnf->cnf.num_vars(), cfg->rho);
    for (const Candidate& c : pool) {
      std::vector<Literal> units = extract_partial(c, cfg->rho);
      h->jobs.push_back({augment_with_units(cnf->cnf, units), {}});
      h->units.push_back(std::move(units));
      h->confidence.push_back(c.confidence);
    }
    *out = h.release();
    return GS_OK;
  });
}

gs_status gs_cubes_build(const gs_cnf* cnf, const gs_train_result* trained, unsigned d,
                         double temperature, gs_jobs** out) {
  GS_REQUIRE(cnf && trained && out, "null argument");
  GS_REQUIRE(trained->result.original_vars == cnf->cnf.num_vars(),
             "train artifact does not match the formula's variable count");
  return guarded([&] {
    auto h = std::make_unique<gs_jobs>();
    h->cubes = true;
    h->branch_vars = select_branch_vars(trained->result.theta_sel, cnf->cnf.num_vars(), d, temperature);
    for (Cube& c : enumerate_cubes(h->branch_vars)) {
      h->jobs.push_back({augment_with_units(cnf->cnf, c.assumptions), {}});
      h->units.push_back(std::move(c.assumptions));
    }
    *out = h.release();
    return GS_OK;
  });
}

size_t gs_jobs_count(const gs_jobs* jobs) { return jobs ? jobs->jobs.size() : 0; }

const gs_cnf* gs_jobs_cnf(const gs_jobs* jobs, size_t i) {
  return jobs && i < jobs->jobs.size() ? &jobs->jobs[i] : nullptr;
}

size_t gs_jobs_units(const gs_jobs* jobs, size_t i, int64_t* out, size_t len) {
  if (!jobs || i >= jobs->units.size()) return 0;
  const auto& u = jobs->units[i];
  for (size_t k = 0; k < u.size() && k < len; ++k) out[k] = u[k].to_dimacs();
  return u.size();
}

gs_status gs_jobs_write_dir(const gs_jobs* jobs, const char* dir, const char* source_name) {
  GS_REQUIRE(jobs && dir, "null argument");
  return guarded([&] {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::string source = source_name ? source_name : "";
    std::string manifest;
    const int width = jobs->cubes ? 5 : 4;
    auto name = [&](const char* prefix, size_t i) {
      std::string num = std::to_string(i);
      if (num.size() < static_cast<size_t>(width)) num.insert(0, width - num.size(), '0');
      return std::string(prefix) + num + ".cnf";
    };
    if (jobs->cubes) {
      std::vector<CubeFile> files;
      for (size_t i = 0; i < jobs->jobs.size(); ++i) {
        files.push_back({static_cast<std::uint32_t>(i), name("cube_", i), jobs->units[i]});
        write_dimacs_file(jobs->jobs[i].cnf, (fs::path(dir) / files.back().file).string());
      }
      manifest = cube_manifest_json(source, jobs->branch_vars, files);
    } else {
      std::vector<PoolFile> files;
      for (size_t i = 0; i < jobs->jobs.size(); ++i) {
        files.push_back({i + 1, name("cand_", i + 1), jobs->units[i], jobs->confidence[i]});
        write_dimacs_file(jobs->jobs[i].cnf, (fs::path(dir) / files.back().file).string());
      }
      manifest = pool_manifest_json(source, jobs->selection_size, files);
    }
    std::ofstream m(fs::path(dir) / "manifest.json", std::ios::trunc);
    if (!m) return fail(GS_ERR_IO, std::string("cannot write manifest in ") + dir);
    m << manifest;
    return GS_OK;
  });
}

void gs_jobs_free(gs_jobs* jobs) { delete jobs; }

// Solving

void gs_run_config_default(gs_run_config* cfg) {
  if (!cfg) return;
  PipelineConfig p;
  gs_train_config_default(&cfg->train);
  cfg->pool_size = p.pool_size;
  cfg->rho = p.rho;
  cfg->depth = p.depth;
  cfg->mode = GS_MODE_AUTO;
  cfg->workers = p.workers;
  cfg->timeout_secs = p.timeout_s;
  cfg->backend = nullptr;
}

gs_status gs_solve(const gs_cnf* cnf, double timeout_secs, gs_result** out) {
  GS_REQUIRE(cnf && out, "null argument");
  return guarded([&] {
    auto t0 = Clock::now();
    std::optional<Clock::duration> budget;
    if (timeout_secs > 0)
      budget = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(timeout_secs));
    SolverStats stats;
    SolveOutcome o = solve_cnf(cnf->cnf, budget, {}, &stats);
    if (o.kind == OutcomeKind::Sat && !verify_model(cnf->cnf, o.model))
      throw ModelVerificationError("solver returned a model that falsifies the formula");
    auto h = std::make_unique<gs_result>();
    h->result.outcome = std::move(o);
    h->result.work = stats.propagations;
    h->result.total_s = std::chrono::duration<double>(Clock::now() - t0).count();
    *out = h.release();
    return GS_OK;
  });
}

gs_status gs_run(const gs_cnf* cnf, const gs_run_config* cfg, gs_result** out) {
  GS_REQUIRE(cnf && cfg && out, "null argument");
  return guarded([&] {
    std::unique_ptr<Backend> backend = make_backend(cfg->backend);
    *out = new gs_result{run_pipeline(cnf->cnf, to_core(*cfg), *backend)};
    return GS_OK;
  });
}

gs_outcome gs_result_outcome(const gs_result* r) {
  return r ? to_c(r->result.outcome.kind) : GS_UNKNOWN;
}

size_t gs_result_model(const gs_result* r, uint8_t* out, size_t len) {
  if (!r || r->result.outcome.kind != OutcomeKind::Sat) return 0;
  auto bits = r->result.outcome.model.bits();
  for (size_t i = 0; i < bits.size() && i < len; ++i) out[i] = bits[i];
  return bits.size();
}

double gs_result_wall_time(const gs_result* r) { return r ? r->result.total_s : 0.0; }

gs_status gs_result_log_json(const gs_result* r, const char* instance, char** out_json) {
  GS_REQUIRE(r && out_json, "null argument");
  return guarded([&] {
    *out_json = dup_string(run_log_json(r->result, instance ? instance : ""));
    return GS_OK;
  });
}

void gs_result_free(gs_result* r) { delete r; }

// Benchmarking

void gs_bench_config_default(gs_bench_config* cfg) {
  if (!cfg) return;
  gs_run_config_default(&cfg->run);
  cfg->time_source_work = 0;
  cfg->cpu_only_par2 = 0;
  cfg->pool_eval = 0;
  cfg->instance_jobs = 1;
  cfg->labels_path = nullptr;
  cfg->csv_out = nullptr;
  cfg->json_out = nullptr;
}

gs_status gs_bench(const char* dir, const gs_bench_config* cfg, gs_bench_report** out) {
  GS_REQUIRE(dir && cfg && out, "null argument");
  if (!std::filesystem::is_directory(dir))
    return fail(GS_ERR_IO, std::string("not a directory: ") + dir);
  return guarded([&] {
    BenchConfig bc;
    bc.pipeline = to_core(cfg->run);
    bc.time_source = cfg->time_source_work ? TimeSource::Work : TimeSource::Wall;
    bc.cpu_only_par2 = cfg->cpu_only_par2 != 0;
    bc.pool_eval = cfg->pool_eval != 0;
    bc.instance_jobs = cfg->instance_jobs == 0 ? 1 : cfg->instance_jobs;
    if (cfg->labels_path) bc.labels_path = cfg->labels_path;
    if (cfg->csv_out) bc.csv_out = cfg->csv_out;
    if (cfg->json_out) bc.json_out = cfg->json_out;
    std::unique_ptr<Backend> backend = make_backend(cfg->run.backend);
    try {
      *out = new gs_bench_report{run_bench(dir, bc, *backend)};
    } catch (const LabelMismatch& e) {
      *out = new gs_bench_report{e.report};
      return fail(GS_ERR_LABEL_MISMATCH, e.what());
    }
    return GS_OK;
  });
}

size_t gs_bench_report_count(const gs_bench_report* r) { return r ? r->report.records.size() : 0; }
size_t gs_bench_report_solved(const gs_bench_report* r) { return r ? r->report.solved_count : 0; }
double gs_bench_report_avg_par2(const gs_bench_report* r) { return r ? r->report.avg_par2 : 0.0; }

gs_status gs_bench_report_csv(const gs_bench_report* r, char** out) {
  GS_REQUIRE(r && out, "null argument");
  return guarded([&] {
    *out = dup_string(report_csv(r->report));
    return GS_OK;
  });
}

gs_status gs_bench_report_json(const gs_bench_report* r, char** out) {
  GS_REQUIRE(r && out, "null argument");
  return guarded([&] {
    *out = dup_string(report_json(r->report));
    return GS_OK;
  });
}

void gs_bench_report_free(gs_bench_report* r) { delete r; }

double gs_par2_score(gs_outcome outcome, double wall_time, double timeout_secs) {
  return par2_score(from_c(outcome), wall_time, timeout_secs);
}

}  // extern "C"
