#include "pipeline.hpp"

#include "unsat_cubes.hpp"

namespace galoissat {

std::string_view run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::Sat: return "sat";
    case RunMode::Unsat: return "unsat";
    case RunMode::Auto: return "auto";
  }
  return "auto";
}

std::optional<RunMode> parse_run_mode(std::string_view s) {
  if (s == "sat") return RunMode::Sat;
  if (s == "unsat") return RunMode::Unsat;
  if (s == "auto") return RunMode::Auto;
  return std::nullopt;
}

std::uint64_t pool_seed(std::uint64_t train_seed) { return Rng::stream(train_seed, 2).next(); }

PipelineResult run_pipeline(const Cnf& cnf, const PipelineConfig& cfg, Backend& backend) {
  const Clock::time_point start = Clock::now();
  const Clock::time_point deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(cfg.timeout_s));
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  PipelineResult res;
  if (cnf.trivially_unsat()) {
    res.outcome = SolveOutcome::unsat();
    res.note = "empty clause in input";
    res.total_s = elapsed();
    return res;
  }
  if (cnf.num_clauses() == 0) {
    res.outcome = SolveOutcome::sat(Assignment(cnf.num_vars()));
    res.note = "no clauses";
    res.total_s = elapsed();
    return res;
  }

  NormalizedCnf norm = normalize(cnf, cfg.train.clause_width);
  TrainConfig tcfg = cfg.train;
  res.training = train(norm, tcfg, [&] { return Clock::now() >= deadline; });
  res.train_s = elapsed();
  res.work += res.training->work;
  if (Clock::now() >= deadline) {
    res.outcome = SolveOutcome::timeout();
    res.note = "deadline reached during training";
    res.total_s = elapsed();
    return res;
  }

  const auto& theta = res.training->theta_sel;
  const Var n = cnf.num_vars();
  std::optional<JobSet> sat_set;
  std::optional<JobSet> cube_set;
  if (cfg.mode != RunMode::Unsat) {
    PoolConfig pcfg;
    pcfg.pool_size = cfg.pool_size;
    pcfg.confidence_fraction = cfg.rho;
    pcfg.temperature = cfg.train.temperature;
    pcfg.seed = pool_seed(cfg.train.seed);
    std::vector<Candidate> pool = sample_pool(theta, n, pcfg);
    std::vector<std::vector<Literal>> partials;
    for (const Candidate& c : pool) partials.push_back(extract_partial(c, cfg.rho));
    std::vector<Cnf> jobs = build_sat_jobs(cnf, pool, cfg.rho);
    sat_set = make_sat_jobset(cnf, std::move(jobs), std::move(partials));
  }
  if (cfg.mode != RunMode::Sat) {
    unsigned d = std::min<unsigned>({cfg.depth, static_cast<unsigned>(n), kMaxCubeDepth});
    if (d == 0) throw std::invalid_argument("branch depth must be >= 1");
    res.branch_vars = select_branch_vars(theta, n, d, cfg.train.temperature);
    cube_set = make_cube_jobset(cnf, res.branch_vars);
  }

  ExecOptions eo;
  eo.timeout = deadline - Clock::now();
  eo.workers = cfg.workers;
  eo.exhaustive = cfg.exhaustive;
  if (sat_set && cube_set)
    res.run = run_combined(cnf, *sat_set, *cube_set, backend, eo);
  else if (sat_set)
    res.run = run_jobset(cnf, *sat_set, backend, eo);
  else
    res.run = run_jobset(cnf, *cube_set, backend, eo);

  res.outcome = res.run->outcome;
  res.work += res.run->work;
  res.total_s = elapsed();
  if (res.outcome.kind == OutcomeKind::Sat && !verify_model(cnf, res.outcome.model))
    throw ModelVerificationError("pipeline produced a model that falsifies the input formula");
  return res;
}

}  // namespace galoissat
