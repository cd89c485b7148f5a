#include <gtest/gtest.h>

#include "artifacts.hpp"
#include "cdcl.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"

using namespace galoissat;
namespace gt = galoissat::testing;

namespace {

PipelineConfig small_config(RunMode mode) {
  PipelineConfig cfg;
  cfg.train.batch_size = 8;
  cfg.train.epochs = 5;
  cfg.pool_size = 4;
  cfg.depth = 2;
  cfg.mode = mode;
  cfg.workers = 2;
  cfg.timeout_s = 30;
  return cfg;
}

}  // namespace

TEST(Pipeline, ModesAgreeWithSolverOracle) {
  Rng rng(600);
  InternalBackend backend;
  for (int i = 0; i < 20; ++i) {
    Var n = 10 + static_cast<Var>(rng.below(30));
    Cnf phi = gt::random_ksat(rng, n, 4.26);
    OutcomeKind truth = solve_cnf(phi).kind;
    for (RunMode mode : {RunMode::Sat, RunMode::Unsat, RunMode::Auto}) {
      PipelineResult r = run_pipeline(phi, small_config(mode), backend);
      ASSERT_EQ(r.outcome.kind, truth) << run_mode_name(mode);
      if (truth == OutcomeKind::Sat) EXPECT_TRUE(verify_model(phi, r.outcome.model));
      ASSERT_TRUE(r.run.has_value());
      EXPECT_GT(r.work, 0u);
    }
  }
}

TEST(Pipeline, ShortCircuits) {
  InternalBackend backend;
  auto unsat = parse_dimacs("p cnf 2 2\n1 0\n0\n").cnf;
  EXPECT_EQ(run_pipeline(unsat, small_config(RunMode::Auto), backend).outcome.kind,
            OutcomeKind::Unsat);
  PipelineResult empty = run_pipeline(Cnf(3, {}), small_config(RunMode::Auto), backend);
  EXPECT_EQ(empty.outcome.kind, OutcomeKind::Sat);
  EXPECT_EQ(empty.outcome.model.size(), 3u);
}

TEST(Pipeline, DepthClampedToVariableCount) {
  InternalBackend backend;
  Cnf phi(2, {{pos(1), pos(2)}, {neg(1)}});
  PipelineConfig cfg = small_config(RunMode::Unsat);
  cfg.depth = 7;
  PipelineResult r = run_pipeline(phi, cfg, backend);
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Sat);
  EXPECT_EQ(r.branch_vars.size(), 2u);
}

TEST(Pipeline, DeterministicJobConstruction) {
  Rng rng(601);
  Cnf phi = gt::random_ksat(rng, 40, 4.0);
  InternalBackend backend;
  PipelineConfig cfg = small_config(RunMode::Auto);
  cfg.workers = 1;
  cfg.train.seed = 7;
  PipelineResult a = run_pipeline(phi, cfg, backend);
  PipelineResult b = run_pipeline(phi, cfg, backend);
  EXPECT_EQ(a.training->theta_sel, b.training->theta_sel);
  EXPECT_EQ(a.branch_vars, b.branch_vars);
  EXPECT_EQ(a.outcome.kind, b.outcome.kind);
  EXPECT_EQ(a.outcome.model, b.outcome.model);
  EXPECT_EQ(a.work, b.work);
  // Jobs finishing after the decision race with cancellation, so only the
  // job definitions are compared, not their individual outcomes.
  ASSERT_EQ(a.run->log.size(), b.run->log.size());
  for (std::size_t i = 0; i < a.run->log.size(); ++i)
    EXPECT_EQ(a.run->log[i].meta.units, b.run->log[i].meta.units);
}

TEST(Pipeline, TimeoutDuringTraining) {
  Rng rng(602);
  Cnf phi = gt::random_ksat(rng, 300, 4.2);
  InternalBackend backend;
  PipelineConfig cfg = small_config(RunMode::Auto);
  cfg.train.batch_size = 256;
  cfg.train.epochs = 100000;
  cfg.timeout_s = 0.2;
  auto t0 = Clock::now();
  PipelineResult r = run_pipeline(phi, cfg, backend);
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Timeout);
  EXPECT_LT(Clock::now() - t0, std::chrono::seconds(3));
}

TEST(Artifacts, TrainArtifactRoundTrip) {
  Rng rng(603);
  NormalizedCnf norm = normalize(gt::random_cnf(rng, 12, 30, 1, 6), 3);
  TrainConfig cfg;
  cfg.batch_size = 5;
  cfg.seed = 99;
  cfg.batch_select = BatchSelect::MaxLoss;
  TrainResult r = train(norm, cfg);
  TrainConfig back;
  TrainResult parsed = parse_train_artifact(train_artifact_json(r, cfg), &back);
  EXPECT_EQ(parsed.theta_sel, r.theta_sel);
  EXPECT_EQ(parsed.per_batch_losses, r.per_batch_losses);
  EXPECT_EQ(parsed.selected_batch, r.selected_batch);
  EXPECT_EQ(parsed.original_vars, r.original_vars);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.batch_select, BatchSelect::MaxLoss);
  EXPECT_THROW(parse_train_artifact("{}"), std::runtime_error);
  EXPECT_THROW(parse_train_artifact("not json"), std::runtime_error);
}

TEST(Artifacts, RunLogSchema) {
  Rng rng(604);
  Cnf phi = gt::random_ksat(rng, 20, 4.0);
  InternalBackend backend;
  PipelineResult r = run_pipeline(phi, small_config(RunMode::Auto), backend);
  std::string log = run_log_json(r, "x.cnf");
  for (const char* key : {"\"instance\"", "\"outcome\"", "\"jobs\"", "\"wall_time_s\"",
                          "\"units\"", "\"mode\"", "\"decided_by\""})
    EXPECT_NE(log.find(key), std::string::npos) << key;
}
