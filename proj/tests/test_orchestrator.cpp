#include <gtest/gtest.h>

#include <thread>

#include "oracle.hpp"
#include "orchestrator.hpp"
#include "sat_pool.hpp"

using namespace galoissat;
using namespace std::chrono_literals;
namespace gt = galoissat::testing;
using Script = StubBackend::Script;

namespace {

Cnf sat_formula() { return Cnf(4, {{pos(1), pos(2)}, {neg(1), pos(3)}, {pos(4), neg(2)}}); }

JobSet pool_set(const Cnf& phi, std::size_t n) {
  std::vector<Cnf> jobs = {phi};
  std::vector<std::vector<Literal>> partials;
  for (std::size_t k = 0; k < n; ++k) {
    partials.push_back({});
    jobs.push_back(phi);
  }
  return make_sat_jobset(phi, std::move(jobs), std::move(partials));
}

ExecOptions opts(unsigned workers, std::chrono::milliseconds timeout = 10000ms) {
  ExecOptions o;
  o.workers = workers;
  o.timeout = timeout;
  return o;
}

}  // namespace

TEST(JobSets, Construction) {
  Cnf phi = sat_formula();
  EXPECT_THROW(make_sat_jobset(phi, {Cnf(4, {{pos(1)}})}, {}), std::invalid_argument);
  EXPECT_THROW(make_sat_jobset(phi, {phi, phi}, {}), std::invalid_argument);
  std::vector<Var> vars = {1, 3};
  JobSet cubes = make_cube_jobset(phi, vars);
  ASSERT_EQ(cubes.jobs.size(), 4u);
  EXPECT_EQ(cubes.meta[2].index, 2u);
  EXPECT_EQ(cubes.meta[2].units, (std::vector<Literal>{neg(1), pos(3)}));
}

TEST(Orchestrator, FirstSatCancelsSiblingsQuickly) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 5);
  StubBackend stub(Script{OutcomeKind::Unknown, 5s, std::nullopt}, 5ms);
  stub.script(3, {OutcomeKind::Sat, 50ms, std::nullopt});
  auto t0 = Clock::now();
  RunResult r = run_jobset(phi, set, stub, opts(6));
  EXPECT_LT(Clock::now() - t0, 2s);
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Sat);
  EXPECT_EQ(r.decided_job, 3u);
  EXPECT_TRUE(verify_model(phi, r.outcome.model));
  Clock::time_point sat_exit{};
  for (const auto& e : stub.exits())
    if (e.job_index == 3) sat_exit = e.at;
  for (const auto& e : stub.exits()) {
    if (e.job_index == 3) continue;
    EXPECT_TRUE(e.cancelled);
    ASSERT_TRUE(e.stop_requested_at.has_value());
    EXPECT_LE(e.at - *e.stop_requested_at, 2 * stub.poll_granularity() + 20ms);
    EXPECT_LT(e.at - sat_exit, 500ms);
  }
}

TEST(Orchestrator, CubesUnsatOnlyAfterAllReport) {
  Cnf phi = sat_formula();
  std::vector<Var> vars = {1, 2, 3};
  JobSet set = make_cube_jobset(phi, vars);
  StubBackend stub(Script{OutcomeKind::Unsat, 5ms, std::nullopt}, 1ms);
  stub.script(6, {OutcomeKind::Unsat, 150ms, std::nullopt});
  auto t0 = Clock::now();
  RunResult r = run_jobset(phi, set, stub, opts(3));
  EXPECT_GE(Clock::now() - t0, 150ms);
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Unsat);
  EXPECT_EQ(r.decided_job, 6u);
  for (const auto& e : r.log) EXPECT_EQ(e.outcome, OutcomeKind::Unsat);
}

TEST(Orchestrator, CubesWithTimeoutAreUndecided) {
  Cnf phi = sat_formula();
  std::vector<Var> vars = {1, 2};
  JobSet set = make_cube_jobset(phi, vars);
  StubBackend stub(Script{OutcomeKind::Unsat, 1ms, std::nullopt}, 1ms);
  stub.script(2, {OutcomeKind::Unknown, 10s, std::nullopt});
  RunResult r = run_jobset(phi, set, stub, opts(4, 100ms));
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Timeout);
}

TEST(Orchestrator, CubeSatModelIncludesAssumptions) {
  Cnf phi = sat_formula();
  std::vector<Var> vars = {1, 4};
  JobSet set = make_cube_jobset(phi, vars);
  StubBackend stub(Script{OutcomeKind::Unsat, 1ms, std::nullopt}, 1ms);
  stub.script(3, {OutcomeKind::Sat, 1ms, std::nullopt});
  RunResult r = run_jobset(phi, set, stub, opts(1));
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Sat);
  EXPECT_TRUE(r.outcome.model.value(1));
  EXPECT_TRUE(r.outcome.model.value(4));
}

TEST(Orchestrator, WorkerCapNeverExceeded) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 11);
  for (unsigned w : {1u, 2u, 3u, 5u}) {
    StubBackend stub(Script{OutcomeKind::Unknown, 20ms, std::nullopt}, 1ms);
    RunResult r = run_jobset(phi, set, stub, opts(w));
    EXPECT_EQ(r.outcome.kind, OutcomeKind::Unknown);
    EXPECT_LE(stub.max_concurrency(), w);
    EXPECT_EQ(stub.max_concurrency(), w);
    EXPECT_EQ(stub.started(), 12u);
  }
}

TEST(Orchestrator, AnchorUnsatDecides) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 3);
  StubBackend stub(Script{OutcomeKind::Unsat, 1ms, std::nullopt}, 1ms);
  stub.script(0, {OutcomeKind::Unsat, 100ms, std::nullopt});
  RunResult r = run_jobset(phi, set, stub, opts(4));
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Unsat);
  EXPECT_EQ(r.decided_job, 0u);
  EXPECT_GE(r.wall_s, 0.1);
}

TEST(Orchestrator, AugmentedUnsatAloneDoesNotDecide) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 3);
  StubBackend stub(Script{OutcomeKind::Unsat, 1ms, std::nullopt}, 1ms);
  stub.script(0, {OutcomeKind::Unknown, 10s, std::nullopt});
  RunResult r = run_jobset(phi, set, stub, opts(4, 150ms));
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Timeout);
}

TEST(Orchestrator, DeterministicFoldUnderScriptedDelays) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 6);
  for (int rep = 0; rep < 5; ++rep) {
    StubBackend stub(Script{OutcomeKind::Unknown, 400ms, std::nullopt}, 2ms);
    stub.script(2, {OutcomeKind::Sat, 120ms, std::nullopt});
    stub.script(5, {OutcomeKind::Sat, 30ms, std::nullopt});
    stub.script(4, {OutcomeKind::Unsat, 10ms, std::nullopt});
    RunResult r = run_jobset(phi, set, stub, opts(7));
    ASSERT_EQ(r.outcome.kind, OutcomeKind::Sat);
    EXPECT_EQ(r.decided_job, 5u);
    EXPECT_EQ(r.log[4].outcome, OutcomeKind::Unsat);
  }
}

TEST(Orchestrator, ExhaustiveRunsEveryJob) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 4);
  StubBackend stub(Script{OutcomeKind::Unsat, 40ms, std::nullopt}, 1ms);
  stub.script(1, {OutcomeKind::Sat, 1ms, std::nullopt});
  ExecOptions o = opts(5);
  o.exhaustive = true;
  RunResult r = run_jobset(phi, set, stub, o);
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Sat);
  EXPECT_EQ(r.decided_job, 1u);
  for (std::size_t j = 0; j < r.log.size(); ++j)
    EXPECT_EQ(r.log[j].outcome, j == 1 ? OutcomeKind::Sat : OutcomeKind::Unsat);
}

TEST(Orchestrator, BadModelIsHardError) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 2);
  StubBackend stub(Script{OutcomeKind::Unknown, 1ms, std::nullopt}, 1ms);
  stub.script(1, {OutcomeKind::Sat, 1ms, Assignment(4, false)});
  EXPECT_THROW(run_jobset(phi, set, stub, opts(2)), ModelVerificationError);
  stub.script(1, {OutcomeKind::Sat, 1ms, Assignment(2, true)});
  EXPECT_THROW(run_jobset(phi, set, stub, opts(2)), ModelVerificationError);
}

TEST(Orchestrator, CombinedInterleavesAndReturnsFirstDecision) {
  Cnf phi = sat_formula();
  JobSet pool = pool_set(phi, 2);  // 3 jobs
  std::vector<Var> vars = {1, 2};
  JobSet cubes = make_cube_jobset(phi, vars);  // 4 jobs
  // Schedule: P0 C0 P1 C1 P2 C2 C3.
  StubBackend stub(Script{OutcomeKind::Unknown, 300ms, std::nullopt}, 1ms);
  stub.script(3, {OutcomeKind::Sat, 10ms, std::nullopt});
  RunResult r = run_combined(phi, pool, cubes, stub, opts(7));
  ASSERT_EQ(r.outcome.kind, OutcomeKind::Sat);
  EXPECT_EQ(r.decided_by, JobMode::UnsatCubes);
  EXPECT_EQ(r.decided_job, 1u);
  ASSERT_EQ(r.log.size(), 7u);
  EXPECT_EQ(r.log[0].mode, JobMode::SatPool);
  EXPECT_EQ(r.log[1].mode, JobMode::UnsatCubes);
  EXPECT_EQ(r.log[6].mode, JobMode::UnsatCubes);
  EXPECT_EQ(r.log[6].job, 3u);
}

TEST(Orchestrator, ExternalStopCancels) {
  Cnf phi = sat_formula();
  JobSet set = pool_set(phi, 2);
  StubBackend stub(Script{OutcomeKind::Sat, 10s, std::nullopt}, 2ms);
  std::stop_source src;
  ExecOptions o = opts(3);
  o.stop = src.get_token();
  std::jthread t([&] {
    std::this_thread::sleep_for(50ms);
    src.request_stop();
  });
  auto t0 = Clock::now();
  RunResult r = run_jobset(phi, set, stub, o);
  EXPECT_LT(Clock::now() - t0, 2s);
  EXPECT_EQ(r.outcome.kind, OutcomeKind::Unknown);
}

TEST(Orchestrator, InternalBackendAgreesWithOracle) {
  Rng rng(31);
  InternalBackend backend;
  for (int i = 0; i < 40; ++i) {
    Var n = 6 + static_cast<Var>(rng.below(10));
    Cnf phi = gt::random_ksat(rng, n, 4.26);
    std::vector<Var> vars = {1, 2, 3};
    RunResult r = run_jobset(phi, make_cube_jobset(phi, vars), backend, opts(2));
    EXPECT_EQ(r.outcome.kind == OutcomeKind::Sat, gt::brute_force_sat(phi));
    EXPECT_TRUE(r.outcome.decisive());
  }
}
