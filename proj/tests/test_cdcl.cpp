#include <gtest/gtest.h>

#include <thread>

#include "cdcl.hpp"
#include "oracle.hpp"

using namespace galoissat;
using namespace std::chrono_literals;
namespace gt = galoissat::testing;

namespace {

void expect_matches_oracle(const Cnf& cnf) {
  SolveOutcome out = CdclSolver(cnf).solve();
  bool sat = gt::brute_force_sat(cnf);
  ASSERT_EQ(out.kind, sat ? OutcomeKind::Sat : OutcomeKind::Unsat) << write_dimacs(cnf);
  if (sat) EXPECT_TRUE(verify_model(cnf, out.model));
}

}  // namespace

TEST(Cdcl, CraftedFixtures) {
  expect_matches_oracle(Cnf(1, {}));
  expect_matches_oracle(Cnf(3, {}));
  expect_matches_oracle(Cnf(1, {{pos(1)}}));
  expect_matches_oracle(Cnf(1, {{pos(1)}, {neg(1)}}));
  expect_matches_oracle(Cnf(2, {{pos(1), neg(1)}}));
  expect_matches_oracle(Cnf(2, {{pos(1), neg(1)}, {pos(2)}, {neg(2), pos(2)}}));
  expect_matches_oracle(Cnf(3, {{pos(1), pos(1), pos(2)}, {neg(1)}, {neg(2), pos(3)}, {neg(3)}}));
  expect_matches_oracle(Cnf(3, {{pos(1), pos(2), pos(3)}, {neg(1)}, {neg(2)}}));
}

TEST(Cdcl, TriviallyUnsatFlag) {
  auto r = parse_dimacs("p cnf 2 2\n1 2 0\n0\n");
  EXPECT_EQ(CdclSolver(r.cnf).solve().kind, OutcomeKind::Unsat);
}

TEST(Cdcl, Pigeonhole) {
  for (unsigned holes = 1; holes <= 4; ++holes) {
    Cnf php = gt::pigeonhole(holes);
    EXPECT_EQ(CdclSolver(php).solve().kind, OutcomeKind::Unsat) << holes;
  }
  // Dropping one pigeon makes it satisfiable.
  Cnf php = gt::pigeonhole(4);
  std::vector<Clause> clauses(php.clauses().begin() + 1, php.clauses().end());
  Cnf relaxed(php.num_vars(), clauses);
  SolveOutcome out = CdclSolver(relaxed).solve();
  ASSERT_EQ(out.kind, OutcomeKind::Sat);
  EXPECT_TRUE(verify_model(relaxed, out.model));
}

TEST(Cdcl, RandomThreeSatAgainstOracle) {
  Rng rng(4260);
  for (int i = 0; i < 300; ++i) {
    Var n = 3 + static_cast<Var>(rng.below(16));
    expect_matches_oracle(gt::random_ksat(rng, n, 4.26));
  }
}

TEST(Cdcl, MixedWidthAgainstOracle) {
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    Var n = 1 + static_cast<Var>(rng.below(14));
    expect_matches_oracle(gt::random_cnf(rng, n, rng.below(6 * n), 1, 6));
  }
}

TEST(Cdcl, PropagationMatchesNaiveFixpoint) {
  Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    Var n = 4 + static_cast<Var>(rng.below(20));
    Cnf cnf = gt::random_cnf(rng, n, 1 + rng.below(4 * n), 1, 4);
    CdclSolver s(cnf);
    std::vector<int> naive(n, -1);
    bool naive_ok = gt::naive_propagate(cnf, naive);
    auto conflict = s.propagate();
    ASSERT_EQ(!naive_ok, conflict.has_value() || !s.consistent());
    if (!naive_ok) continue;
    for (int step = 0; step < 5; ++step) {
      for (Var v = 1; v <= n; ++v) {
        auto val = s.value(v);
        ASSERT_EQ(val.has_value(), naive[v - 1] >= 0) << "var " << v;
        if (val) ASSERT_EQ(*val, naive[v - 1] == 1);
      }
      std::vector<Var> free;
      for (Var v = 1; v <= n; ++v)
        if (naive[v - 1] < 0) free.push_back(v);
      if (free.empty()) break;
      Literal d{free[rng.below(free.size())], rng.below(2) == 1};
      s.decide(d);
      EXPECT_EQ(s.decision_level(), static_cast<unsigned>(step + 1));
      naive[d.var - 1] = d.negated ? 0 : 1;
      naive_ok = gt::naive_propagate(cnf, naive);
      conflict = s.propagate();
      ASSERT_EQ(!naive_ok, conflict.has_value());
      if (conflict) {
        // The reported clause is falsified under the current trail.
        for (Literal l : *conflict) {
          auto val = s.value(l.var);
          ASSERT_TRUE(val.has_value());
          EXPECT_FALSE(l.satisfied_by(*val));
        }
        break;
      }
    }
  }
}

TEST(Cdcl, LearnedClausesAreImplied) {
  Rng rng(3);
  int learned = 0;
  for (int i = 0; i < 60; ++i) {
    Var n = 10 + static_cast<Var>(rng.below(8));
    Cnf cnf = gt::random_ksat(rng, n, 4.3);
    SolverOptions opts;
    opts.record_learned = true;
    CdclSolver s(cnf, opts);
    s.solve();
    for (const Clause& c : s.learned_log()) {
      ++learned;
      std::vector<Literal> negation;
      for (Literal l : c) negation.push_back(~l);
      // phi AND not(C) must be unsatisfiable.
      std::vector<Clause> clauses = cnf.clauses();
      for (Literal l : negation) clauses.push_back({l});
      ASSERT_FALSE(gt::brute_force_sat(Cnf(n, clauses)));
    }
  }
  EXPECT_GT(learned, 50);
}

TEST(Cdcl, DeadlineAndStopToken) {
  Cnf hard = gt::pigeonhole(10);
  auto t0 = Clock::now();
  SolveOutcome out = CdclSolver(hard).solve(Clock::now() + 100ms);
  EXPECT_EQ(out.kind, OutcomeKind::Timeout);
  EXPECT_LT(Clock::now() - t0, 2s);

  std::stop_source src;
  std::jthread stopper([&] {
    std::this_thread::sleep_for(50ms);
    src.request_stop();
  });
  t0 = Clock::now();
  out = CdclSolver(hard).solve(std::nullopt, src.get_token());
  EXPECT_EQ(out.kind, OutcomeKind::Unknown);
  EXPECT_LT(Clock::now() - t0, 2s);

  EXPECT_EQ(solve_cnf(hard, 50ms).kind, OutcomeKind::Timeout);
}

TEST(Cdcl, StatsAndDecisionPriority) {
  Rng rng(8);
  Cnf cnf = gt::random_ksat(rng, 60, 4.0);
  SolverStats stats;
  SolveOutcome out = solve_cnf(cnf, std::nullopt, {}, &stats);
  EXPECT_NE(out.kind, OutcomeKind::Timeout);
  EXPECT_GT(stats.propagations, 0u);
  EXPECT_GT(stats.decisions, 0u);

  SolverOptions opts;
  opts.decision_priority.assign(60, 0.0);
  opts.decision_priority[41] = 10.0;
  CdclSolver s(cnf, opts);
  EXPECT_EQ(s.solve().kind, out.kind);
}

TEST(Cdcl, Deterministic) {
  Rng rng(12);
  Cnf cnf = gt::random_ksat(rng, 80, 4.26);
  CdclSolver a(cnf);
  CdclSolver b(cnf);
  SolveOutcome oa = a.solve();
  SolveOutcome ob = b.solve();
  EXPECT_EQ(oa.kind, ob.kind);
  EXPECT_EQ(oa.model, ob.model);
  EXPECT_EQ(a.stats().conflicts, b.stats().conflicts);
}
