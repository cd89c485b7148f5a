#include <gtest/gtest.h>

#include "oracle.hpp"
#include "sat_pool.hpp"

using namespace galoissat;

TEST(SamplePool, ZeroLogitsGiveFairCoinsAndKnownMeanConfidence) {
  // sigma of a logistic variate is uniform, so max(U, 1 - U) has mean 0.75.
  std::vector<LogitPair> theta(10, LogitPair{0.0, 0.0});
  PoolConfig cfg;
  cfg.pool_size = 1000;
  cfg.seed = 3;
  auto pool = sample_pool(theta, 10, cfg);
  ASSERT_EQ(pool.size(), 1000u);
  double conf = 0;
  double ones = 0;
  for (const auto& c : pool)
    for (Var v = 1; v <= 10; ++v) {
      conf += c.confidence[v - 1];
      ones += c.assignment.value(v);
      EXPECT_GE(c.confidence[v - 1], 0.5);
      EXPECT_LE(c.confidence[v - 1], 1.0);
    }
  EXPECT_NEAR(conf / 10000, 0.75, 0.02);
  EXPECT_NEAR(ones / 10000, 0.5, 0.02);
  EXPECT_NE(pool[0].assignment, pool[1].assignment);
}

TEST(SamplePool, SaturatedLogits) {
  std::vector<LogitPair> theta(6, LogitPair{0.0, 20.0});
  PoolConfig cfg;
  cfg.pool_size = 20;
  for (const auto& c : sample_pool(theta, 6, cfg)) {
    EXPECT_EQ(c.assignment, Assignment(6, true));
    for (double x : c.confidence) EXPECT_GT(x, 0.99);
  }
}

TEST(SamplePool, RestrictsToOriginalVariables) {
  std::vector<LogitPair> theta(8, LogitPair{0.0, 1.0});
  PoolConfig cfg;
  auto pool = sample_pool(theta, 5, cfg);
  EXPECT_EQ(pool[0].assignment.size(), 5u);
  EXPECT_EQ(pool[0].confidence.size(), 5u);
  EXPECT_THROW(sample_pool(theta, 9, cfg), std::invalid_argument);
}

TEST(SamplePool, DeterministicAndOrderIndependent) {
  Rng rng(1);
  std::vector<LogitPair> theta(30);
  for (auto& t : theta) t = {rng.normal(), rng.normal()};
  PoolConfig cfg;
  cfg.pool_size = 17;
  cfg.seed = 99;
  auto a = sample_pool(theta, 25, cfg, 1);
  auto b = sample_pool(theta, 25, cfg, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].assignment, b[k].assignment);
    EXPECT_EQ(a[k].confidence, b[k].confidence);
  }
  // A smaller pool is a prefix of a larger one.
  cfg.pool_size = 5;
  auto c = sample_pool(theta, 25, cfg);
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(c[k].assignment, a[k].assignment);
}

TEST(PoolConfig, Validation) {
  PoolConfig cfg;
  cfg.pool_size = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.confidence_fraction = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.confidence_fraction = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(PartialSize, FloorAndCeiling) {
  EXPECT_EQ(partial_size(100, 0.0005), 1u);
  EXPECT_EQ(partial_size(4, 0.5), 2u);
  EXPECT_EQ(partial_size(10, 1.0), 10u);
  EXPECT_EQ(partial_size(10000, 0.0005), 5u);
  EXPECT_EQ(partial_size(10001, 0.0005), 6u);
  EXPECT_THROW(partial_size(10, 0.0), std::invalid_argument);
}

TEST(ExtractPartial, HandSortedExample) {
  Candidate c{Assignment(std::vector<std::uint8_t>{1, 0, 0, 1}), {0.9, 0.6, 0.95, 0.7}};
  EXPECT_EQ(extract_partial(c, 0.5), (std::vector<Literal>{neg(3), pos(1)}));
  EXPECT_EQ(extract_partial(c, 1.0), (std::vector<Literal>{neg(3), pos(1), pos(4), neg(2)}));
}

TEST(ExtractPartial, TiesByAscendingIndex) {
  Candidate c{Assignment(std::vector<std::uint8_t>{1, 1, 0, 0}), {0.8, 0.9, 0.9, 0.8}};
  EXPECT_EQ(extract_partial(c, 0.75), (std::vector<Literal>{pos(2), neg(3), pos(1)}));
  EXPECT_THROW(extract_partial(Candidate{}, 0.5), std::invalid_argument);
}

TEST(BuildSatJobs, AnchorFirstThenAugmented) {
  Cnf phi(3, {{pos(1), pos(2)}, {neg(2), pos(3)}});
  std::vector<Candidate> pool = {
      {Assignment(std::vector<std::uint8_t>{1, 0, 1}), {0.9, 0.6, 0.7}},
      {Assignment(std::vector<std::uint8_t>{0, 1, 1}), {0.5, 0.99, 0.7}}};
  auto jobs = build_sat_jobs(phi, pool, 0.3);
  ASSERT_EQ(jobs.size(), 3u);
  EXPECT_EQ(jobs[0], phi);
  EXPECT_EQ(jobs[1].clauses().back(), Clause{pos(1)});
  EXPECT_EQ(jobs[2].clauses().back(), Clause{pos(2)});
}

TEST(BuildSatJobs, ModelCandidateWithFullRhoYieldsThatModel) {
  Rng rng(44);
  int checked = 0;
  while (checked < 30) {
    Var n = 3 + static_cast<Var>(rng.below(13));
    Cnf phi = galoissat::testing::random_ksat(rng, n, 3.5);
    auto model = galoissat::testing::brute_force(phi);
    if (!model) {
      // Augmentation cannot create models.
      Candidate c{Assignment(n), std::vector<double>(n, 0.7)};
      for (const Cnf& job : build_sat_jobs(phi, std::vector<Candidate>{c}, 0.3))
        EXPECT_FALSE(galoissat::testing::brute_force_sat(job));
      continue;
    }
    ++checked;
    Candidate c{*model, std::vector<double>(n, 0.8)};
    auto jobs = build_sat_jobs(phi, std::vector<Candidate>{c}, 1.0);
    auto found = galoissat::testing::brute_force(jobs[1]);
    ASSERT_TRUE(found);
    EXPECT_EQ(*found, *model);
  }
}
