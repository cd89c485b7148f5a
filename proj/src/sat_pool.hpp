#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cnf.hpp"
#include "grad_engine.hpp"

namespace galoissat {

struct Candidate {
  Assignment assignment;           // original variables only
  std::vector<double> confidence;  // max class probability per variable, in [0.5, 1]
};

struct PoolConfig {
  std::size_t pool_size = 1;
  double confidence_fraction = 0.0005;
  double temperature = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draws pool_size perturbed samples of theta_sel. Candidate k uses substream
/// k of cfg.seed, so the pool does not depend on evaluation order.
std::vector<Candidate> sample_pool(std::span<const LogitPair> theta_sel, Var n,
                                   const PoolConfig& cfg, unsigned threads = 1);

/// max(1, ceil(rho * n)) for the partial-assignment size.
std::size_t partial_size(std::size_t n, double rho);

/// Highest-confidence variables (ties by ascending index) as literals agreeing
/// with the candidate assignment.
std::vector<Literal> extract_partial(const Candidate& c, double rho);

/// Job 0 is the original formula, job k is the formula with candidate k's
/// partial assignment appended as unit clauses.
std::vector<Cnf> build_sat_jobs(const Cnf& cnf, std::span<const Candidate> pool, double rho);

}  // namespace galoissat
