#include "sat_pool.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace galoissat {

void PoolConfig::validate() const {
  if (pool_size < 1) throw std::invalid_argument("pool size must be >= 1");
  if (!(confidence_fraction > 0.0 && confidence_fraction <= 1.0))
    throw std::invalid_argument("confidence fraction must lie in (0, 1]");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
}

std::vector<Candidate> sample_pool(std::span<const LogitPair> theta_sel, Var n,
                                   const PoolConfig& cfg, unsigned threads) {
  cfg.validate();
  if (n > theta_sel.size())
    throw std::invalid_argument("more original variables than logit rows");
  std::vector<Candidate> pool(cfg.pool_size);
  parallel_for(cfg.pool_size, threads, [&](std::size_t k) {
    Rng rng = Rng::stream(cfg.seed, k);
    Candidate c{Assignment(n), std::vector<double>(n)};
    // Noise is drawn for every row so the stream layout matches training's.
    for (std::size_t v = 0; v < theta_sel.size(); ++v) {
      double g0 = rng.gumbel();
      double g1 = rng.gumbel();
      if (v >= n) continue;
      SoftSample s = gumbel_softmax_sample(theta_sel[v], {g0, g1}, cfg.temperature);
      c.assignment.set(static_cast<Var>(v + 1), s.hard);
      c.confidence[v] = std::max(s.y[0], s.y[1]);
    }
    pool[k] = std::move(c);
  });
  return pool;
}

std::size_t partial_size(std::size_t n, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  auto s = static_cast<std::size_t>(std::ceil(rho * static_cast<double>(n)));
  return std::min(n, std::max<std::size_t>(1, s));
}

std::vector<Literal> extract_partial(const Candidate& c, double rho) {
  const std::size_t n = c.assignment.size();
  if (n == 0) throw std::invalid_argument("candidate has an empty assignment");
  if (c.confidence.size() != n) throw std::invalid_argument("confidence length mismatch");
  std::size_t take = partial_size(n, rho);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return c.confidence[a] > c.confidence[b];
  });
  std::vector<Literal> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    Var v = static_cast<Var>(order[i] + 1);
    out.push_back(c.assignment.value(v) ? pos(v) : neg(v));
  }
  return out;
}

std::vector<Cnf> build_sat_jobs(const Cnf& cnf, std::span<const Candidate> pool, double rho) {
  std::vector<Cnf> jobs;
  jobs.reserve(pool.size() + 1);
  jobs.push_back(cnf);
  for (const Candidate& c : pool) {
    if (c.assignment.size() != cnf.num_vars())
      throw std::invalid_argument("candidate does not match the formula's variable count");
    std::vector<Literal> units = extract_partial(c, rho);
    jobs.push_back(augment_with_units(cnf, units));
  }
  return jobs;
}

}  // namespace galoissat
