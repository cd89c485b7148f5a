#include "unsat_cubes.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace galoissat {

std::vector<Var> select_branch_vars(std::span<const LogitPair> theta_sel, Var n, unsigned d,
                                    double tau) {
  if (n > theta_sel.size()) throw std::invalid_argument("more original variables than logit rows");
  if (d < 1 || d > std::min<Var>(n, kMaxCubeDepth))
    throw std::invalid_argument("branch depth " + std::to_string(d) + " outside [1, min(n, " +
                                std::to_string(kMaxCubeDepth) + ")]");
  std::vector<double> conf(n);
  for (Var v = 0; v < n; ++v) {
    SoftSample s = gumbel_softmax_sample(theta_sel[v], {0.0, 0.0}, tau);
    conf[v] = std::max(s.y[0], s.y[1]);
  }
  std::vector<Var> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Var a, Var b) { return conf[a] < conf[b]; });
  std::vector<Var> out(order.begin(), order.begin() + d);
  for (Var& v : out) ++v;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cube> enumerate_cubes(std::span<const Var> vars) {
  if (vars.empty() || vars.size() > kMaxCubeDepth)
    throw std::invalid_argument("cube depth must be in [1, 16]");
  if (std::set<Var>(vars.begin(), vars.end()).size() != vars.size())
    throw std::invalid_argument("branch variables must be distinct");
  const std::uint32_t count = 1u << vars.size();
  std::vector<Cube> cubes(count);
  for (std::uint32_t alpha = 0; alpha < count; ++alpha) {
    cubes[alpha].index = alpha;
    for (std::size_t r = 0; r < vars.size(); ++r)
      cubes[alpha].assumptions.push_back(((alpha >> r) & 1u) ? pos(vars[r]) : neg(vars[r]));
  }
  return cubes;
}

std::vector<Cnf> build_cubes(const Cnf& cnf, std::span<const Var> vars) {
  std::vector<Cnf> out;
  for (const Cube& c : enumerate_cubes(vars)) out.push_back(augment_with_units(cnf, c.assumptions));
  return out;
}

}  // namespace galoissat
