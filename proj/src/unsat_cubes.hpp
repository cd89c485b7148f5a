#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cnf.hpp"
#include "grad_engine.hpp"

namespace galoissat {

inline constexpr unsigned kMaxCubeDepth = 16;

/// One Shannon branch. Bit r of `index` is the polarity of assumptions[r]
/// (1 = positive); assumptions follow the ascending branch-variable order.
struct Cube {
  std::uint32_t index = 0;
  std::vector<Literal> assumptions;
};

/// The d original variables whose noise-free class confidence is lowest,
/// ties by ascending index, returned sorted ascending.
std::vector<Var> select_branch_vars(std::span<const LogitPair> theta_sel, Var n, unsigned d,
                                    double tau);

std::vector<Cube> enumerate_cubes(std::span<const Var> vars);

/// One formula per cube, in cube-index order: phi plus the cube's units.
std::vector<Cnf> build_cubes(const Cnf& cnf, std::span<const Var> vars);

}  // namespace galoissat
