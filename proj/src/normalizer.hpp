#pragma once

#include "cnf.hpp"

namespace galoissat {

class UnsatAtParse : public std::runtime_error {
 public:
  UnsatAtParse() : std::runtime_error("formula contains an empty clause (UNSAT at parse)") {}
};

/// Fixed-width rewrite of a formula. Variables 1..original_vars are the input
/// variables, the rest are chain auxiliaries allocated clause by clause.
struct NormalizedCnf {
  Cnf cnf;
  Var original_vars = 0;
  Var total_vars = 0;
  unsigned width = 3;
  /// clause_origin[i] is the index of the input clause that produced clause i.
  std::vector<std::size_t> clause_origin;
};

/// Chain-encodes clauses longer than k and pads shorter ones by repeating the
/// last literal, so every output clause has exactly k literals.
///
/// A long clause l_1..l_u becomes
///   (l_1 .. l_{k-1} f_1) (~f_1 l_k .. l_{2k-3} f_2) ... (~f_last rest..)
/// where each middle chunk carries k-2 input literals. k must be >= 2, and
/// >= 3 whenever some clause is longer than k (a chain cannot advance with
/// zero payload literals). Throws UnsatAtParse for a trivially-unsat input.
NormalizedCnf normalize(const Cnf& cnf, unsigned k = 3);

/// Drops auxiliary variables. Throws std::invalid_argument on length mismatch.
Assignment project_assignment(const NormalizedCnf& norm, const Assignment& full);

/// Extends a model of the original formula to the normalized one: each f_j is
/// true iff every input literal placed before its chunk is false.
Assignment lift_assignment(const NormalizedCnf& norm, const Cnf& original,
                           const Assignment& model);

}  // namespace galoissat
