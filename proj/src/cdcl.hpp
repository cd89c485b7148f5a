#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stop_token>
#include <vector>

#include "cnf.hpp"
#include "outcome.hpp"

namespace galoissat {

struct SolverOptions {
  double var_decay = 0.95;
  double clause_decay = 0.999;
  /// Conflicts per Luby unit between restarts.
  unsigned restart_base = 100;
  /// Learned clauses of LBD <= this are never deleted.
  unsigned keep_lbd = 2;
  /// Keep a copy of every learned clause (tests check entailment on it).
  bool record_learned = false;
  /// Optional initial activity per variable (index v-1); higher is decided first.
  std::vector<double> decision_priority;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learned = 0;
  std::uint64_t deleted = 0;
};

/// Conflict-driven clause learning solver: two watched literals, first-UIP
/// learning with local minimization, VSIDS with phase saving, Luby restarts
/// and LBD-guarded clause deletion. Single-threaded; one instance per job.
class CdclSolver {
 public:
  explicit CdclSolver(const Cnf& cnf, SolverOptions opts = {});
  ~CdclSolver();
  CdclSolver(const CdclSolver&) = delete;
  CdclSolver& operator=(const CdclSolver&) = delete;

  /// Sat carries a model over all num_vars variables. Timeout once the
  /// deadline passes, Unknown when `stop` is signalled.
  SolveOutcome solve(std::optional<Clock::time_point> deadline = std::nullopt,
                     std::stop_token stop = {});

  // Low-level access for testing the propagation engine.

  /// False once a conflict at decision level 0 has been found.
  bool consistent() const;
  /// Opens a new decision level and assigns `lit` true. The variable must be
  /// unassigned.
  void decide(Literal lit);
  /// Propagates to fixpoint. Returns the falsified clause on conflict.
  std::optional<Clause> propagate();
  std::optional<bool> value(Var v) const;
  unsigned decision_level() const;

  const std::vector<Clause>& learned_log() const;
  const SolverStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience: solve with a relative time budget.
SolveOutcome solve_cnf(const Cnf& cnf, std::optional<Clock::duration> budget = std::nullopt,
                       std::stop_token stop = {}, SolverStats* stats = nullptr);

}  // namespace galoissat
