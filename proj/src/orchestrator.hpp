#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <vector>

#include "backend.hpp"
#include "unsat_cubes.hpp"

namespace galoissat {

enum class JobMode { SatPool, UnsatCubes };

std::string_view job_mode_name(JobMode m);

struct JobMeta {
  /// SatPool: candidate number (0 = anchor). UnsatCubes: cube index alpha.
  std::size_t index = 0;
  /// Literals appended to the original formula for this job.
  std::vector<Literal> units;
};

/// Jobs derived from one original formula. In SatPool mode job 0 must be
/// the unaugmented formula.
struct JobSet {
  JobMode mode = JobMode::SatPool;
  std::vector<Cnf> jobs;
  std::vector<JobMeta> meta;
};

JobSet make_sat_jobset(const Cnf& original, std::vector<Cnf> jobs,
                       std::vector<std::vector<Literal>> partials);
JobSet make_cube_jobset(const Cnf& original, std::span<const Var> branch_vars);

struct ExecOptions {
  Clock::duration timeout = std::chrono::seconds(60);
  unsigned workers = 1;
  /// Let every job run to completion (candidate-quality evaluation). The
  /// folded outcome is unchanged; only early cancellation is disabled.
  bool exhaustive = false;
  /// External cancellation, e.g. from an enclosing deadline.
  std::stop_token stop;
};

struct JobLogEntry {
  JobMode mode = JobMode::SatPool;
  std::size_t job = 0;
  JobMeta meta;
  OutcomeKind outcome = OutcomeKind::Unknown;
  double start_s = 0;
  double wall_s = 0;
  std::uint64_t work = 0;
  std::string note;
};

struct RunResult {
  SolveOutcome outcome;
  std::vector<JobLogEntry> log;  // in schedule order
  std::optional<JobMode> decided_by;
  std::optional<std::size_t> decided_job;
  double wall_s = 0;
  /// Work of jobs up to the deciding one in schedule order (all jobs when
  /// undecided). Reproducible with a single worker.
  std::uint64_t work = 0;
};

/// A backend returned a model that does not satisfy the original formula.
class ModelVerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Runs one job set on a worker pool and folds the outcomes: SatPool is
/// existential (first Sat wins, anchor Unsat decides Unsat), UnsatCubes is
/// universal (Unsat only when every cube is Unsat). At most `workers` jobs run
/// at once; the rest queue in job order.
RunResult run_jobset(const Cnf& original, const JobSet& set, Backend& backend,
                     const ExecOptions& opts);

/// Runs a SatPool and an UnsatCubes set side by side on one worker pool (jobs
/// interleaved) and returns the first decisive outcome of either fold.
RunResult run_combined(const Cnf& original, const JobSet& sat, const JobSet& unsat,
                       Backend& backend, const ExecOptions& opts);

}  // namespace galoissat
