#pragma once

#include <optional>
#include <string>

#include "grad_engine.hpp"
#include "orchestrator.hpp"
#include "sat_pool.hpp"

namespace galoissat {

enum class RunMode { Sat, Unsat, Auto };

std::string_view run_mode_name(RunMode m);
std::optional<RunMode> parse_run_mode(std::string_view s);

struct PipelineConfig {
  TrainConfig train;
  std::size_t pool_size = 1;
  double rho = 0.0005;
  unsigned depth = 3;
  RunMode mode = RunMode::Auto;
  unsigned workers = 1;
  double timeout_s = 60.0;
  /// Run every augmented candidate to completion (pool-quality statistics).
  bool exhaustive = false;
};

/// Seed of the candidate pool, derived from the training seed.
std::uint64_t pool_seed(std::uint64_t train_seed);

struct PipelineResult {
  SolveOutcome outcome;
  std::optional<TrainResult> training;
  std::optional<RunResult> run;
  std::vector<Var> branch_vars;
  double train_s = 0;
  double total_s = 0;
  /// Training clause evaluations plus backend work.
  std::uint64_t work = 0;
  std::string note;
};

/// Normalize, train, derive the job sets for the chosen mode, and run them.
/// The timeout covers the whole flow including training. Sat models are
/// verified against `cnf` before being returned.
PipelineResult run_pipeline(const Cnf& cnf, const PipelineConfig& cfg, Backend& backend);

}  // namespace galoissat
