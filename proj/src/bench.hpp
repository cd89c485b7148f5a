#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pipeline.hpp"

namespace galoissat {

/// How record wall times are measured. Work reports deterministic effort
/// (one unit per clause evaluation or propagation, counted as 1 us) so
/// reports are byte-stable across runs.
enum class TimeSource { Wall, Work };

inline constexpr double kWorkUnitSeconds = 1e-6;

struct PoolBreakdown {
  std::size_t total = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t timeout = 0;
  std::size_t unknown = 0;

  void add(OutcomeKind k);
  double fraction(OutcomeKind k) const;
};

struct Par2Record {
  std::string instance;
  OutcomeKind outcome = OutcomeKind::Unknown;
  double wall_time = 0;
  double par2 = 0;
  double solve_time = 0;  // excludes training
  PoolBreakdown pool;
  std::string note;
};

struct BenchReport {
  double timeout_s = 0;
  std::vector<Par2Record> records;
  double avg_par2 = 0;
  std::size_t solved_count = 0;
  std::vector<std::pair<double, std::size_t>> cumulative_curve;
  PoolBreakdown pool_breakdown;
  bool wall_time_comparable = true;
};

/// wall_time if solved within the limit, else 2 * timeout.
double par2_score(OutcomeKind outcome, double wall_time, double timeout_s);

/// Mean of record par2 values. Throws std::invalid_argument when empty.
double compute_par2(std::span<const Par2Record> records);

/// Step points (time, solved so far) over solved records, closed by a point
/// at 2T carrying the final count.
std::vector<std::pair<double, std::size_t>> cumulative_curve(std::span<const Par2Record> records,
                                                             double timeout_s);

/// Breakdown of the augmented (non-anchor) SatPool jobs of one run.
PoolBreakdown pool_breakdown(const RunResult& run);

struct BenchConfig {
  PipelineConfig pipeline;
  TimeSource time_source = TimeSource::Wall;
  /// PAR-2 from the solver stage only (training time excluded).
  bool cpu_only_par2 = false;
  /// Re-run every augmented candidate to completion for the pool breakdown.
  bool pool_eval = false;
  /// Instances solved concurrently. Values above 1 make wall times
  /// incomparable and are marked as such in the report.
  unsigned instance_jobs = 1;
  std::string labels_path;
  std::string csv_out;
  std::string json_out;
};

/// Carries the completed report alongside the mismatch list.
class LabelMismatch : public std::runtime_error {
 public:
  LabelMismatch(const std::string& msg, BenchReport r)
      : std::runtime_error(msg), report(std::move(r)) {}
  BenchReport report;
};

/// `<file> <sat|unsat>` per line; blank lines and `#` comments ignored.
std::vector<std::pair<std::string, bool>> read_labels(const std::string& path);

/// *.cnf and *.dimacs files under dir, sorted by name.
std::vector<std::string> list_instances(const std::string& dir);

/// Runs the pipeline on every instance, flushing the CSV/JSON reports after
/// each one. Throws LabelMismatch (after writing the reports) when an outcome
/// contradicts a supplied label.
BenchReport run_bench(const std::string& dir, const BenchConfig& cfg, Backend& backend);

BenchReport assemble_report(std::vector<Par2Record> records, double timeout_s);

/// instance,outcome,wall_time_s,par2_s
std::string report_csv(const BenchReport& report);
std::string report_json(const BenchReport& report);

}  // namespace galoissat
