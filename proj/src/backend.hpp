#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "outcome.hpp"

namespace galoissat {

struct JobReport {
  SolveOutcome outcome;
  /// Deterministic effort measure (propagations for the internal solver).
  std::uint64_t work = 0;
  std::string note;
};

/// A complete solver the orchestrator can run jobs on. Implementations must
/// be callable concurrently from several worker threads. `job_index` is the
/// job's position in the run's schedule, which equals the job number when a
/// single job set runs.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual JobReport run(const Cnf& cnf, std::size_t job_index, Clock::time_point deadline,
                        std::stop_token stop) = 0;
  virtual std::string name() const = 0;
};

class InternalBackend final : public Backend {
 public:
  JobReport run(const Cnf& cnf, std::size_t job_index, Clock::time_point deadline,
                std::stop_token stop) override;
  std::string name() const override { return "internal"; }
};

struct ExternalResult {
  SolveOutcome outcome;
  int exit_code = -1;
  std::string raw_output;
  std::string note;
};

/// Runs `binary [args...] <tmp.cnf>` and decodes SAT-competition output.
/// The process is killed (with its process group) on deadline or stop; the
/// temporary file is removed on every path.
ExternalResult run_external(const std::string& binary, const std::vector<std::string>& args,
                            const Cnf& cnf, Clock::time_point deadline, std::stop_token stop);

/// Decodes `s` / `v` lines plus the exit code. Exposed for tests.
ExternalResult decode_competition_output(const std::string& output, int exit_code, Var num_vars);

class ExternalBackend final : public Backend {
 public:
  ExternalBackend(std::string binary, std::vector<std::string> args = {})
      : binary_(std::move(binary)), args_(std::move(args)) {}
  JobReport run(const Cnf& cnf, std::size_t job_index, Clock::time_point deadline,
                std::stop_token stop) override;
  std::string name() const override { return "external:" + binary_; }

 private:
  std::string binary_;
  std::vector<std::string> args_;
};

/// Scripted backend for orchestration tests: each job index maps to an outcome
/// and a delay. The delay is slept in `poll` increments, checking the stop
/// token and deadline between increments.
class StubBackend final : public Backend {
 public:
  struct Script {
    OutcomeKind kind = OutcomeKind::Unknown;
    Clock::duration delay{};
    /// Model to report for Sat; when absent the job formula is solved with
    /// the internal solver to obtain one.
    std::optional<Assignment> model;
  };

  StubBackend();
  explicit StubBackend(Script fallback, Clock::duration poll = std::chrono::milliseconds(5))
      : fallback_(std::move(fallback)), poll_(poll) {}

  void script(std::size_t job_index, Script s) { scripts_[job_index] = std::move(s); }

  JobReport run(const Cnf& cnf, std::size_t job_index, Clock::time_point deadline,
                std::stop_token stop) override;
  std::string name() const override { return "stub"; }

  Clock::duration poll_granularity() const { return poll_; }
  unsigned max_concurrency() const { return max_running_.load(); }
  unsigned started() const { return started_.load(); }

  struct Exit {
    std::size_t job_index;
    Clock::time_point at;
    bool cancelled;
    /// When the stop token fired, if it did while the job was running.
    std::optional<Clock::time_point> stop_requested_at;
  };
  std::vector<Exit> exits() const;

 private:
  std::map<std::size_t, Script> scripts_;
  Script fallback_;
  Clock::duration poll_;
  std::atomic<unsigned> running_{0};
  std::atomic<unsigned> max_running_{0};
  std::atomic<unsigned> started_{0};
  mutable std::mutex mu_;
  std::vector<Exit> exits_;
};

}  // namespace galoissat
