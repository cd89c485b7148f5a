#include "orchestrator.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>

namespace galoissat {

std::string_view job_mode_name(JobMode m) {
  return m == JobMode::SatPool ? "sat_pool" : "unsat_cubes";
}

JobSet make_sat_jobset(const Cnf& original, std::vector<Cnf> jobs,
                       std::vector<std::vector<Literal>> partials) {
  if (jobs.empty() || !(jobs.front() == original))
    throw std::invalid_argument("SatPool job 0 must be the original formula");
  if (partials.size() + 1 != jobs.size())
    throw std::invalid_argument("one partial assignment per augmented job expected");
  JobSet set;
  set.mode = JobMode::SatPool;
  set.meta.push_back({0, {}});
  for (std::size_t k = 0; k < partials.size(); ++k) set.meta.push_back({k + 1, std::move(partials[k])});
  set.jobs = std::move(jobs);
  return set;
}

JobSet make_cube_jobset(const Cnf& original, std::span<const Var> branch_vars) {
  JobSet set;
  set.mode = JobMode::UnsatCubes;
  for (Cube& c : enumerate_cubes(branch_vars)) {
    set.jobs.push_back(augment_with_units(original, c.assumptions));
    set.meta.push_back({c.index, std::move(c.assumptions)});
  }
  return set;
}

namespace {

struct Message {
  std::size_t slot;
  JobReport report;
  double start_s;
  double wall_s;
};

class Channel {
 public:
  void push(Message m) {
    {
      std::lock_guard lk(mu_);
      queue_.push_back(std::move(m));
    }
    cv_.notify_one();
  }

  std::optional<Message> pop_until(std::optional<Clock::time_point> until) {
    std::unique_lock lk(mu_);
    auto ready = [&] { return !queue_.empty(); };
    if (until) {
      if (!cv_.wait_until(lk, *until, ready)) return std::nullopt;
    } else {
      cv_.wait(lk, ready);
    }
    Message m = std::move(queue_.front());
    queue_.pop_front();
    return m;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Message> queue_;
};

class Fold {
 public:
  Fold(const Cnf& original, const JobSet& set) : original_(original), set_(set) {}

  std::optional<SolveOutcome> accept(std::size_t job, SolveOutcome out) {
    ++finished_;
    switch (out.kind) {
      case OutcomeKind::Sat: return verified_sat(job, std::move(out.model));
      case OutcomeKind::Unsat:
        ++unsat_;
        if (set_.mode == JobMode::SatPool && job == 0) return SolveOutcome::unsat();
        if (set_.mode == JobMode::UnsatCubes && unsat_ == set_.jobs.size())
          return SolveOutcome::unsat();
        break;
      case OutcomeKind::Timeout:
        ++timeouts_;
        break;
      case OutcomeKind::Unknown: break;
    }
    return std::nullopt;
  }

  /// Outcome once every job has reported without a decision.
  OutcomeKind undecided() const {
    if (set_.mode == JobMode::UnsatCubes) return OutcomeKind::Timeout;
    return timeouts_ > 0 ? OutcomeKind::Timeout : OutcomeKind::Unknown;
  }

 private:
  SolveOutcome verified_sat(std::size_t job, Assignment model) {
    if (model.size() != original_.num_vars())
      throw ModelVerificationError(std::string(job_mode_name(set_.mode)) + " job " +
                                   std::to_string(job) + " returned a model of the wrong size");
    if (set_.mode == JobMode::UnsatCubes)
      for (Literal l : set_.meta[job].units) model.set(l.var, !l.negated);
    if (!verify_model(original_, model))
      throw ModelVerificationError(std::string(job_mode_name(set_.mode)) + " job " +
                                   std::to_string(job) +
                                   " returned a model that falsifies the original formula");
    return SolveOutcome::sat(std::move(model));
  }

  const Cnf& original_;
  const JobSet& set_;
  std::size_t finished_ = 0;
  std::size_t unsat_ = 0;
  std::size_t timeouts_ = 0;
};

double seconds_since(Clock::time_point start, Clock::time_point t) {
  return std::chrono::duration<double>(t - start).count();
}

RunResult execute(const Cnf& original, const std::vector<const JobSet*>& groups,
                  Backend& backend, const ExecOptions& opts) {
  if (opts.workers < 1) throw std::invalid_argument("worker count must be >= 1");
  struct Slot {
    std::size_t group;
    std::size_t job;
  };
  std::vector<Slot> schedule;
  std::size_t longest = 0;
  for (const JobSet* g : groups) {
    if (g->jobs.empty()) throw std::invalid_argument("job set is empty");
    if (g->meta.size() != g->jobs.size()) throw std::invalid_argument("job metadata size mismatch");
    longest = std::max(longest, g->jobs.size());
  }
  for (std::size_t j = 0; j < longest; ++j)
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (j < groups[g]->jobs.size()) schedule.push_back({g, j});

  std::vector<Fold> folds;
  for (const JobSet* g : groups) folds.emplace_back(original, *g);

  RunResult result;
  result.log.resize(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const JobSet& g = *groups[schedule[i].group];
    result.log[i].mode = g.mode;
    result.log[i].job = schedule[i].job;
    result.log[i].meta = g.meta[schedule[i].job];
  }

  const Clock::time_point start = Clock::now();
  const Clock::time_point deadline = start + opts.timeout;
  std::stop_source stop;
  std::stop_callback forward_stop(opts.stop, [&] { stop.request_stop(); });
  Channel channel;
  std::atomic<std::size_t> next{0};
  std::optional<SolveOutcome> decision;
  std::exception_ptr failure;
  std::size_t decided_slot = schedule.size();

  {
    std::vector<std::jthread> workers;
    const std::size_t count = std::min<std::size_t>(opts.workers, schedule.size());
    for (std::size_t w = 0; w < count; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= schedule.size()) return;
          const Slot slot = schedule[i];
          const Cnf& job = groups[slot.group]->jobs[slot.job];
          Clock::time_point t0 = Clock::now();
          JobReport rep;
          if (stop.stop_requested()) {
            rep.outcome = SolveOutcome::unknown();
            rep.note = "cancelled before start";
          } else if (t0 >= deadline) {
            rep.outcome = SolveOutcome::timeout();
            rep.note = "deadline passed before start";
          } else {
            try {
              rep = backend.run(job, i, deadline, stop.get_token());
            } catch (const std::exception& e) {
              rep.outcome = SolveOutcome::unknown();
              rep.note = std::string("backend error: ") + e.what();
            }
          }
          Clock::time_point t1 = Clock::now();
          channel.push({i, std::move(rep), seconds_since(start, t0), seconds_since(t0, t1)});
        }
      });
    }

    // Backends enforce the deadline themselves; the grace period only guards
    // against one that does not.
    const Clock::time_point give_up = deadline + std::chrono::seconds(2);
    std::size_t received = 0;
    bool forced = false;
    while (received < schedule.size()) {
      auto msg = channel.pop_until(forced ? std::nullopt : std::optional(give_up));
      if (!msg) {
        forced = true;
        stop.request_stop();
        continue;
      }
      ++received;
      JobLogEntry& entry = result.log[msg->slot];
      entry.outcome = msg->report.outcome.kind;
      entry.start_s = msg->start_s;
      entry.wall_s = msg->wall_s;
      entry.work = msg->report.work;
      entry.note = std::move(msg->report.note);
      if (decision || failure) continue;
      const Slot slot = schedule[msg->slot];
      try {
        auto d = folds[slot.group].accept(slot.job, std::move(msg->report.outcome));
        if (d) {
          decision = std::move(d);
          result.decided_by = groups[slot.group]->mode;
          result.decided_job = slot.job;
          decided_slot = msg->slot;
          result.wall_s = seconds_since(start, Clock::now());
          if (!opts.exhaustive) stop.request_stop();
        }
      } catch (...) {
        failure = std::current_exception();
        stop.request_stop();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  // Jobs after the decision race with cancellation, so their work is left out.
  for (std::size_t i = 0; i < schedule.size() && i <= decided_slot; ++i)
    result.work += result.log[i].work;

  if (decision) {
    result.outcome = std::move(*decision);
  } else {
    result.wall_s = seconds_since(start, Clock::now());
    OutcomeKind k = OutcomeKind::Unknown;
    for (const Fold& f : folds)
      if (f.undecided() == OutcomeKind::Timeout) k = OutcomeKind::Timeout;
    result.outcome.kind = k;
  }
  return result;
}

}  // namespace

RunResult run_jobset(const Cnf& original, const JobSet& set, Backend& backend,
                     const ExecOptions& opts) {
  return execute(original, {&set}, backend, opts);
}

RunResult run_combined(const Cnf& original, const JobSet& sat, const JobSet& unsat,
                       Backend& backend, const ExecOptions& opts) {
  if (sat.mode != JobMode::SatPool || unsat.mode != JobMode::UnsatCubes)
    throw std::invalid_argument("run_combined expects a SatPool and an UnsatCubes set");
  return execute(original, {&sat, &unsat}, backend, opts);
}

}  // namespace galoissat
