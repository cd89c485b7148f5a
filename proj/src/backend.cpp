#include "backend.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <thread>

#include "cdcl.hpp"

extern char** environ;

namespace galoissat {

JobReport InternalBackend::run(const Cnf& cnf, std::size_t, Clock::time_point deadline,
                               std::stop_token stop) {
  CdclSolver solver(cnf);
  JobReport r;
  r.outcome = solver.solve(deadline, std::move(stop));
  r.work = solver.stats().propagations;
  return r;
}

namespace {

class TempCnfFile {
 public:
  explicit TempCnfFile(const Cnf& cnf) {
    const char* dir = std::getenv("TMPDIR");
    path_ = std::string(dir && *dir ? dir : "/tmp") + "/galoissat-job-XXXXXX.cnf";
    int fd = mkstemps(path_.data(), 4);
    if (fd < 0) throw std::runtime_error("mkstemps failed: " + std::string(std::strerror(errno)));
    std::string text = write_dimacs(cnf);
    std::size_t off = 0;
    while (off < text.size()) {
      ssize_t n = ::write(fd, text.data() + off, text.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        ::unlink(path_.c_str());
        throw std::runtime_error("writing temp CNF failed");
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempCnfFile() { ::unlink(path_.c_str()); }
  TempCnfFile(const TempCnfFile&) = delete;
  TempCnfFile& operator=(const TempCnfFile&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  ~Fd() { reset(); }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

}  // namespace

ExternalResult decode_competition_output(const std::string& output, int exit_code, Var num_vars) {
  ExternalResult r;
  r.exit_code = exit_code;
  r.raw_output = output;

  std::optional<OutcomeKind> status;
  Assignment model(num_vars);
  bool saw_values = false;
  bool values_terminated = false;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("s ", 0) == 0) {
      std::string word = line.substr(2);
      while (!word.empty() && word.back() == ' ') word.pop_back();
      if (word == "SATISFIABLE")
        status = OutcomeKind::Sat;
      else if (word == "UNSATISFIABLE")
        status = OutcomeKind::Unsat;
      else if (word == "UNKNOWN")
        status = OutcomeKind::Unknown;
      else {
        r.note = "unrecognized status line: " + line;
        return r;
      }
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream vs(line.substr(1));
      long long lit = 0;
      while (vs >> lit) {
        if (lit == 0) {
          values_terminated = true;
          continue;
        }
        long long var = lit < 0 ? -lit : lit;
        if (var > static_cast<long long>(num_vars)) {
          r.note = "value line mentions variable outside the formula";
          return r;
        }
        model.set(static_cast<Var>(var), lit > 0);
        saw_values = true;
      }
      if (!vs.eof()) {
        r.note = "malformed value line: " + line;
        return r;
      }
    }
  }

  bool exit_sat = exit_code == 10;
  bool exit_unsat = exit_code == 20;
  if ((exit_sat && status && *status != OutcomeKind::Sat) ||
      (exit_unsat && status && *status != OutcomeKind::Unsat)) {
    r.note = "exit code contradicts status line";
    return r;
  }
  if (exit_sat || (status && *status == OutcomeKind::Sat)) {
    if (!saw_values && num_vars > 0) {
      r.note = "satisfiable without a model";
      return r;
    }
    if (!values_terminated && num_vars > 0) {
      r.note = "value lines not terminated by 0";
      return r;
    }
    r.outcome = SolveOutcome::sat(std::move(model));
  } else if (exit_unsat || (status && *status == OutcomeKind::Unsat)) {
    r.outcome = SolveOutcome::unsat();
  } else if (!status) {
    r.note = "no status line (exit code " + std::to_string(exit_code) + ")";
  }
  return r;
}

ExternalResult run_external(const std::string& binary, const std::vector<std::string>& args,
                            const Cnf& cnf, Clock::time_point deadline, std::stop_token stop) {
  ExternalResult r;
  TempCnfFile tmp(cnf);

  int pipefd[2];
  if (::pipe2(pipefd, O_CLOEXEC) != 0) {
    r.note = "pipe failed";
    return r;
  }
  Fd read_end(pipefd[0]);
  Fd write_end(pipefd[1]);

  std::vector<std::string> argv_store;
  argv_store.push_back(binary);
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  argv_store.push_back(tmp.path());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, write_end.get(), STDOUT_FILENO);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  pid_t pid = -1;
  int rc = posix_spawn(&pid, binary.c_str(), &actions, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  write_end.reset();
  if (rc != 0) {
    r.note = "spawn failed: " + std::string(std::strerror(rc));
    return r;
  }

  std::string output;
  bool killed = false;
  std::optional<OutcomeKind> kill_reason;
  char buf[4096];
  for (;;) {
    if (stop.stop_requested() || Clock::now() >= deadline) {
      kill_reason = stop.stop_requested() ? OutcomeKind::Unknown : OutcomeKind::Timeout;
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      killed = true;
      break;
    }
    pollfd pfd{read_end.get(), POLLIN, 0};
    int pr = ::poll(&pfd, 1, 10);
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) continue;
    ssize_t n = ::read(read_end.get(), buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    output.append(buf, static_cast<std::size_t>(n));
  }

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (killed) {
    ::kill(-pid, SIGKILL);  // reap stragglers in the group
    r.outcome.kind = *kill_reason;
    r.raw_output = std::move(output);
    r.note = *kill_reason == OutcomeKind::Timeout ? "killed at deadline" : "cancelled";
    return r;
  }
  int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (exit_code == 127 && output.empty()) {
    r.exit_code = exit_code;
    r.note = "spawn failed: exec returned 127";
    return r;
  }
  return decode_competition_output(output, exit_code, cnf.num_vars());
}

JobReport ExternalBackend::run(const Cnf& cnf, std::size_t, Clock::time_point deadline,
                               std::stop_token stop) {
  JobReport rep;
  ExternalResult r = run_external(binary_, args_, cnf, deadline, std::move(stop));
  rep.outcome = std::move(r.outcome);
  rep.note = r.note;
  if (!r.note.empty() && rep.outcome.kind == OutcomeKind::Unknown && !r.raw_output.empty())
    rep.note += "; raw output: " + r.raw_output.substr(0, 512);
  return rep;
}

StubBackend::StubBackend() : StubBackend(Script{}) {}

JobReport StubBackend::run(const Cnf& cnf, std::size_t job_index, Clock::time_point deadline,
                           std::stop_token stop) {
  unsigned now_running = ++running_;
  ++started_;
  unsigned prev = max_running_.load();
  while (now_running > prev && !max_running_.compare_exchange_weak(prev, now_running)) {
  }

  std::mutex stop_mu;
  std::optional<Clock::time_point> stop_at;
  std::stop_callback on_stop(stop, [&] {
    std::lock_guard lk(stop_mu);
    stop_at = Clock::now();
  });

  auto it = scripts_.find(job_index);
  const Script& s = it == scripts_.end() ? fallback_ : it->second;
  const Clock::time_point until = Clock::now() + s.delay;

  JobReport rep;
  bool cancelled = false;
  for (;;) {
    if (stop.stop_requested()) {
      cancelled = true;
      rep.outcome = SolveOutcome::unknown();
      break;
    }
    auto now = Clock::now();
    if (now >= deadline) {
      rep.outcome = SolveOutcome::timeout();
      break;
    }
    if (now >= until) {
      rep.outcome.kind = s.kind;
      if (s.kind == OutcomeKind::Sat) {
        if (s.model) {
          rep.outcome.model = *s.model;
        } else {
          SolveOutcome real = CdclSolver(cnf).solve();
          rep.outcome.model = real.kind == OutcomeKind::Sat ? real.model : Assignment(cnf.num_vars());
        }
      }
      break;
    }
    std::this_thread::sleep_for(std::min<Clock::duration>(poll_, until - now));
  }

  {
    std::lock_guard lk(mu_);
    std::lock_guard lk2(stop_mu);
    exits_.push_back({job_index, Clock::now(), cancelled, stop_at});
  }
  --running_;
  return rep;
}

std::vector<StubBackend::Exit> StubBackend::exits() const {
  std::lock_guard lk(mu_);
  return exits_;
}

}  // namespace galoissat
