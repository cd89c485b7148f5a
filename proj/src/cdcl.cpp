#include "cdcl.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace galoissat {

namespace {

// Literal code: 2*(var-1) + negated.
using Lit = std::uint32_t;
constexpr Lit kNoLit = UINT32_MAX;
using CRef = std::uint32_t;
constexpr CRef kNoReason = UINT32_MAX;

Lit to_lit(Literal l) { return 2 * (l.var - 1) + (l.negated ? 1 : 0); }
Literal from_lit(Lit p) { return {static_cast<Var>(p / 2 + 1), (p & 1) != 0}; }
std::uint32_t var_of(Lit p) { return p >> 1; }

constexpr std::uint8_t kTrue = 0, kFalse = 1, kUndef = 2;

struct ClauseData {
  std::vector<Lit> lits;
  bool learnt = false;
  bool deleted = false;
  unsigned lbd = 0;
  double activity = 0.0;
};

struct Watcher {
  CRef cref;
  Lit blocker;
};

double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

// Binary max-heap over variables keyed by activity.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act) {}

  void resize(std::size_t n) { pos_.assign(n, -1); }
  bool contains(std::uint32_t v) const { return pos_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  void insert(std::uint32_t v) {
    if (contains(v)) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(heap_.size() - 1);
  }
  void increased(std::uint32_t v) {
    if (contains(v)) up(static_cast<std::size_t>(pos_[v]));
  }
  std::uint32_t pop() {
    std::uint32_t top = heap_[0];
    heap_[0] = heap_.back();
    pos_[heap_[0]] = 0;
    heap_.pop_back();
    pos_[top] = -1;
    if (!heap_.empty()) down(0);
    return top;
  }

 private:
  bool less(std::uint32_t a, std::uint32_t b) const {
    // Higher activity first; lower index breaks ties for determinism.
    return act_[a] > act_[b] || (act_[a] == act_[b] && a < b);
  }
  void up(std::size_t i) {
    std::uint32_t v = heap_[i];
    while (i > 0) {
      std::size_t parent = (i - 1) / 2;
      if (!less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = static_cast<int>(i);
      i = parent;
    }
    heap_[i] = v;
    pos_[v] = static_cast<int>(i);
  }
  void down(std::size_t i) {
    std::uint32_t v = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= heap_.size()) break;
      if (child + 1 < heap_.size() && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], v)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = static_cast<int>(i);
      i = child;
    }
    heap_[i] = v;
    pos_[v] = static_cast<int>(i);
  }

  const std::vector<double>& act_;
  std::vector<std::uint32_t> heap_;
  std::vector<int> pos_;
};

}  // namespace

struct CdclSolver::Impl {
  SolverOptions opts;
  SolverStats stats;
  std::size_t num_vars = 0;
  bool ok = true;

  std::vector<ClauseData> clauses;
  std::vector<CRef> learnts;
  std::vector<std::vector<Watcher>> watches;  // indexed by the literal being watched

  std::vector<std::uint8_t> assigns;  // per var: kTrue/kFalse/kUndef
  std::vector<std::uint8_t> polarity; // saved phase: 1 = negative
  std::vector<int> level;
  std::vector<CRef> reason;
  std::vector<Lit> trail;
  std::vector<std::size_t> trail_lim;
  std::size_t qhead = 0;

  std::vector<double> activity;
  double var_inc = 1.0;
  double cla_inc = 1.0;
  VarHeap heap{activity};
  std::vector<std::uint8_t> seen;
  std::vector<std::uint8_t> level_mark;

  double max_learnts = 0;
  std::vector<Clause> learned_log;

  std::uint8_t value(Lit p) const {
    std::uint8_t a = assigns[var_of(p)];
    return a == kUndef ? kUndef : static_cast<std::uint8_t>(a ^ (p & 1));
  }
  unsigned decision_level() const { return static_cast<unsigned>(trail_lim.size()); }

  void enqueue(Lit p, CRef from) {
    std::uint32_t v = var_of(p);
    assigns[v] = static_cast<std::uint8_t>(p & 1);  // positive literal true => kTrue
    level[v] = static_cast<int>(decision_level());
    reason[v] = from;
    trail.push_back(p);
  }

  void attach(CRef cr) {
    const auto& c = clauses[cr].lits;
    watches[c[0]].push_back({cr, c[1]});
    watches[c[1]].push_back({cr, c[0]});
  }

  void init(const Cnf& cnf) {
    num_vars = cnf.num_vars();
    watches.resize(2 * num_vars);
    assigns.assign(num_vars, kUndef);
    polarity.assign(num_vars, 1);
    level.assign(num_vars, 0);
    reason.assign(num_vars, kNoReason);
    activity.assign(num_vars, 0.0);
    seen.assign(num_vars, 0);
    level_mark.assign(num_vars + 1, 0);
    heap.resize(num_vars);
    if (!opts.decision_priority.empty()) {
      for (std::size_t v = 0; v < num_vars && v < opts.decision_priority.size(); ++v)
        activity[v] = opts.decision_priority[v];
    }
    for (std::uint32_t v = 0; v < num_vars; ++v) heap.insert(v);

    if (cnf.trivially_unsat()) {
      ok = false;
      return;
    }
    std::vector<Lit> lits;
    for (const Clause& src : cnf.clauses()) {
      lits.clear();
      for (Literal l : src) lits.push_back(to_lit(l));
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      bool tautology = false;
      for (std::size_t i = 1; i < lits.size(); ++i)
        if (lits[i] == (lits[i - 1] ^ 1u)) tautology = true;
      if (tautology) continue;
      if (lits.size() == 1) {
        std::uint8_t val = value(lits[0]);
        if (val == kFalse) {
          ok = false;
          return;
        }
        if (val == kUndef) enqueue(lits[0], kNoReason);
        continue;
      }
      CRef cr = static_cast<CRef>(clauses.size());
      clauses.push_back({lits, false, false, 0, 0.0});
      attach(cr);
    }
    max_learnts = std::max(2000.0, static_cast<double>(clauses.size()) / 3.0);
  }

  // Returns the conflicting clause, or kNoReason.
  CRef propagate() {
    CRef confl = kNoReason;
    while (qhead < trail.size()) {
      Lit p = trail[qhead++];
      Lit false_lit = p ^ 1u;
      std::vector<Watcher>& ws = watches[false_lit];
      ++stats.propagations;
      std::size_t i = 0;
      std::size_t j = 0;
      const std::size_t end = ws.size();
      while (i < end) {
        Watcher w = ws[i];
        if (value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        ClauseData& cd = clauses[w.cref];
        if (cd.deleted) {
          ++i;
          continue;
        }
        std::vector<Lit>& c = cd.lits;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        ++i;
        Lit first = c[0];
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches[c[1]].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == kFalse) {
          confl = w.cref;
          qhead = trail.size();
          while (i < end) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (confl != kNoReason) break;
    }
    return confl;
  }

  void bump_var(std::uint32_t v) {
    if ((activity[v] += var_inc) > 1e100) {
      for (double& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    heap.increased(v);
  }

  void bump_clause(ClauseData& c) {
    if ((c.activity += cla_inc) > 1e20) {
      for (CRef cr : learnts) clauses[cr].activity *= 1e-20;
      cla_inc *= 1e-20;
    }
  }

  unsigned compute_lbd(const std::vector<Lit>& lits) {
    unsigned n = 0;
    for (Lit p : lits) {
      int lv = level[var_of(p)];
      if (!level_mark[lv]) {
        level_mark[lv] = 1;
        ++n;
      }
    }
    for (Lit p : lits) level_mark[level[var_of(p)]] = 0;
    return n;
  }

  // First-UIP analysis. Fills `out` with the learned clause (asserting literal
  // first) and returns the backjump level.
  unsigned analyze(CRef confl, std::vector<Lit>& out) {
    out.clear();
    out.push_back(kNoLit);
    int path = 0;
    Lit p = kNoLit;
    std::size_t index = trail.size();

    do {
      ClauseData& c = clauses[confl];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = (p == kNoLit ? 0 : 1); k < c.lits.size(); ++k) {
        Lit q = c.lits[k];
        std::uint32_t v = var_of(q);
        if (!seen[v] && level[v] > 0) {
          bump_var(v);
          seen[v] = 1;
          if (level[v] >= static_cast<int>(decision_level()))
            ++path;
          else
            out.push_back(q);
        }
      }
      while (!seen[var_of(trail[--index])]) {
      }
      p = trail[index];
      confl = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path;
    } while (path > 0);
    out[0] = p ^ 1u;

    // Local minimization: drop literals whose reason is subsumed by the rest.
    std::vector<Lit> analyzed(out.begin() + 1, out.end());
    std::size_t kept = 1;
    for (std::size_t i = 1; i < out.size(); ++i) {
      std::uint32_t v = var_of(out[i]);
      CRef r = reason[v];
      bool redundant = r != kNoReason;
      if (redundant) {
        const auto& rc = clauses[r].lits;
        for (std::size_t k = 1; k < rc.size(); ++k) {
          std::uint32_t u = var_of(rc[k]);
          if (!seen[u] && level[u] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) out[kept++] = out[i];
    }
    out.resize(kept);
    for (Lit q : analyzed) seen[var_of(q)] = 0;

    unsigned bt = 0;
    if (out.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < out.size(); ++i)
        if (level[var_of(out[i])] > level[var_of(out[max_i])]) max_i = i;
      std::swap(out[1], out[max_i]);
      bt = static_cast<unsigned>(level[var_of(out[1])]);
    }
    return bt;
  }

  void cancel_until(unsigned lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t c = trail.size(); c-- > trail_lim[lvl];) {
      std::uint32_t v = var_of(trail[c]);
      assigns[v] = kUndef;
      reason[v] = kNoReason;
      polarity[v] = static_cast<std::uint8_t>(trail[c] & 1);
      heap.insert(v);
    }
    trail.resize(trail_lim[lvl]);
    trail_lim.resize(lvl);
    qhead = trail.size();
  }

  bool locked(CRef cr) const {
    const auto& c = clauses[cr].lits;
    std::uint32_t v = var_of(c[0]);
    return reason[v] == cr && value(c[0]) == kTrue;
  }

  void reduce_db() {
    std::vector<CRef> candidates;
    std::vector<CRef> keep;
    for (CRef cr : learnts) {
      const ClauseData& c = clauses[cr];
      if (c.lbd <= opts.keep_lbd || locked(cr) || c.lits.size() == 2)
        keep.push_back(cr);
      else
        candidates.push_back(cr);
    }
    std::sort(candidates.begin(), candidates.end(), [&](CRef a, CRef b) {
      if (clauses[a].activity != clauses[b].activity)
        return clauses[a].activity < clauses[b].activity;
      return a < b;
    });
    std::size_t drop = candidates.size() / 2;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (i < drop) {
        clauses[candidates[i]].deleted = true;
        clauses[candidates[i]].lits.clear();
        clauses[candidates[i]].lits.shrink_to_fit();
        ++stats.deleted;
      } else {
        keep.push_back(candidates[i]);
      }
    }
    std::sort(keep.begin(), keep.end());
    learnts = std::move(keep);
    for (auto& ws : watches)
      std::erase_if(ws, [&](const Watcher& w) { return clauses[w.cref].deleted; });
  }

  Lit pick_branch() {
    while (!heap.empty()) {
      std::uint32_t v = heap.pop();
      if (assigns[v] == kUndef) return 2 * v + polarity[v];
    }
    return kNoLit;
  }

  SolveOutcome search(std::optional<Clock::time_point> deadline, std::stop_token stop) {
    if (!ok) return SolveOutcome::unsat();
    if (propagate() != kNoReason) {
      ok = false;
      return SolveOutcome::unsat();
    }
    std::vector<Lit> learnt;
    std::uint64_t restart_idx = 0;
    std::uint64_t conflicts_until_restart =
        static_cast<std::uint64_t>(luby(2.0, restart_idx) * opts.restart_base);
    std::uint64_t polls = 0;

    for (;;) {
      if (stop.stop_requested()) return SolveOutcome::unknown();
      if (deadline && (++polls & 31u) == 0 && Clock::now() >= *deadline)
        return SolveOutcome::timeout();

      CRef confl = propagate();
      if (confl != kNoReason) {
        ++stats.conflicts;
        if (decision_level() == 0) {
          ok = false;
          return SolveOutcome::unsat();
        }
        unsigned bt = analyze(confl, learnt);
        cancel_until(bt);
        if (opts.record_learned) {
          Clause lc;
          for (Lit p : learnt) lc.push_back(from_lit(p));
          learned_log.push_back(std::move(lc));
        }
        ++stats.learned;
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          CRef cr = static_cast<CRef>(clauses.size());
          clauses.push_back({learnt, true, false, compute_lbd(learnt), 0.0});
          bump_clause(clauses.back());
          attach(cr);
          learnts.push_back(cr);
          enqueue(learnt[0], cr);
        }
        var_inc /= opts.var_decay;
        cla_inc /= opts.clause_decay;
        if (conflicts_until_restart > 0) --conflicts_until_restart;
        continue;
      }

      if (conflicts_until_restart == 0) {
        ++stats.restarts;
        cancel_until(0);
        ++restart_idx;
        conflicts_until_restart =
            static_cast<std::uint64_t>(luby(2.0, restart_idx) * opts.restart_base);
        continue;
      }
      if (static_cast<double>(learnts.size()) - static_cast<double>(trail.size()) >= max_learnts) {
        reduce_db();
        max_learnts *= 1.1;
      }

      Lit next = pick_branch();
      if (next == kNoLit) {
        Assignment model(num_vars);
        for (std::uint32_t v = 0; v < num_vars; ++v) model.set(v + 1, assigns[v] == kTrue);
        return SolveOutcome::sat(std::move(model));
      }
      ++stats.decisions;
      trail_lim.push_back(trail.size());
      enqueue(next, kNoReason);
    }
  }
};

CdclSolver::CdclSolver(const Cnf& cnf, SolverOptions opts) : impl_(std::make_unique<Impl>()) {
  impl_->opts = std::move(opts);
  impl_->init(cnf);
}

CdclSolver::~CdclSolver() = default;

SolveOutcome CdclSolver::solve(std::optional<Clock::time_point> deadline, std::stop_token stop) {
  SolveOutcome out = impl_->search(deadline, stop);
  impl_->cancel_until(0);
  return out;
}

bool CdclSolver::consistent() const { return impl_->ok; }

void CdclSolver::decide(Literal lit) {
  if (lit.var == 0 || lit.var > impl_->num_vars) throw std::invalid_argument("variable out of range");
  if (impl_->assigns[lit.var - 1] != kUndef) throw std::logic_error("variable already assigned");
  impl_->trail_lim.push_back(impl_->trail.size());
  impl_->enqueue(to_lit(lit), kNoReason);
}

std::optional<Clause> CdclSolver::propagate() {
  if (!impl_->ok) return Clause{};
  CRef confl = impl_->propagate();
  if (confl == kNoReason) return std::nullopt;
  Clause out;
  for (Lit p : impl_->clauses[confl].lits) out.push_back(from_lit(p));
  return out;
}

std::optional<bool> CdclSolver::value(Var v) const {
  std::uint8_t a = impl_->assigns[v - 1];
  if (a == kUndef) return std::nullopt;
  return a == kTrue;
}

unsigned CdclSolver::decision_level() const { return impl_->decision_level(); }
const std::vector<Clause>& CdclSolver::learned_log() const { return impl_->learned_log; }
const SolverStats& CdclSolver::stats() const { return impl_->stats; }

SolveOutcome solve_cnf(const Cnf& cnf, std::optional<Clock::duration> budget,
                       std::stop_token stop, SolverStats* stats) {
  std::optional<Clock::time_point> deadline;
  if (budget) deadline = Clock::now() + *budget;
  CdclSolver solver(cnf);
  SolveOutcome out = solver.solve(deadline, std::move(stop));
  if (stats) *stats = solver.stats();
  return out;
}

}  // namespace galoissat
