#pragma once

#include <chrono>
#include <optional>
#include <string_view>

#include "cnf.hpp"

namespace galoissat {

using Clock = std::chrono::steady_clock;

enum class OutcomeKind { Sat, Unsat, Timeout, Unknown };

struct SolveOutcome {
  OutcomeKind kind = OutcomeKind::Unknown;
  Assignment model;  // meaningful only for Sat

  static SolveOutcome sat(Assignment m) { return {OutcomeKind::Sat, std::move(m)}; }
  static SolveOutcome unsat() { return {OutcomeKind::Unsat, {}}; }
  static SolveOutcome timeout() { return {OutcomeKind::Timeout, {}}; }
  static SolveOutcome unknown() { return {OutcomeKind::Unknown, {}}; }

  bool decisive() const { return kind == OutcomeKind::Sat || kind == OutcomeKind::Unsat; }
};

/// SAT-competition status word: SATISFIABLE, UNSATISFIABLE, UNKNOWN.
std::string_view status_word(OutcomeKind k);

/// Short tag used in logs and CSV: SAT, UNSAT, TIMEOUT, UNKNOWN.
std::string_view outcome_tag(OutcomeKind k);
std::optional<OutcomeKind> parse_outcome_tag(std::string_view s);

/// Result-type names used in the candidate-pool breakdown.
std::string_view category_name(OutcomeKind k);

}  // namespace galoissat
