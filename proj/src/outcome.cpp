#include "outcome.hpp"

namespace galoissat {

std::string_view status_word(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Sat: return "SATISFIABLE";
    case OutcomeKind::Unsat: return "UNSATISFIABLE";
    default: return "UNKNOWN";
  }
}

std::string_view outcome_tag(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Sat: return "SAT";
    case OutcomeKind::Unsat: return "UNSAT";
    case OutcomeKind::Timeout: return "TIMEOUT";
    case OutcomeKind::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<OutcomeKind> parse_outcome_tag(std::string_view s) {
  if (s == "SAT") return OutcomeKind::Sat;
  if (s == "UNSAT") return OutcomeKind::Unsat;
  if (s == "TIMEOUT") return OutcomeKind::Timeout;
  if (s == "UNKNOWN") return OutcomeKind::Unknown;
  return std::nullopt;
}

std::string_view category_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Sat: return "Satisfiable";
    case OutcomeKind::Unsat: return "Unsatisfiable";
    case OutcomeKind::Timeout: return "Timeout";
    case OutcomeKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

}  // namespace galoissat
