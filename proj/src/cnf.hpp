#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace galoissat {

using Var = std::uint32_t;

/// A variable (1-based) with a polarity. Encodes to the DIMACS signed form.
struct Literal {
  Var var = 0;
  bool negated = false;

  static Literal from_dimacs(std::int64_t code);
  std::int64_t to_dimacs() const {
    return negated ? -static_cast<std::int64_t>(var) : static_cast<std::int64_t>(var);
  }
  Literal operator~() const { return {var, !negated}; }
  bool satisfied_by(bool value) const { return value != negated; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(Var v) { return {v, false}; }
inline Literal neg(Var v) { return {v, true}; }

using Clause = std::vector<Literal>;

/// Full Boolean assignment; value(v) is the value of variable v (1-based).
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars, bool fill = false)
      : values_(num_vars, fill ? 1 : 0) {}
  explicit Assignment(std::vector<std::uint8_t> values) : values_(std::move(values)) {
    for (auto& b : values_) b = b ? 1 : 0;
  }

  std::size_t size() const { return values_.size(); }
  bool value(Var v) const { return values_[v - 1] != 0; }
  void set(Var v, bool b) { values_[v - 1] = b ? 1 : 0; }
  bool satisfies(Literal l) const { return l.satisfied_by(value(l.var)); }
  std::span<const std::uint8_t> bits() const { return values_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

class DimacsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Clause database over variables 1..num_vars. An explicit empty clause in
/// the input is kept only as the trivially_unsat flag.
class Cnf {
 public:
  Cnf() = default;
  /// Throws std::invalid_argument if a clause is empty or mentions a variable
  /// outside 1..num_vars.
  Cnf(Var num_vars, std::vector<Clause> clauses, bool trivially_unsat = false);

  Var num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }
  bool trivially_unsat() const { return trivially_unsat_; }

  friend bool operator==(const Cnf&, const Cnf&) = default;

 private:
  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
  bool trivially_unsat_ = false;
};

struct ParseOptions {
  /// Header/body clause count mismatch becomes an error instead of a warning.
  bool strict = false;
};

struct ParseResult {
  Cnf cnf;
  std::vector<std::string> warnings;
};

ParseResult parse_dimacs(std::string_view text, const ParseOptions& opts = {});
ParseResult read_dimacs_file(const std::string& path, const ParseOptions& opts = {});

/// Serialization is `p cnf n m` followed by one clause per line. The
/// trivially-unsat flag is written as a trailing `0` line.
std::string write_dimacs(const Cnf& cnf, std::span<const std::string> comments = {});
void write_dimacs_file(const Cnf& cnf, const std::string& path,
                       std::span<const std::string> comments = {});

/// True iff every clause has a literal satisfied under `a`.
/// Throws std::invalid_argument when a.size() != cnf.num_vars().
bool verify_model(const Cnf& cnf, const Assignment& a);

/// phi AND (l_1) AND ... AND (l_k), units appended in input order.
/// Throws std::invalid_argument on out-of-range or repeated variables.
Cnf augment_with_units(const Cnf& cnf, std::span<const Literal> literals);

}  // namespace galoissat
