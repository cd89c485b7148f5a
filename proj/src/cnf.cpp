#include "cnf.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace galoissat {

Literal Literal::from_dimacs(std::int64_t code) {
  if (code == 0 || code > UINT32_MAX || code < -static_cast<std::int64_t>(UINT32_MAX))
    throw std::invalid_argument("invalid DIMACS literal " + std::to_string(code));
  return code < 0 ? neg(static_cast<Var>(-code)) : pos(static_cast<Var>(code));
}

Cnf::Cnf(Var num_vars, std::vector<Clause> clauses, bool trivially_unsat)
    : num_vars_(num_vars), clauses_(std::move(clauses)), trivially_unsat_(trivially_unsat) {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].empty())
      throw std::invalid_argument("clause " + std::to_string(i) + " is empty");
    for (Literal l : clauses_[i])
      if (l.var == 0 || l.var > num_vars_)
        throw std::invalid_argument("clause " + std::to_string(i) + " mentions variable " +
                                    std::to_string(l.var) + " outside 1.." +
                                    std::to_string(num_vars_));
  }
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim_left(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

// Splits on whitespace, calling fn(token) for each.
template <class Fn>
void for_each_token(std::string_view line, Fn&& fn) {
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) fn(line.substr(i, j - i));
    i = j;
  }
}

std::int64_t parse_int(std::string_view tok, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw DimacsError("line " + std::to_string(line_no) + ": non-integer token '" +
                      std::string(tok) + "'");
  return value;
}

}  // namespace

ParseResult parse_dimacs(std::string_view text, const ParseOptions& opts) {
  ParseResult result;
  bool have_header = false;
  std::int64_t declared_vars = 0;
  std::int64_t declared_clauses = 0;
  std::vector<Clause> clauses;
  Clause current;
  std::size_t seen_clauses = 0;
  bool trivially_unsat = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim_left(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;

    if (line.empty() || line.front() == 'c') continue;
    if (line.front() == '%') break;  // SATLIB end marker
    if (line.front() == 'p') {
      if (have_header) throw DimacsError("line " + std::to_string(line_no) + ": duplicate header");
      std::vector<std::string_view> toks;
      for_each_token(line, [&](std::string_view t) { toks.push_back(t); });
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "cnf")
        throw DimacsError("line " + std::to_string(line_no) + ": malformed header");
      declared_vars = parse_int(toks[2], line_no);
      declared_clauses = parse_int(toks[3], line_no);
      if (declared_vars < 0 || declared_clauses < 0 || declared_vars > UINT32_MAX)
        throw DimacsError("line " + std::to_string(line_no) + ": negative or oversized header");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw DimacsError("line " + std::to_string(line_no) + ": clause data before 'p cnf' header");

    for_each_token(line, [&](std::string_view tok) {
      std::int64_t v = parse_int(tok, line_no);
      if (v == 0) {
        ++seen_clauses;
        if (current.empty())
          trivially_unsat = true;
        else
          clauses.push_back(std::move(current));
        current.clear();
        return;
      }
      std::int64_t mag = v < 0 ? -v : v;
      if (mag > declared_vars)
        throw DimacsError("line " + std::to_string(line_no) + ": literal " + std::to_string(v) +
                          " exceeds declared variable count " + std::to_string(declared_vars));
      current.push_back(Literal::from_dimacs(v));
    });
  }

  if (!have_header) throw DimacsError("missing 'p cnf' header");
  if (!current.empty()) {
    result.warnings.push_back("last clause is not terminated by 0");
    if (opts.strict) throw DimacsError(result.warnings.back());
    clauses.push_back(std::move(current));
    ++seen_clauses;
  }
  if (static_cast<std::int64_t>(seen_clauses) != declared_clauses) {
    std::string msg = "header declares " + std::to_string(declared_clauses) +
                      " clauses but body has " + std::to_string(seen_clauses);
    if (opts.strict) throw DimacsError(msg);
    result.warnings.push_back(std::move(msg));
  }
  result.cnf = Cnf(static_cast<Var>(declared_vars), std::move(clauses), trivially_unsat);
  return result;
}

ParseResult read_dimacs_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DimacsError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str(), opts);
}

std::string write_dimacs(const Cnf& cnf, std::span<const std::string> comments) {
  std::string out;
  for (const auto& c : comments) out += "c " + c + "\n";
  out += "p cnf " + std::to_string(cnf.num_vars()) + " " +
         std::to_string(cnf.num_clauses() + (cnf.trivially_unsat() ? 1 : 0)) + "\n";
  for (const Clause& clause : cnf.clauses()) {
    for (Literal l : clause) {
      out += std::to_string(l.to_dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  if (cnf.trivially_unsat()) out += "0\n";
  return out;
}

void write_dimacs_file(const Cnf& cnf, const std::string& path,
                       std::span<const std::string> comments) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_dimacs(cnf, comments);
  if (!out) throw std::runtime_error("write failed for " + path);
}

bool verify_model(const Cnf& cnf, const Assignment& a) {
  if (a.size() != cnf.num_vars())
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) +
                                " values, formula has " + std::to_string(cnf.num_vars()) +
                                " variables");
  if (cnf.trivially_unsat()) return false;
  for (const Clause& clause : cnf.clauses()) {
    bool sat = false;
    for (Literal l : clause) {
      if (a.satisfies(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

Cnf augment_with_units(const Cnf& cnf, std::span<const Literal> literals) {
  std::unordered_set<Var> seen;
  std::vector<Clause> clauses = cnf.clauses();
  clauses.reserve(clauses.size() + literals.size());
  for (Literal l : literals) {
    if (l.var == 0 || l.var > cnf.num_vars())
      throw std::invalid_argument("unit literal variable " + std::to_string(l.var) +
                                  " out of range");
    if (!seen.insert(l.var).second)
      throw std::invalid_argument("variable " + std::to_string(l.var) +
                                  " appears more than once in unit literals");
    clauses.push_back({l});
  }
  return Cnf(cnf.num_vars(), std::move(clauses), cnf.trivially_unsat());
}

}  // namespace galoissat
