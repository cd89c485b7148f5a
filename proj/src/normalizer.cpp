#include "normalizer.hpp"

namespace galoissat {

namespace {

void pad_to(Clause& c, unsigned k) {
  while (c.size() < k) c.push_back(c.back());
}

}  // namespace

NormalizedCnf normalize(const Cnf& cnf, unsigned k) {
  if (k < 2) throw std::invalid_argument("clause width must be >= 2");
  if (cnf.trivially_unsat()) throw UnsatAtParse();

  NormalizedCnf out;
  out.original_vars = cnf.num_vars();
  out.width = k;
  Var next_aux = cnf.num_vars() + 1;
  std::vector<Clause> clauses;

  for (std::size_t ci = 0; ci < cnf.num_clauses(); ++ci) {
    const Clause& src = cnf.clause(ci);
    if (src.size() <= k) {
      Clause c = src;
      pad_to(c, k);
      clauses.push_back(std::move(c));
      out.clause_origin.push_back(ci);
      continue;
    }
    if (k < 3)
      throw std::invalid_argument("clause of length " + std::to_string(src.size()) +
                                  " cannot be chain-encoded at width " + std::to_string(k));

    // First chunk: k-1 input literals and a fresh link.
    Var link = next_aux++;
    Clause first(src.begin(), src.begin() + (k - 1));
    first.push_back(pos(link));
    clauses.push_back(std::move(first));
    out.clause_origin.push_back(ci);

    std::size_t at = k - 1;
    while (src.size() - at > k - 1) {
      Var next_link = next_aux++;
      Clause mid{neg(link)};
      mid.insert(mid.end(), src.begin() + at, src.begin() + at + (k - 2));
      mid.push_back(pos(next_link));
      clauses.push_back(std::move(mid));
      out.clause_origin.push_back(ci);
      at += k - 2;
      link = next_link;
    }

    Clause last{neg(link)};
    last.insert(last.end(), src.begin() + at, src.end());
    pad_to(last, k);
    clauses.push_back(std::move(last));
    out.clause_origin.push_back(ci);
  }

  out.total_vars = next_aux - 1;
  out.cnf = Cnf(out.total_vars, std::move(clauses));
  for (const Clause& c : out.cnf.clauses())
    if (c.size() != k) throw std::logic_error("normalized clause width mismatch");
  return out;
}

Assignment project_assignment(const NormalizedCnf& norm, const Assignment& full) {
  if (full.size() != norm.total_vars)
    throw std::invalid_argument("expected assignment over " + std::to_string(norm.total_vars) +
                                " variables, got " + std::to_string(full.size()));
  std::vector<std::uint8_t> prefix(full.bits().begin(),
                                   full.bits().begin() + norm.original_vars);
  return Assignment(std::move(prefix));
}

Assignment lift_assignment(const NormalizedCnf& norm, const Cnf& original,
                           const Assignment& model) {
  if (model.size() != norm.original_vars)
    throw std::invalid_argument("model size does not match original variable count");
  Assignment full(norm.total_vars);
  for (Var v = 1; v <= norm.original_vars; ++v) full.set(v, model.value(v));

  // Walk the normalized clauses in order; a chunk opened with ~f_j follows the
  // literals that precede it in the source clause.
  std::size_t i = 0;
  const auto& clauses = norm.cnf.clauses();
  while (i < clauses.size()) {
    std::size_t origin = norm.clause_origin[i];
    std::size_t j = i;
    while (j < clauses.size() && norm.clause_origin[j] == origin) ++j;
    if (j - i > 1) {
      const Clause& src = original.clause(origin);
      bool all_false_so_far = true;
      std::size_t consumed = 0;
      for (std::size_t c = i; c + 1 < j; ++c) {
        std::size_t payload = (c == i) ? norm.width - 1 : norm.width - 2;
        for (std::size_t p = 0; p < payload; ++p)
          if (model.satisfies(src[consumed + p])) all_false_so_far = false;
        consumed += payload;
        full.set(clauses[c].back().var, all_false_so_far);
      }
    }
    i = j;
  }
  return full;
}

}  // namespace galoissat
