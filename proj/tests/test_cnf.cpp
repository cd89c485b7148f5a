#include <gtest/gtest.h>

#include "cnf.hpp"
#include "oracle.hpp"

using namespace galoissat;
using galoissat::testing::brute_force_sat;

namespace {

Cnf phi_example() { return Cnf(3, {{pos(1), neg(2)}, {neg(1), pos(3)}}); }

}  // namespace

TEST(Literal, DimacsRoundTrip) {
  for (std::int64_t code : {1, -1, 7, -42}) EXPECT_EQ(Literal::from_dimacs(code).to_dimacs(), code);
  EXPECT_TRUE(Literal::from_dimacs(-3).negated);
  EXPECT_EQ(Literal::from_dimacs(-3).var, 3u);
  EXPECT_THROW(Literal::from_dimacs(0), std::invalid_argument);
}

TEST(ParseDimacs, TwoClauseExample) {
  auto r = parse_dimacs("p cnf 3 2\n1 -2 0\n-1 3 0\n");
  EXPECT_EQ(r.cnf, phi_example());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ParseDimacs, EmptyFormula) {
  auto r = parse_dimacs("p cnf 1 0\n");
  EXPECT_EQ(r.cnf.num_vars(), 1u);
  EXPECT_EQ(r.cnf.num_clauses(), 0u);
  EXPECT_FALSE(r.cnf.trivially_unsat());
}

TEST(ParseDimacs, TautologyKeptVerbatim) {
  auto r = parse_dimacs("p cnf 2 1\n1 -1 0\n");
  ASSERT_EQ(r.cnf.num_clauses(), 1u);
  EXPECT_EQ(r.cnf.clause(0), (Clause{pos(1), neg(1)}));
}

TEST(ParseDimacs, DuplicateLiteralsKept) {
  auto r = parse_dimacs("p cnf 2 1\n2 2 -1 0\n");
  EXPECT_EQ(r.cnf.clause(0), (Clause{pos(2), pos(2), neg(1)}));
}

TEST(ParseDimacs, CommentsSpanningClausesAndCrlf) {
  auto r = parse_dimacs("c hello\r\nc more\r\np cnf 3 2\r\n1 -2\r\n 0 -1\r\n3 0\r\n");
  EXPECT_EQ(r.cnf, phi_example());
}

TEST(ParseDimacs, PercentTerminator) {
  auto r = parse_dimacs("p cnf 3 2\n1 -2 0\n-1 3 0\n%\n0\n");
  EXPECT_EQ(r.cnf, phi_example());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ParseDimacs, EmptyClauseSetsTrivialUnsatFlag) {
  auto r = parse_dimacs("p cnf 2 2\n1 2 0\n0\n");
  EXPECT_TRUE(r.cnf.trivially_unsat());
  EXPECT_EQ(r.cnf.num_clauses(), 1u);
}

TEST(ParseDimacs, Errors) {
  EXPECT_THROW(parse_dimacs("1 2 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs(""), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2.5 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2\n1 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n"), DimacsError);
}

TEST(ParseDimacs, CountMismatchWarnsOrFailsUnderStrict) {
  const char* text = "p cnf 2 3\n1 2 0\n-1 0\n";
  auto r = parse_dimacs(text);
  EXPECT_EQ(r.cnf.num_clauses(), 2u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_THROW(parse_dimacs(text, {.strict = true}), DimacsError);
}

TEST(ParseDimacs, UnterminatedLastClauseWarns) {
  auto r = parse_dimacs("p cnf 2 1\n1 2\n");
  EXPECT_EQ(r.cnf.num_clauses(), 1u);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(WriteDimacs, Examples) {
  EXPECT_EQ(write_dimacs(phi_example()), "p cnf 3 2\n1 -2 0\n-1 3 0\n");
  EXPECT_EQ(write_dimacs(Cnf(1, {})), "p cnf 1 0\n");
}

TEST(WriteDimacs, CommentsPrecedeHeader) {
  std::vector<std::string> comments = {"original_vars 3"};
  EXPECT_EQ(write_dimacs(phi_example(), comments), "c original_vars 3\np cnf 3 2\n1 -2 0\n-1 3 0\n");
}

TEST(WriteDimacs, TriviallyUnsatRoundTrips) {
  auto r = parse_dimacs("p cnf 2 2\n1 2 0\n0\n");
  auto again = parse_dimacs(write_dimacs(r.cnf));
  EXPECT_EQ(again.cnf, r.cnf);
  EXPECT_TRUE(again.warnings.empty());
}

TEST(WriteDimacs, RandomRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Var n = 1 + static_cast<Var>(rng.below(50));
    Cnf c = galoissat::testing::random_cnf(rng, n, rng.below(40), 1, 8);
    auto r = parse_dimacs(write_dimacs(c), {.strict = true});
    EXPECT_EQ(r.cnf, c);
  }
}

TEST(WriteDimacs, FileRoundTrip) {
  std::string path = galoissat::testing::temp_dir("cnf_file") + "/f.cnf";
  write_dimacs_file(phi_example(), path);
  EXPECT_EQ(read_dimacs_file(path).cnf, phi_example());
  EXPECT_THROW(read_dimacs_file(path + ".missing"), DimacsError);
}

TEST(VerifyModel, Examples) {
  Assignment a(3);
  a.set(1, true);
  a.set(3, true);
  EXPECT_TRUE(verify_model(phi_example(), a));
  EXPECT_TRUE(verify_model(Cnf(2, {}), Assignment(2)));
  Cnf contradiction(1, {{pos(1)}, {neg(1)}});
  EXPECT_FALSE(verify_model(contradiction, Assignment(1, false)));
  EXPECT_FALSE(verify_model(contradiction, Assignment(1, true)));
  EXPECT_THROW(verify_model(phi_example(), Assignment(2)), std::invalid_argument);
}

TEST(VerifyModel, TriviallyUnsatNeverVerifies) {
  auto r = parse_dimacs("p cnf 1 1\n0\n");
  EXPECT_FALSE(verify_model(r.cnf, Assignment(1)));
}

TEST(VerifyModel, AgreesWithNaiveInterpreterExhaustively) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    Var n = 1 + static_cast<Var>(rng.below(10));
    Cnf c = galoissat::testing::random_cnf(rng, n, 1 + rng.below(20), 1, 4);
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      Assignment a(n);
      for (Var v = 1; v <= n; ++v) a.set(v, (x >> (v - 1)) & 1);
      bool expect = true;
      for (const auto& cl : c.clauses()) {
        bool any = false;
        for (Literal l : cl) any = any || (l.negated ? !a.value(l.var) : a.value(l.var));
        expect = expect && any;
      }
      ASSERT_EQ(verify_model(c, a), expect);
    }
  }
}

TEST(AugmentWithUnits, AppendsInOrder) {
  std::vector<Literal> units = {pos(1), neg(3)};
  Cnf aug = augment_with_units(phi_example(), units);
  ASSERT_EQ(aug.num_clauses(), 4u);
  EXPECT_EQ(aug.clause(2), Clause{pos(1)});
  EXPECT_EQ(aug.clause(3), Clause{neg(3)});
  EXPECT_EQ(aug.clause(0), phi_example().clause(0));
  EXPECT_EQ(augment_with_units(phi_example(), {}), phi_example());
}

TEST(AugmentWithUnits, RejectsConflictsAndRange) {
  std::vector<Literal> dup = {pos(1), neg(1)};
  std::vector<Literal> twice = {pos(2), pos(2)};
  std::vector<Literal> range = {pos(4)};
  EXPECT_THROW(augment_with_units(phi_example(), dup), std::invalid_argument);
  EXPECT_THROW(augment_with_units(phi_example(), twice), std::invalid_argument);
  EXPECT_THROW(augment_with_units(phi_example(), range), std::invalid_argument);
}

TEST(AugmentWithUnits, ModelLiteralsKeepFormulaSat) {
  Rng rng(21);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 60; ++i) {
    Var n = 3 + static_cast<Var>(rng.below(13));
    Cnf c = galoissat::testing::random_ksat(rng, n, 3.0);
    auto model = galoissat::testing::brute_force(c);
    if (!model) continue;
    ++checked;
    std::vector<Literal> units;
    for (Var v = 1; v <= n; ++v)
      if (rng.below(3) == 0) units.push_back({v, !model->value(v)});
    EXPECT_TRUE(brute_force_sat(augment_with_units(c, units)));
  }
  EXPECT_GE(checked, 30);
}

TEST(AugmentWithUnits, EquivalentToRestriction) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    Var n = 2 + static_cast<Var>(rng.below(11));
    Cnf c = galoissat::testing::random_cnf(rng, n, 1 + rng.below(3 * n), 1, 4);
    std::vector<Literal> units;
    for (Var v = 1; v <= n; ++v)
      if (rng.below(4) == 0) units.push_back({v, rng.below(2) == 1});
    bool restricted = false;
    for (std::uint32_t x = 0; x < (1u << n) && !restricted; ++x) {
      Assignment a(n);
      for (Var v = 1; v <= n; ++v) a.set(v, (x >> (v - 1)) & 1);
      bool consistent = true;
      for (Literal l : units) consistent = consistent && a.satisfies(l);
      restricted = consistent && verify_model(c, a);
    }
    EXPECT_EQ(brute_force_sat(augment_with_units(c, units)), restricted);
  }
}

TEST(Cnf, ConstructorValidates) {
  EXPECT_THROW(Cnf(2, {{}}), std::invalid_argument);
  EXPECT_THROW(Cnf(2, {{pos(3)}}), std::invalid_argument);
}
