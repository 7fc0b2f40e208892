#include <gtest/gtest.h>

#include "generators.hpp"
#include "pathmc/error.hpp"
#include "pathmc/formula.hpp"

namespace pathmc {
namespace {

using namespace actl;

TEST(Formula, EventuallyOfDisjunction) {
  const FormulaPtr f = parse_formula("AF (ERK-PP | ERK-PPi)");
  const FormulaPtr expected = until(top(), disj(lit("ERK-PP"), lit("ERK-PPi")));
  EXPECT_TRUE(structurally_equal(*f, *expected)) << to_string(*f);
}

TEST(Formula, ImplicationUnderAlways) {
  const FormulaPtr f = parse_formula("AG (Raf* -> AF (ERK-PP | ERK-PPi))");
  const FormulaPtr expected = weak_until(
      disj(lit("Raf*", true), until(top(), disj(lit("ERK-PP"), lit("ERK-PPi")))),
      bottom());
  EXPECT_TRUE(structurally_equal(*f, *expected)) << to_string(*f);
}

TEST(Formula, NegatedTemporalIsRejected) {
  try {
    parse_formula("!(AF x)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 1u);
  }
}

TEST(Formula, TemporalAntecedentIsRejected) {
  EXPECT_THROW(parse_formula("AF a -> b"), ParseError);
}

TEST(Formula, NegationIsPushedToLiterals) {
  const FormulaPtr f = parse_formula("!(a & !b)");
  EXPECT_TRUE(structurally_equal(*f, *disj(lit("a", true), lit("b"))));
}

TEST(Formula, PrecedenceAndBindsTighterThanOr) {
  const FormulaPtr f = parse_formula("a | b & c");
  EXPECT_TRUE(structurally_equal(*f, *disj(lit("a"), conj(lit("b"), lit("c")))));
}

TEST(Formula, ExplicitUntilForms) {
  EXPECT_TRUE(structurally_equal(*parse_formula("A[a U b]"), *until(lit("a"), lit("b"))));
  EXPECT_TRUE(structurally_equal(*parse_formula("A[ a W !b ]"),
                                 *weak_until(lit("a"), lit("b", true))));
}

TEST(Formula, UnknownSpeciesAgainstTable) {
  try {
    parse_formula("AF (A | Q)", {"A", "B"});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 9u);
    EXPECT_NE(std::string(e.what()).find("unknown species"), std::string::npos);
  }
}

TEST(Formula, LongestSpeciesMatch) {
  const std::vector<std::string> table{"(EGF-EGFR*)2", "(EGF-EGFR*)2-GAP"};
  const FormulaPtr f = parse_formula("AF (EGF-EGFR*)2-GAP", table);
  EXPECT_TRUE(structurally_equal(*f, *eventually(lit("(EGF-EGFR*)2-GAP"))));
}

TEST(Formula, AtomsAndDepth) {
  const FormulaPtr f = parse_formula("AG (a -> AF (b | c))");
  EXPECT_EQ(atoms(*f), (std::set<std::string>{"a", "b", "c"}));
  EXPECT_EQ(depth(*f), 2u);
  EXPECT_EQ(depth(*parse_formula("a & b")), 0u);
}

TEST(Formula, NegateRejectsTemporal) {
  EXPECT_THROW(negate(eventually(lit("a"))), ModelError);
}

TEST(Properties, NamedLines) {
  const auto props = parse_properties("# comment\nreach: AF C\n\nsafe: AG !C\n");
  ASSERT_EQ(props.size(), 2u);
  EXPECT_EQ(props[0].name, "reach");
  EXPECT_EQ(props[1].text, "AG !C");
}

TEST(Properties, DuplicateNames) {
  EXPECT_THROW(parse_properties("p: AF a\np: AG a\n"), ParseError);
}

TEST(Properties, ErrorPositionIsInTheFile) {
  try {
    parse_properties("ok: AF a\nbad: AF (a |\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 5u);
  }
}

TEST(FormulaProperty, PrintParseRoundTrip) {
  testing::Rng rng(3);
  const std::vector<std::string> species{"A", "B-P", "C*", "(X-Y)2"};
  for (int i = 0; i < 2000; ++i) {
    const FormulaPtr f = testing::random_formula(rng, species, i % 4);
    const std::string text = to_string(*f);
    const FormulaPtr g = parse_formula(text, species);
    ASSERT_TRUE(structurally_equal(*f, *g)) << text << " vs " << to_string(*g);
    ASSERT_EQ(to_string(*g), text);
  }
}

}  // namespace
}  // namespace pathmc
