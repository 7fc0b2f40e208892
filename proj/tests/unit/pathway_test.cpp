#include <gtest/gtest.h>

#include "pathmc/error.hpp"
#include "pathmc/pathway.hpp"

namespace pathmc {
namespace {

std::vector<std::string> names(const Pathway& p, const std::vector<SpeciesId>& ids) {
  return p.names(ids);
}

TEST(Pathway, ParsesCatalysedReaction) {
  const Pathway p = parse_pathway("R1: A -> B [D]\n");
  ASSERT_EQ(p.reactions().size(), 1u);
  const Reaction& r = p.reactions()[0];
  EXPECT_EQ(r.id, "R1");
  EXPECT_EQ(names(p, r.reactants), (std::vector<std::string>{"A"}));
  EXPECT_EQ(names(p, r.products), (std::vector<std::string>{"B"}));
  EXPECT_EQ(names(p, r.catalysts), (std::vector<std::string>{"D"}));
}

TEST(Pathway, SpeciesNamesMayCarryMarks) {
  const Pathway p = parse_pathway("Rm: MEK -> MEK-P [Raf*]\n");
  const Reaction& r = p.reactions()[0];
  EXPECT_EQ(names(p, r.reactants), (std::vector<std::string>{"MEK"}));
  EXPECT_EQ(names(p, r.products), (std::vector<std::string>{"MEK-P"}));
  EXPECT_EQ(names(p, r.catalysts), (std::vector<std::string>{"Raf*"}));
  EXPECT_TRUE(r.catalysed());
}

TEST(Pathway, RejectsDuplicateReactant) {
  try {
    parse_pathway("R: A + A -> B + C\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
  }
}

TEST(Pathway, RejectsDuplicateReactionId) {
  EXPECT_THROW(parse_pathway("R1: A -> B\nR1: B -> A\n"), ParseError);
}

TEST(Pathway, RejectsMissingArrow) {
  EXPECT_THROW(parse_pathway("R1: A B\n"), ParseError);
}

TEST(Pathway, AnonymousReactionsAreNumbered) {
  const Pathway p = parse_pathway("A -> B\nB -> A [C]\n");
  EXPECT_EQ(p.reactions()[0].id, "R1");
  EXPECT_EQ(p.reactions()[1].id, "R2");
}

TEST(Pathway, InitialLine) {
  const Pathway p = parse_pathway("R1: A -> B [D]\ninit: A, D\n");
  EXPECT_EQ(names(p, p.initial().species()), (std::vector<std::string>{"A", "D"}));
}

TEST(Pathway, CommentsAndBlankLinesAreIgnored) {
  const Pathway p = parse_pathway("# header\n\nR1: A -> B  # trailing\n");
  EXPECT_EQ(p.reactions().size(), 1u);
}

TEST(Pathway, PrintRoundTrip) {
  const Pathway p = parse_pathway(
      "R1: A + B -> C + D [E, F]\nR2: C -> A\ninit: A, B, E\n");
  const std::string text = print_pathway(p);
  const Pathway q = parse_pathway(text);
  EXPECT_EQ(print_pathway(q), text);
  ASSERT_EQ(q.reactions().size(), 2u);
  EXPECT_EQ(format_reaction(q, q.reactions()[0]), "A + B -> C + D [E, F]");
}

TEST(NormalForm, CatalysedConversionIsFine) {
  EXPECT_TRUE(validate_normal_form(parse_pathway("A -> B [D]\n")).empty());
}

TEST(NormalForm, ReportsCountMismatch) {
  const auto v = validate_normal_form(parse_pathway("Rx: A + B -> C\n"));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].reaction, "Rx");
  EXPECT_EQ(v[0].reactants, 2u);
  EXPECT_EQ(v[0].products, 1u);
}

TEST(NormalForm, EmptyPathway) {
  EXPECT_TRUE(validate_normal_form(Pathway{}).empty());
}

}  // namespace
}  // namespace pathmc
