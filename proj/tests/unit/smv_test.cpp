#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "pathmc/components.hpp"
#include "pathmc/projection.hpp"
#include "pathmc/smv.hpp"

namespace pathmc {
namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size())) {
    ++n;
  }
  return n;
}

TEST(Smv, TwoLoopsShape) {
  const std::string smv = export_smv(concrete_system(testing::two_loops()));
  EXPECT_EQ(count(smv, " : boolean;"), 4u);
  EXPECT_EQ(count(smv, "COMPASSION ("), 4u);
  EXPECT_NE(smv.find("MODULE main"), std::string::npos);
  EXPECT_NE(smv.find("en_r0_R1 := (sp0_A & sp2_D & !sp1_B);"), std::string::npos);
}

TEST(Smv, NoConcreteReactionsNoCompassion) {
  const Pathway p = testing::two_loops();
  const ComponentMap m = identify_components(p);
  const AbstractPathway ap = project(p, m, {m.component_of(*p.find("A"))});
  ASSERT_TRUE(ap.concrete.empty());
  const std::string smv = export_smv(abstract_system(p, ap));
  EXPECT_EQ(count(smv, "COMPASSION"), 0u);
  EXPECT_EQ(count(smv, " : boolean;"), 3u);
}

TEST(Smv, StableAcrossRuns) {
  const RuleSystem sys = concrete_system(testing::two_loops());
  EXPECT_EQ(export_smv(sys), export_smv(sys));
}

TEST(Smv, MatchesGolden) {
  std::ifstream in(std::string(PATHMC_GOLDEN_DIR) + "/two_loops.smv");
  ASSERT_TRUE(in) << "missing golden file";
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(export_smv(concrete_system(testing::two_loops())), golden.str());
}

TEST(Smv, NamesAreSanitised) {
  const std::string smv =
      export_smv(concrete_system(parse_pathway("R-1: Raf -> Raf* [Ras]\ninit: Raf, Ras\n")));
  EXPECT_NE(smv.find("sp1_Raf_ : boolean; -- Raf*"), std::string::npos);
  EXPECT_EQ(smv.find("Raf* :"), std::string::npos);
}

}  // namespace
}  // namespace pathmc
