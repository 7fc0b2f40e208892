#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "pathmc/checker.hpp"
#include "pathmc/error.hpp"
#include "pathmc/formula.hpp"
#include "pathmc/projection.hpp"

namespace pathmc {
namespace {

State make(const Pathway& p, std::initializer_list<const char*> present) {
  std::vector<SpeciesId> ids;
  for (const char* n : present) ids.push_back(*p.find(n));
  return to_state(p, ids);
}

std::vector<ComponentId> all_components(const ComponentMap& m) {
  std::vector<ComponentId> out(m.size());
  for (ComponentId c = 0; c < m.size(); ++c) out[c] = c;
  return out;
}

struct TwoLoopsProjection : ::testing::Test {
  Pathway p = testing::two_loops();
  ComponentMap m = identify_components(p);
  ComponentId abc = m.component_of(*p.find("A"));
  ComponentId d = m.component_of(*p.find("D"));
};

TEST_F(TwoLoopsProjection, SpeciesOfCatalystComponent) {
  // Every reaction has D as catalyst, so every species is touched.
  EXPECT_EQ(p.names(species_of_components(p, m, {d})),
            p.names(p.used_species()));
}

TEST_F(TwoLoopsProjection, SpeciesOfAllComponents) {
  EXPECT_EQ(species_of_components(p, m, all_components(m)), p.used_species());
}

TEST(Projection, UntouchedComponentHasNoSpecies) {
  Pathway p = parse_pathway("A -> B\n");
  p.intern("Z");
  const ComponentMap m = identify_components(p);
  EXPECT_TRUE(species_of_components(p, m, {m.component_of(*p.find("Z"))}).empty());
}

TEST_F(TwoLoopsProjection, FullProjectionKeepsEverything) {
  const AbstractPathway ap = project(p, m, all_components(m));
  EXPECT_EQ(ap.concrete.size(), p.reactions().size());
  EXPECT_TRUE(ap.boundary.empty());
}

TEST_F(TwoLoopsProjection, EmptyProjection) {
  const AbstractPathway ap = project(p, m, {});
  EXPECT_TRUE(ap.concrete.empty());
  EXPECT_TRUE(ap.boundary.empty());
}

TEST_F(TwoLoopsProjection, SubstrateComponentHasOnlyBoundaryReactions) {
  const AbstractPathway ap = project(p, m, {abc});
  EXPECT_TRUE(ap.concrete.empty());
  // Four reactions cross the boundary, two entries each.
  ASSERT_EQ(ap.boundary.size(), 8u);
  const AbstractReaction& prod = ap.boundary[0];
  const AbstractReaction& stut = ap.boundary[1];
  EXPECT_EQ(prod.origin, "R1");
  EXPECT_EQ(prod.variant, Variant::Productive);
  EXPECT_EQ(format_reaction(p, prod.base), "A -> B");
  EXPECT_TRUE(prod.origin_catalysed);
  EXPECT_EQ(stut.variant, Variant::Stutter);
  EXPECT_EQ(format_reaction(p, stut.base), "A -> A");
  EXPECT_TRUE(stut.origin_catalysed);
}

TEST_F(TwoLoopsProjection, UnknownComponentIsRejected) {
  EXPECT_THROW(project(p, m, {ComponentId{7}}), ModelError);
}

TEST_F(TwoLoopsProjection, StutterFiresWithoutChange) {
  const AbstractPathway ap = project(p, m, {abc});
  const State s = make(p, {"A", "D"});
  EXPECT_EQ(abstract_step(s, ap.boundary[1]), s);
}

TEST_F(TwoLoopsProjection, ProductiveConsumesForCatalysedOrigin) {
  const AbstractPathway ap = project(p, m, {abc});
  EXPECT_EQ(abstract_step(make(p, {"A"}), ap.boundary[0]), make(p, {"B"}));
}

TEST_F(TwoLoopsProjection, ProductiveNeedsAChange) {
  Pathway q = parse_pathway("R1: A -> B\nR2: C -> D [A]\n");
  const ComponentMap mq = identify_components(q);
  const AbstractPathway ap = project(q, mq, {mq.component_of(*q.find("A"))});
  // R2 restricted to {A, B} is "-> [A]"; firing adds nothing.
  ASSERT_EQ(ap.boundary.size(), 2u);
  EXPECT_FALSE(abstract_step(make(q, {"A"}), ap.boundary[0]).has_value());
  EXPECT_TRUE(abstract_step(make(q, {"A"}), ap.boundary[1]).has_value());
}

TEST_F(TwoLoopsProjection, AbstractSystemLabelsAndFairness) {
  const RuleSystem sys = abstract_system(p, project(p, m, {abc}));
  ASSERT_EQ(sys.rules.size(), 8u);
  EXPECT_EQ(sys.rules[0].label, "R1_prod");
  EXPECT_EQ(sys.rules[1].label, "R1_stut");
  EXPECT_EQ(sys.rules[1].origin, "R1");
  EXPECT_TRUE(sys.fairness_scope.empty());
  EXPECT_EQ(sys.species, (std::vector<std::string>{"A", "B", "C"}));
}

TEST_F(TwoLoopsProjection, PrintedAbstractionReadsBack) {
  const AbstractPathway ap = project(p, m, {abc});
  const std::string text = print_abstract(p, ap);
  EXPECT_NE(text.find("origin=R1 variant=productive origin_catalysed=true"),
            std::string::npos);
  const Lts direct = build_lts(abstract_system(p, ap));
  const Lts reread = build_lts(annotated_system(parse_annotated_pathway(text)));
  EXPECT_TRUE(testing::isomorphic(direct, reread));
}

TEST_F(TwoLoopsProjection, PathProjectionKeepsTouchingSteps) {
  const AbstractPathway ap = project(p, m, {abc});
  Path path;
  path.states = {make(p, {"A", "D"}), make(p, {"B", "D"})};
  path.labels = {"R1"};
  const Path projected = project_path(path, p, m, ap);
  ASSERT_EQ(projected.states.size(), 2u);
  EXPECT_EQ(projected.states[0], restrict_state(path.states[0], ap));
  EXPECT_EQ(projected.states[1], restrict_state(path.states[1], ap));
  EXPECT_EQ(projected.labels, (std::vector<std::string>{"R1"}));
}

TEST(PathProjection, DropsForeignSteps) {
  const Pathway p = parse_pathway("R1: A -> B\nR2: X -> Y\ninit: A, X\n");
  const ComponentMap m = identify_components(p);
  const AbstractPathway ap = project(p, m, {m.component_of(*p.find("A"))});
  Path path;
  path.states = {make(p, {"A", "X"}), make(p, {"A", "X", "Y"}),
                 make(p, {"A", "B", "X", "Y"})};
  path.labels = {"R2", "R1"};
  const Path projected = project_path(path, p, m, ap);
  EXPECT_EQ(projected.labels, (std::vector<std::string>{"R1"}));
  EXPECT_EQ(projected.states.size(), 2u);
}

TEST(PathProjection, EmptyPathStuttersForever) {
  const Pathway p = parse_pathway("R1: A -> B\ninit: A\n");
  const ComponentMap m = identify_components(p);
  const AbstractPathway ap = project(p, m, {0});
  Path path;
  path.states = {initial_state(p)};
  const Path projected = project_path(path, p, m, ap);
  EXPECT_FALSE(projected.infinite());
  EXPECT_EQ(projected.states.size(), 1u);
  const Path forever = project_path_infinite(path, p, m, ap);
  ASSERT_TRUE(forever.infinite());
  EXPECT_EQ(forever.loop->label, kStutterLabel);
  EXPECT_EQ(forever.loop->target, 0u);
}

TEST_F(TwoLoopsProjection, InfiniteProjectionOfLassoIsTheProjection) {
  const AbstractPathway ap = project(p, m, {abc});
  Path path;
  path.states = {make(p, {"A", "D"}), make(p, {"B", "D"})};
  path.labels = {"R1"};
  path.loop = Path::Loop{0, "R2"};
  const Path a = project_path(path, p, m, ap);
  const Path b = project_path_infinite(path, p, m, ap);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.labels, b.labels);
  ASSERT_TRUE(b.infinite());
  EXPECT_EQ(b.loop->label, "R2");
  EXPECT_TRUE(is_maximal_path(build_lts(abstract_system(p, ap)), b));
}

// Every concrete edge touching J has an abstract counterpart from the
// restricted source to the restricted target.
TEST(ProjectionProperty, CommutingSquare) {
  testing::Rng rng(99);
  std::size_t edges_checked = 0;
  for (int i = 0; i < 500; ++i) {
    testing::PathwayShape shape;
    shape.cyclic = i % 2 == 0;
    shape.max_species = 8;
    const Pathway p = testing::random_pathway(rng, shape);
    const ComponentMap m = identify_components(p);
    std::vector<ComponentId> j;
    for (ComponentId c = 0; c < m.size(); ++c) {
      if (std::bernoulli_distribution(0.5)(rng)) j.push_back(c);
    }
    const AbstractPathway ap = project(p, m, j);
    const Lts concrete = build_lts(p);
    const Lts abstract = build_lts(abstract_system(p, ap));
    std::vector<char> selected(m.size(), 0);
    for (ComponentId c : ap.components) selected[c] = 1;
    for (StateIndex v = 0; v < concrete.state_count(); ++v) {
      for (const Edge& e : concrete.out_edges(v)) {
        const Reaction& r = *p.find_reaction(concrete.rules()[e.rule].origin);
        const auto comps = m.components_of(r);
        if (std::none_of(comps.begin(), comps.end(),
                         [&](ComponentId c) { return selected[c] != 0; })) {
          continue;
        }
        const auto from = abstract.find(restrict_state(concrete.state(v), ap));
        const auto to = abstract.find(restrict_state(concrete.state(e.target), ap));
        ASSERT_TRUE(from && to) << print_pathway(p);
        const auto out = abstract.out_edges(*from);
        const bool matched = std::any_of(out.begin(), out.end(), [&](const Edge& a) {
          return a.target == *to && abstract.rules()[a.rule].origin == r.id &&
                 abstract.rules()[a.rule].label.find("_stut") == std::string::npos;
        });
        EXPECT_TRUE(matched || *from == *to) << print_pathway(p) << r.id;
        ++edges_checked;
      }
    }
  }
  EXPECT_GT(edges_checked, 500u);
}

// Tracking foreign species of touched reactions breaks preservation: D is
// tracked because R1 uses it, but the dropped reaction R2 consumes it.
TEST(ProjectionScope, TouchedSpeciesIsUnsound) {
  const Pathway p = parse_pathway("R1: A -> B [D]\nR2: D -> E [F]\ninit: A, D, F\n");
  const ComponentMap m = identify_components(p);
  const ComponentId ab = m.component_of(*p.find("A"));
  const FormulaPtr f = parse_formula("AG D");

  const Lts concrete = build_lts(p);
  EXPECT_FALSE(check(concrete, fairness_pairs(concrete), *f).verdict);

  const Lts touched =
      build_lts(abstract_system(p, project(p, m, {ab}, ProjectionScope::TouchedSpecies)));
  EXPECT_TRUE(check(touched, fairness_pairs(touched), *f).verdict);

  const AbstractPathway members = project(p, m, {ab});
  EXPECT_FALSE(members.tracks(*p.find("D")));
}

}  // namespace
}  // namespace pathmc
