#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "pathmc/error.hpp"
#include "pathmc/lts.hpp"

namespace pathmc {
namespace {

State make(const Pathway& p, std::initializer_list<const char*> present) {
  std::vector<SpeciesId> ids;
  for (const char* n : present) ids.push_back(*p.find(n));
  return to_state(p, ids);
}

TEST(Enabled, ReactantsAndCatalystPresentProductAbsent) {
  const Pathway p = parse_pathway("R1: A -> B [D]\n");
  const Reaction& r = p.reactions()[0];
  EXPECT_TRUE(enabled(make(p, {"A", "D"}), r));
  EXPECT_FALSE(enabled(make(p, {"A", "B", "D"}), r));
  EXPECT_FALSE(enabled(make(p, {"A"}), r));
}

TEST(Step, CatalysedConsumes) {
  const Pathway p = parse_pathway("R1: A -> B [D]\n");
  EXPECT_EQ(step(make(p, {"A", "D"}), p.reactions()[0]), make(p, {"B", "D"}));
}

TEST(Step, UncatalysedKeepsReactants) {
  const Pathway p = parse_pathway("R1: A -> B\n");
  EXPECT_EQ(step(make(p, {"A"}), p.reactions()[0]), make(p, {"A", "B"}));
}

TEST(Step, DisabledYieldsNothing) {
  const Pathway p = parse_pathway("R1: A -> B [D]\n");
  EXPECT_FALSE(step(make(p, {"A"}), p.reactions()[0]).has_value());
}

TEST(Step, TwoLoopsBackward) {
  const Pathway p = testing::two_loops();
  // Rule (cat) by hand: {B,D} minus {B} plus {A}.
  State expected = make(p, {"B", "D"});
  expected.set(*p.find("B"), false);
  expected.set(*p.find("A"));
  EXPECT_EQ(step(make(p, {"B", "D"}), *p.find_reaction("R2")), expected);
}

// Closure over all 2^n subsets: a subset is reachable when it is the
// initial state or a one-reaction successor of a reachable subset.
struct BruteForce {
  std::set<std::uint64_t> states;
  std::size_t edges = 0;
  std::size_t deadlocks = 0;
};

BruteForce brute_force(const Pathway& p) {
  const std::size_t n = p.species_count();
  const auto as_state = [&](std::uint64_t bits) {
    State s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, (bits >> i) & 1u);
    return s;
  };
  const auto as_bits = [&](const State& s) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) bits |= std::uint64_t{s.test(i)} << i;
    return bits;
  };
  BruteForce out;
  out.states.insert(as_bits(initial_state(p)));
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      if (out.states.count(bits)) continue;
      for (std::uint64_t from : out.states) {
        bool hit = false;
        for (const Reaction& r : p.reactions()) {
          const auto next = step(as_state(from), r);
          hit = hit || (next && as_bits(*next) == bits);
        }
        if (hit) {
          out.states.insert(bits);
          grew = true;
          break;
        }
      }
    }
  }
  for (std::uint64_t bits : out.states) {
    std::size_t succ = 0;
    for (const Reaction& r : p.reactions()) succ += step(as_state(bits), r) ? 1 : 0;
    out.edges += succ;
    if (succ == 0) ++out.deadlocks;
  }
  return out;
}

TEST(BuildLts, TwoLoopsMatchesSubsetClosure) {
  const Pathway p = testing::two_loops();
  const BruteForce oracle = brute_force(p);
  ASSERT_EQ(oracle.states.size(), 3u);
  ASSERT_EQ(oracle.edges, 4u);
  ASSERT_EQ(oracle.deadlocks, 0u);

  const Lts lts = build_lts(p);
  EXPECT_EQ(lts.state_count(), 3u);
  EXPECT_EQ(lts.edge_count(), 4u);
  EXPECT_TRUE(lts.deadlocks().empty());
  // Species order is first appearance: A, B, D, C.
  std::set<std::string> described;
  for (StateIndex i = 0; i < lts.state_count(); ++i) described.insert(lts.describe(i));
  EXPECT_EQ(described, (std::set<std::string>{"{A, D}", "{B, D}", "{D, C}"}));
  EXPECT_EQ(lts.describe(Lts::initial()), "{A, D}");
}

TEST(BuildLts, NoReactions) {
  Pathway p;
  p.intern("A");
  InitialSpec init;
  init.present.emplace(0, Provenance::Declared);
  p.set_initial(init);
  const Lts lts = build_lts(p);
  EXPECT_EQ(lts.state_count(), 1u);
  EXPECT_EQ(lts.edge_count(), 0u);
  EXPECT_EQ(lts.deadlocks().size(), 1u);
}

TEST(BuildLts, UncatalysedBlocksOnProduct) {
  const Lts lts = build_lts(parse_pathway("R1: A -> B\ninit: A\n"));
  ASSERT_EQ(lts.state_count(), 2u);
  ASSERT_EQ(lts.deadlocks().size(), 1u);
  EXPECT_EQ(lts.describe(lts.deadlocks()[0]), "{A, B}");
}

TEST(BuildLts, StateCapIsAnError) {
  BuildOptions options;
  options.state_cap = 2;
  EXPECT_THROW(build_lts(testing::two_loops(), options), ResourceError);
}

TEST(BuildLts, RandomPathwaysMatchSubsetClosure) {
  testing::Rng rng(11);
  testing::PathwayShape shape;
  shape.max_species = 7;
  for (int i = 0; i < 150; ++i) {
    shape.normal_form = i % 2 == 0;
    shape.cyclic = i % 3 == 0;
    const Pathway p = testing::random_pathway(rng, shape);
    const BruteForce oracle = brute_force(p);
    const Lts lts = build_lts(p);
    ASSERT_EQ(lts.state_count(), oracle.states.size()) << print_pathway(p);
    ASSERT_EQ(lts.edge_count(), oracle.edges) << print_pathway(p);
    ASSERT_EQ(lts.deadlocks().size(), oracle.deadlocks) << print_pathway(p);
  }
}

TEST(BuildLts, DumpListsEveryEdge) {
  const Lts lts = build_lts(testing::two_loops());
  const std::string dump = lts.dump();
  EXPECT_EQ(static_cast<std::size_t>(std::count(dump.begin(), dump.end(), '\n')), 4u);
  EXPECT_EQ(lts.stats_line(), "states=3 edges=4 deadlocks=0");
}

}  // namespace
}  // namespace pathmc
