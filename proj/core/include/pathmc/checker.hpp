#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathmc/formula.hpp"
#include "pathmc/lts.hpp"

namespace pathmc {

// Strong fairness for one rule: if the rule is enabled infinitely often it
// is taken infinitely often. Enabledness of a rule at a state coincides with
// the state having an out-edge labelled by that rule.
struct CompassionPair {
  std::uint32_t rule = 0;
};

// One pair per rule in the system's fairness scope.
std::vector<CompassionPair> fairness_pairs(const Lts& lts);

// Maximal fair strongly connected subgraphs of the subgraph induced by
// `within` (all states when empty). A component qualifies when it has an
// internal edge and, for every pair, either no member enables the rule or
// an internal edge carries it. Members enabling a rule that is never taken
// inside are pruned and the rest is decomposed again.
std::vector<std::vector<StateIndex>> fair_sccs(
    const Lts& lts, std::span<const CompassionPair> pairs,
    const std::vector<char>& within = {});

struct Witness {
  enum class Kind {
    Initial,   // the initial state itself refutes a propositional part
    Prefix,    // a prefix reaching a refuting state; any fair continuation
    Deadlock,  // a finite maximal path
    Lasso,     // stem followed by a fair cycle repeated forever
  };

  Kind kind = Kind::Initial;
  std::vector<StateIndex> states;
  std::vector<std::uint32_t> rules;   // rules[i]: states[i] -> states[i+1]
  std::optional<std::size_t> loop_start;  // cycle re-enters states[loop_start]

  std::string describe(const Lts& lts) const;
};

struct CheckStats {
  std::size_t states = 0;
  std::size_t sccs = 0;
  std::size_t fair_sccs = 0;
  double time_ms = 0.0;
};

struct CheckResult {
  bool verdict = false;
  // Satisfaction vector per subformula, children before parents; the last
  // entry belongs to the checked formula.
  std::vector<std::pair<const Formula*, std::vector<char>>> labels;
  CheckStats stats;
  // Set for false verdicts unless refuting the formula needs a branching
  // counterexample (a disjunction of two temporal subformulas).
  std::optional<Witness> witness;

  const std::vector<char>& sat(const Formula& f) const;
};

// Labels every state with the subformulas it satisfies when path
// quantifiers range over fair maximal paths. Finite maximal paths are fair.
// Throws ModelError when a literal names a species outside the system.
CheckResult check(const Lts& lts, std::span<const CompassionPair> pairs,
                  const Formula& f);

}  // namespace pathmc
