#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathmc/pathway.hpp"
#include "pathmc/state.hpp"

namespace pathmc {

// How a rule rewrites the state when it fires.
enum class Effect {
  Consume,  // (s \ reactants) ∪ products
  Keep,     // s ∪ products
  Stutter,  // s
};

// When a rule may fire, on top of "reactants and catalysts present".
enum class Guard {
  ProductAbsent,  // some product is absent
  ChangesState,   // firing yields a different state
  None,
};

// A reaction compiled to bit masks over a fixed species universe. Concrete
// reactions and both kinds of projected reaction are expressed this way so
// that one explorer serves every transition system.
struct Rule {
  std::string label;   // unique within its system
  std::string origin;  // id of the pathway reaction this rule stems from
  State reactants;
  State products;
  State catalysts;
  Effect effect = Effect::Keep;
  Guard guard = Guard::ProductAbsent;

  bool enabled(const State& s) const;
  std::optional<State> fire(const State& s) const;
  State apply(const State& s) const;  // effect only, no guard check
};

// A species universe, rules over it, an initial state and the indices of
// the rules that carry a compassion requirement.
struct RuleSystem {
  std::vector<std::string> species;
  std::vector<Rule> rules;
  State initial;
  std::vector<std::size_t> fairness_scope;

  std::optional<std::size_t> find_species(std::string_view name) const;
};

// Rules (cat) and (no-cat) for every reaction of `p`, all under compassion,
// starting from p.initial().
RuleSystem concrete_system(const Pathway& p);

State initial_state(const Pathway& p);
State to_state(const Pathway& p, const std::vector<SpeciesId>& present);

}  // namespace pathmc
