#include "pathmc/rules.hpp"

#include "pathmc/error.hpp"

namespace pathmc {

bool Rule::enabled(const State& s) const {
  if (!s.contains_all(reactants) || !s.contains_all(catalysts)) return false;
  switch (guard) {
    case Guard::ProductAbsent:
      return !s.contains_all(products);
    case Guard::ChangesState:
      return !(apply(s) == s);
    case Guard::None:
      return true;
  }
  return false;
}

State Rule::apply(const State& s) const {
  State next = s;
  switch (effect) {
    case Effect::Consume:
      next.subtract(reactants);
      next |= products;
      break;
    case Effect::Keep:
      next |= products;
      break;
    case Effect::Stutter:
      break;
  }
  return next;
}

std::optional<State> Rule::fire(const State& s) const {
  if (!enabled(s)) return std::nullopt;
  return apply(s);
}

std::optional<std::size_t> RuleSystem::find_species(
    std::string_view name) const {
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (species[i] == name) return i;
  }
  return std::nullopt;
}

State to_state(const Pathway& p, const std::vector<SpeciesId>& present) {
  State s(p.species_count());
  for (SpeciesId id : present) {
    if (id >= p.species_count()) {
      throw ModelError("state refers to an unknown species");
    }
    s.set(id);
  }
  return s;
}

State initial_state(const Pathway& p) {
  return to_state(p, p.initial().species());
}

RuleSystem concrete_system(const Pathway& p) {
  RuleSystem system;
  const std::size_t width = p.species_count();
  system.species.reserve(width);
  for (const Species& s : p.species()) system.species.push_back(s.name);
  system.rules.reserve(p.reactions().size());
  for (const Reaction& r : p.reactions()) {
    Rule rule;
    rule.label = r.id;
    rule.origin = r.id;
    rule.reactants = to_state(p, r.reactants);
    rule.products = to_state(p, r.products);
    rule.catalysts = to_state(p, r.catalysts);
    rule.effect = r.catalysed() ? Effect::Consume : Effect::Keep;
    rule.guard = Guard::ProductAbsent;
    system.fairness_scope.push_back(system.rules.size());
    system.rules.push_back(std::move(rule));
  }
  system.initial = initial_state(p);
  return system;
}

}  // namespace pathmc
