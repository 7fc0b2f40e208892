#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathmc/pathway.hpp"

namespace pathmc {

using ComponentId = std::uint32_t;

// Disjoint sets over dense ids with path compression and union by rank.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t size() const noexcept { return parent_.size(); }
  std::uint32_t find(std::uint32_t x);
  // Returns false when x and y were already in one class.
  bool unite(std::uint32_t x, std::uint32_t y);

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// Partition of a pathway's species table into molecular components.
//
// Component ids are dense and ordered by the smallest species id of each
// class. The default component name is the lexicographically least species
// name of the class; users may rename components.
class ComponentMap {
 public:
  ComponentMap() = default;
  ComponentMap(const Pathway& p, UnionFind& classes);

  std::size_t size() const noexcept { return members_.size(); }
  ComponentId component_of(SpeciesId s) const { return of_.at(s); }
  // Members sorted by species name.
  const std::vector<SpeciesId>& members(ComponentId c) const {
    return members_.at(c);
  }
  // Smallest species id of the class.
  SpeciesId representative(ComponentId c) const {
    return representative_.at(c);
  }
  const std::string& name(ComponentId c) const { return names_.at(c); }
  void rename(ComponentId c, std::string name);

  // Looks up a component by its name, or by the name of a member species.
  std::optional<ComponentId> find(const Pathway& p,
                                  std::string_view name) const;

  // comp(R), sorted.
  std::vector<ComponentId> components_of(const Reaction& r) const;

  // Classes as sets of species names (for comparisons in tests).
  std::set<std::set<std::string>> partition(const Pathway& p) const;

 private:
  std::vector<ComponentId> of_;
  std::vector<std::vector<SpeciesId>> members_;
  std::vector<SpeciesId> representative_;
  std::vector<std::string> names_;
};

// Unifies the classes of r_j and p_j for every reaction and position j,
// starting from singleton classes. Throws ModelError naming the first
// reaction whose reactant and product counts differ.
ComponentMap identify_components(const Pathway& p);

// Applies `name: species` assignments: each entry names the component that
// contains the given species.
void apply_component_names(const Pathway& p, ComponentMap& m,
                           const std::map<std::string, std::string>& names);
std::map<std::string, std::string> parse_component_names(std::string_view text);

struct InitialInference {
  InitialSpec initial;
  // Components with no present species after the never-produced phase.
  std::vector<ComponentId> needs_manual;
  // Components still without any present species after manual choices.
  std::vector<ComponentId> unresolved;
  std::vector<std::string> warnings;
};

// Marks every species that no reaction produces as present, then adds the
// manual choices. In strict mode unresolved components are an error;
// otherwise they stay absent and a warning is emitted.
InitialInference infer_initial_state(const Pathway& p, const ComponentMap& m,
                                     const std::vector<SpeciesId>& manual,
                                     bool strict = false);

struct InteractionGraph {
  std::vector<ComponentId> vertices;
  // Pairs (a, b) with a < b: components that are both on the reactant side
  // of some reaction.
  std::set<std::pair<ComponentId, ComponentId>> undirected;
  // (catalyst component, reactant component).
  std::set<std::pair<ComponentId, ComponentId>> directed;
};

InteractionGraph interaction_graph(const Pathway& p, const ComponentMap& m);

// Graphviz rendering; undirected edges carry `dir=both`.
std::string to_dot(const InteractionGraph& g, const ComponentMap& m);

}  // namespace pathmc
