#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pathmc/components.hpp"
#include "pathmc/lts.hpp"
#include "pathmc/pathway.hpp"
#include "pathmc/rules.hpp"
#include "pathmc/state.hpp"

namespace pathmc {

// Which species an abstract pathway keeps track of.
enum class ProjectionScope {
  // The members of the selected components.
  Components,
  // Every species of every reaction touching a selected component
  // (species_of_components). Kept for comparison: foreign species tracked
  // this way can be changed by dropped reactions, so verdicts obtained on
  // such projections are not preserved.
  TouchedSpecies,
};

enum class Variant { Productive, Stutter };

std::string_view to_string(Variant v) noexcept;

struct AbstractReaction {
  Reaction base;  // reactants/catalysts restricted to the tracked species
  Variant variant = Variant::Productive;
  std::string origin;
  bool origin_catalysed = false;
};

struct AbstractPathway {
  std::vector<Reaction> concrete;            // reactions inside J
  std::vector<AbstractReaction> boundary;    // two entries per boundary reaction
  std::vector<ComponentId> components;       // J, sorted
  std::vector<SpeciesId> species;            // tracked species, sorted by id
  InitialSpec initial;                       // initial(P) ∩ tracked species
  ProjectionScope scope = ProjectionScope::Components;

  bool tracks(SpeciesId s) const;
};

// species(J) = { s ∈ species(R) : R ∈ P, comp(R) ∩ J ≠ ∅ }.
std::vector<SpeciesId> species_of_components(
    const Pathway& p, const ComponentMap& m,
    const std::vector<ComponentId>& components);

// Union of the classes in J.
std::vector<SpeciesId> component_species(
    const ComponentMap& m, const std::vector<ComponentId>& components);

// P↾J: reactions with comp(R) ⊆ J are kept verbatim; every reaction with
// components on both sides of J yields a productive and a stutter entry.
// Throws ModelError for unknown component ids.
AbstractPathway project(const Pathway& p, const ComponentMap& m,
                        std::vector<ComponentId> components,
                        ProjectionScope scope = ProjectionScope::Components);

// Productive entries fire when reactants and catalysts are present and the
// firing changes the state; their effect consumes reactants iff the
// original reaction was catalysed. Stutter entries need reactants and
// catalysts only and leave the state unchanged.
//
// `s` is indexed by pathway species ids; untracked bits are ignored.
std::optional<State> abstract_step(const State& s, const AbstractReaction& ar);

// Compiles an abstract pathway to rules over its tracked species (in
// species id order). Concrete reactions carry compassion; boundary entries
// do not. Labels are the reaction id for concrete reactions and
// `<origin>_prod` / `<origin>_stut` for boundary entries.
RuleSystem abstract_system(const Pathway& p, const AbstractPathway& ap);

// s↾J as a state of abstract_system(p, ap).
State restrict_state(const State& s, const AbstractPathway& ap);

// `.pw` text with one `# origin=<id> variant=<...> origin_catalysed=<bool>`
// annotation per boundary entry.
std::string print_abstract(const Pathway& p, const AbstractPathway& ap);

// Rebuilds the rule system of an annotated `.pw` text. Reactions without an
// annotation are concrete and carry compassion.
RuleSystem annotated_system(const AnnotatedPathway& doc);

// A finite path s0 R0 s1 ... sn, optionally continued forever by the edge
// sn --loop.label--> states[loop.target] and the segment after it.
struct Path {
  struct Loop {
    std::size_t target = 0;
    std::string label;
  };

  std::vector<State> states;
  std::vector<std::string> labels;  // labels[i]: states[i] -> states[i+1]
  std::optional<Loop> loop;

  bool infinite() const noexcept { return loop.has_value(); }
};

// Label used for the stutter steps appended by project_path_infinite.
inline constexpr std::string_view kStutterLabel = "*";

// π↾J: drops steps of reactions with comp(R) ∩ J = ∅ and restricts the
// remaining states to the tracked species.
Path project_path(const Path& path, const Pathway& p, const ComponentMap& m,
                  const AbstractPathway& ap);

// π⇃∞J: project_path, followed by endless `*` stutter steps at the final
// state when the projection is finite.
Path project_path_infinite(const Path& path, const Pathway& p,
                           const ComponentMap& m, const AbstractPathway& ap);

// True when `path` starts at the initial state of `lts`, every step is an
// edge whose rule originates from the step's label (`*` matches any
// self-loop), and a finite path ends in a deadlock.
bool is_maximal_path(const Lts& lts, const Path& path);

}  // namespace pathmc
