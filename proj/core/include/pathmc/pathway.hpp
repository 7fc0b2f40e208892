#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pathmc {

using SpeciesId = std::uint32_t;

struct Species {
  SpeciesId id = 0;
  std::string name;
};

// A reaction `reactants -> products [catalysts]`. Reactant and product
// lists keep their textual order: position j of the reactants corresponds
// to position j of the products when the pathway is in normal form.
// Catalysts are kept sorted by id.
struct Reaction {
  std::string id;
  std::vector<SpeciesId> reactants;
  std::vector<SpeciesId> products;
  std::vector<SpeciesId> catalysts;

  bool catalysed() const noexcept { return !catalysts.empty(); }

  // reactants ∪ products ∪ catalysts, sorted and duplicate-free.
  std::vector<SpeciesId> species() const;
};

enum class Provenance { Declared, HeuristicSource, HeuristicManual };

std::string_view to_string(Provenance p) noexcept;

struct InitialSpec {
  std::map<SpeciesId, Provenance> present;

  bool contains(SpeciesId s) const { return present.count(s) != 0; }
  std::vector<SpeciesId> species() const;
};

// Returns true when `name` is a valid species (or reaction id) token of the
// pathway file format.
bool is_species_token(std::string_view name) noexcept;

class Pathway {
 public:
  // Returns the id of `name`, adding it to the species table if missing.
  // Throws ModelError when the name is not a valid token.
  SpeciesId intern(std::string_view name);

  std::optional<SpeciesId> find(std::string_view name) const;
  const std::string& name(SpeciesId id) const { return species_.at(id).name; }
  std::size_t species_count() const noexcept { return species_.size(); }
  const std::vector<Species>& species() const noexcept { return species_; }

  // Adds a reaction after checking its invariants. An empty id is replaced
  // by `R<k>` where k is the 1-based position of the reaction.
  void add_reaction(Reaction reaction);
  const std::vector<Reaction>& reactions() const noexcept { return reactions_; }
  const Reaction* find_reaction(std::string_view id) const;

  const InitialSpec& initial() const noexcept { return initial_; }
  void set_initial(InitialSpec spec);

  // species(P): every species occurring in some reaction, sorted by id.
  std::vector<SpeciesId> used_species() const;
  // Species in the table that no reaction mentions (declared only by init).
  std::vector<SpeciesId> unused_species() const;

  std::vector<std::string> names(const std::vector<SpeciesId>& ids) const;

 private:
  std::vector<Species> species_;
  std::unordered_map<std::string, SpeciesId> by_name_;
  std::vector<Reaction> reactions_;
  std::unordered_map<std::string, std::size_t> by_reaction_id_;
  InitialSpec initial_;
};

// Parses the line-oriented `.pw` format:
//
//   # comment
//   R1: A + B -> C + D [E, F]
//   A -> B
//   init: A, E
//
// Throws ParseError (with position) on lexical errors, duplicate species in
// one role of a reaction, duplicate reaction ids and unknown directives.
Pathway parse_pathway(std::string_view text);

// Trailing `# ...` comments of reaction lines, keyed by reaction id. Used to
// carry projection annotations through the text format.
struct AnnotatedPathway {
  Pathway pathway;
  std::map<std::string, std::string> annotations;
};
AnnotatedPathway parse_annotated_pathway(std::string_view text);

// Prints `p` in `.pw` syntax with explicit reaction ids and a single
// trailing `init:` line. parse_pathway(print_pathway(p)) is isomorphic to p.
std::string print_pathway(const Pathway& p);
std::string format_reaction(const Pathway& p, const Reaction& r);

struct NormalFormViolation {
  std::string reaction;
  std::size_t reactants = 0;
  std::size_t products = 0;
};

// One entry per reaction whose reactant and product counts differ.
std::vector<NormalFormViolation> validate_normal_form(const Pathway& p);

}  // namespace pathmc
