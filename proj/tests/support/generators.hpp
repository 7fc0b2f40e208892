#pragma once

#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pathmc/formula.hpp"
#include "pathmc/lts.hpp"
#include "pathmc/pathway.hpp"

namespace pathmc::testing {

using Rng = std::mt19937_64;

struct PathwayShape {
  std::size_t max_species = 10;
  std::size_t max_reactions = 8;
  bool normal_form = true;
  double catalyst_probability = 0.7;
  double initial_probability = 0.6;
  // Chance that a reaction is followed by its reverse (same catalysts),
  // which is what makes cycles, and hence fairness, matter.
  double reverse_probability = 0.5;
  // Groups of interconverting species driven by enzyme species instead of
  // independently drawn reactions. Always in normal form.
  bool cyclic = false;
};

// Species are named S0, S1, ...; every pathway has at least one reaction.
// Products and catalysts avoid the reaction's other species when possible.
Pathway random_pathway(Rng& rng, const PathwayShape& shape = {});

// ACTL formula over `species` with temporal nesting at most `depth`.
FormulaPtr random_formula(Rng& rng, const std::vector<std::string>& species,
                          std::size_t depth);

std::vector<std::string> species_names(const Pathway& p);

// Connected components of the graph with an edge r_j -- p_j per reaction,
// by breadth-first search over an adjacency list.
std::set<std::set<std::string>> reference_partition(const Pathway& p);

// Same states (as sets of species names) and the same labelled edges.
bool isomorphic(const Lts& a, const Lts& b);

// The four-reaction system A <-> B, A <-> C, all catalysed by D.
Pathway two_loops();

}  // namespace pathmc::testing
