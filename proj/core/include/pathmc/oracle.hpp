#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pathmc/checker.hpp"
#include "pathmc/formula.hpp"
#include "pathmc/lts.hpp"
#include "pathmc/projection.hpp"

namespace pathmc {

// Reference model checker with no shared code path with check(): it
// decides path quantifiers from explicit path shapes (finite maximal paths,
// violating prefixes, lassos) and filters infinite paths by the fairness
// formula evaluated literally on the set of states and rules a lasso cycle
// visits, with enabledness taken from the rules rather than the edges.
struct OracleOptions {
  std::size_t state_cap = 4096;
};

bool oracle_check(const Lts& lts, std::span<const CompassionPair> pairs,
                  const Formula& f, const OracleOptions& options = {});

// Sets of states that can be the infinitely-visited part of a fair path
// staying inside `within` (all states when empty): strongly connected,
// with at least one internal edge, every pair satisfied with respect to
// all internal edges.
std::vector<std::vector<StateIndex>> oracle_fair_cycles(
    const Lts& lts, std::span<const CompassionPair> pairs,
    const std::vector<char>& within = {});

// Fair maximal paths from the initial state: every finite maximal simple
// path, and every lasso made of a simple stem entering a fair cycle set
// followed by a closed walk through all of that set's internal edges. Stops
// after `limit` paths.
std::vector<Path> enumerate_fair_paths(const Lts& lts,
                                       std::span<const CompassionPair> pairs,
                                       std::size_t limit = 20000);

// Literal fairness of an explicit path of `lts`: finite paths are fair; a
// lasso is fair when each compassion rule enabled somewhere on its cycle
// labels some step of the cycle.
bool path_is_fair(const Lts& lts, std::span<const CompassionPair> pairs,
                  const Path& path);

}  // namespace pathmc
