#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathmc/pathway.hpp"
#include "pathmc/rules.hpp"
#include "pathmc/state.hpp"

namespace pathmc {

using StateIndex = std::uint32_t;

// enabled(R) at s: reactants present, some product absent, catalysts present.
bool enabled(const State& s, const Reaction& r);

// Rule (cat) when R has catalysts, rule (no-cat) otherwise. Empty when R is
// not enabled at s.
std::optional<State> step(const State& s, const Reaction& r);

struct Edge {
  StateIndex target = 0;
  std::uint32_t rule = 0;
};

struct BuildOptions {
  static constexpr std::size_t kDefaultStateCap = 10'000'000;
  std::size_t state_cap = kDefaultStateCap;

  // Reads the cap from PATHMC_STATE_CAP when set.
  static BuildOptions from_environment();
};

// The reachable fragment of a rule system's transition graph. States are
// numbered in breadth-first discovery order; the initial state is 0.
// Out-edges of a state follow rule order.
class Lts {
 public:
  const RuleSystem& system() const noexcept { return system_; }
  const std::vector<Rule>& rules() const noexcept { return system_.rules; }
  const std::vector<std::string>& species() const noexcept {
    return system_.species;
  }

  std::size_t state_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  static constexpr StateIndex initial() noexcept { return 0; }

  State state(StateIndex i) const;
  bool test(StateIndex i, std::size_t species) const noexcept {
    return (store_[i * stride_ + species / 64] >> (species % 64)) & 1u;
  }
  std::optional<StateIndex> find(const State& s) const;

  std::span<const Edge> out_edges(StateIndex i) const noexcept {
    return {edges_.data() + offsets_[i], edges_.data() + offsets_[i + 1]};
  }
  bool is_deadlock(StateIndex i) const noexcept {
    return offsets_[i] == offsets_[i + 1];
  }
  const std::vector<StateIndex>& deadlocks() const noexcept {
    return deadlocks_;
  }

  // Species names present in state i, in species order.
  std::vector<std::string> present_names(StateIndex i) const;
  // "{A, D}"
  std::string describe(StateIndex i) const;

  // `states=<n> edges=<m> deadlocks=<k>`
  std::string stats_line() const;
  // One line per edge: bits(source) \t rule label \t bits(target).
  std::string dump() const;

 private:
  friend Lts build_lts(RuleSystem system, const BuildOptions& options);

  std::uint64_t slot_hash(const std::uint64_t* words) const noexcept;
  std::optional<StateIndex> lookup(const std::uint64_t* words) const noexcept;
  void insert_slot(StateIndex i);
  void grow_table();

  RuleSystem system_;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> store_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Edge> edges_;
  std::vector<StateIndex> deadlocks_;
  // Open-addressing index over store_: entries hold state index + 1.
  std::vector<StateIndex> table_;
};

// Breadth-first closure of the rules from the initial state. Throws
// ResourceError when more than options.state_cap states are reachable.
Lts build_lts(RuleSystem system, const BuildOptions& options = {});
Lts build_lts(const Pathway& p, const BuildOptions& options = {});

}  // namespace pathmc
