#include "pathmc/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pathmc/error.hpp"

namespace pathmc {

namespace {

using StateSet = std::vector<char>;

class Graph {
 public:
  explicit Graph(const Lts& lts) : lts_(lts), pred_(lts.state_count()) {
    for (StateIndex v = 0; v < lts.state_count(); ++v) {
      states_.push_back(lts.state(v));
      for (const Edge& e : lts.out_edges(v)) pred_[e.target].push_back(v);
    }
  }

  std::size_t size() const { return states_.size(); }
  const State& state(StateIndex v) const { return states_[v]; }
  std::span<const Edge> succ(StateIndex v) const { return lts_.out_edges(v); }
  const std::vector<StateIndex>& pred(StateIndex v) const { return pred_[v]; }
  const Lts& lts() const { return lts_; }

  bool enables(StateIndex v, std::uint32_t rule) const {
    return lts_.rules()[rule].enabled(states_[v]);
  }

  bool deadlock(StateIndex v) const {
    const auto& rules = lts_.rules();
    return std::none_of(rules.begin(), rules.end(),
                        [&](const Rule& r) { return r.enabled(states_[v]); });
  }

  // States reachable from `from` along edges of `dir` staying inside `in`.
  template <typename Next>
  StateSet reach(StateIndex from, const StateSet& in, Next next) const {
    StateSet seen(size(), 0);
    std::vector<StateIndex> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      const StateIndex v = stack.back();
      stack.pop_back();
      next(v, [&](StateIndex w) {
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      });
    }
    return seen;
  }

  StateSet forward(StateIndex from, const StateSet& in) const {
    return reach(from, in, [&](StateIndex v, auto visit) {
      for (const Edge& e : succ(v)) visit(e.target);
    });
  }

  StateSet backward(StateIndex from, const StateSet& in) const {
    return reach(from, in, [&](StateIndex v, auto visit) {
      for (StateIndex u : pred(v)) visit(u);
    });
  }

 private:
  const Lts& lts_;
  std::vector<State> states_;
  std::vector<std::vector<StateIndex>> pred_;
};

std::vector<std::uint32_t> pair_rules(std::span<const CompassionPair> pairs) {
  std::vector<std::uint32_t> rules;
  for (const CompassionPair& p : pairs) rules.push_back(p.rule);
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  return rules;
}

// A set of states qualifies as the infinitely-visited part of a fair path
// when it has an internal edge and every compassion rule enabled in it
// labels one of its internal edges.
bool fair_set(const Graph& g, const std::vector<std::uint32_t>& rules,
              const StateSet& set) {
  bool has_edge = false;
  std::set<std::uint32_t> taken;
  for (StateIndex v = 0; v < g.size(); ++v) {
    if (!set[v]) continue;
    for (const Edge& e : g.succ(v)) {
      if (set[e.target]) {
        has_edge = true;
        taken.insert(e.rule);
      }
    }
  }
  if (!has_edge) return false;
  for (std::uint32_t r : rules) {
    for (StateIndex v = 0; v < g.size(); ++v) {
      if (set[v] && g.enables(v, r) && !taken.count(r)) return false;
    }
  }
  return true;
}

std::vector<StateSet> fair_cycle_sets(const Graph& g,
                                      std::span<const CompassionPair> pairs,
                                      const StateSet& within) {
  const auto rules = pair_rules(pairs);
  std::vector<std::uint32_t> live;
  for (std::uint32_t r : rules) {
    for (StateIndex v = 0; v < g.size(); ++v) {
      if (within[v] && g.enables(v, r)) {
        live.push_back(r);
        break;
      }
    }
  }
  if (live.size() > 20) {
    throw ResourceError("too many compassion rules for the reference checker");
  }

  // Guess the rules never enabled on the cycle and look for a strongly
  // connected set among the states that enable none of them.
  std::set<StateSet> regions;
  std::set<StateSet> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << live.size());
       ++mask) {
    StateSet region = within;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (!((mask >> i) & 1u)) continue;
      for (StateIndex v = 0; v < g.size(); ++v) {
        if (region[v] && g.enables(v, live[i])) region[v] = 0;
      }
    }
    if (!regions.insert(region).second) continue;

    StateSet assigned(g.size(), 0);
    for (StateIndex v = 0; v < g.size(); ++v) {
      if (!region[v] || assigned[v]) continue;
      const StateSet fwd = g.forward(v, region);
      const StateSet bwd = g.backward(v, region);
      StateSet cls(g.size(), 0);
      for (StateIndex w = 0; w < g.size(); ++w) {
        cls[w] = fwd[w] && bwd[w];
        if (cls[w]) assigned[w] = 1;
      }
      if (fair_set(g, rules, cls)) found.insert(std::move(cls));
    }
  }
  return {found.begin(), found.end()};
}

class Oracle {
 public:
  Oracle(const Lts& lts, std::span<const CompassionPair> pairs)
      : g_(lts), pairs_(pairs) {
    const StateSet all(g_.size(), 1);
    for (const StateSet& set : fair_cycle_sets(g_, pairs_, all)) {
      for (StateIndex v = 0; v < g_.size(); ++v) {
        if (set[v]) { continuation_targets_.push_back(v); }
      }
    }
    for (StateIndex v = 0; v < g_.size(); ++v) {
      if (g_.deadlock(v)) continuation_targets_.push_back(v);
    }
  }

  const StateSet& eval(const Formula& f) {
    if (auto it = memo_.find(&f); it != memo_.end()) return it->second;
    StateSet out = compute(f);
    return memo_.emplace(&f, std::move(out)).first->second;
  }

 private:
  StateSet compute(const Formula& f) {
    const std::size_t n = g_.size();
    StateSet out(n, 0);
    switch (f.kind) {
      case Formula::Kind::True:
        std::fill(out.begin(), out.end(), 1);
        break;
      case Formula::Kind::False:
        break;
      case Formula::Kind::Literal: {
        const auto& names = g_.lts().species();
        const auto it = std::find(names.begin(), names.end(), f.species);
        if (it == names.end()) {
          throw ModelError("formula refers to species '" + f.species +
                           "' outside the model");
        }
        const auto index = static_cast<std::size_t>(it - names.begin());
        for (StateIndex v = 0; v < n; ++v) {
          out[v] = g_.state(v).test(index) != f.negated;
        }
        break;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        const StateSet a = eval(*f.lhs);
        const StateSet b = eval(*f.rhs);
        for (StateIndex v = 0; v < n; ++v) {
          out[v] = f.kind == Formula::Kind::And ? (a[v] && b[v])
                                                : (a[v] || b[v]);
        }
        break;
      }
      case Formula::Kind::Until:
      case Formula::Kind::WeakUntil:
        out = until(f);
        break;
    }
    return out;
  }

  // A fair maximal path exists from every state; checked rather than
  // assumed, since a violating prefix only counts if it can be completed.
  bool has_fair_continuation(StateIndex v) {
    if (continuation_.empty()) {
      continuation_.assign(g_.size(), 0);
      const StateSet all(g_.size(), 1);
      for (StateIndex t : continuation_targets_) {
        const StateSet back = g_.backward(t, all);
        for (StateIndex u = 0; u < g_.size(); ++u) {
          if (back[u]) continuation_[u] = 1;
        }
      }
    }
    return continuation_[v] != 0;
  }

  StateSet until(const Formula& f) {
    const std::size_t n = g_.size();
    const StateSet a = eval(*f.lhs);
    const StateSet b = eval(*f.rhs);
    StateSet pass(n, 0);     // f ∧ ¬g: the path may continue through these
    StateSet violate(n, 0);  // ¬f ∧ ¬g: reaching one refutes the formula
    for (StateIndex v = 0; v < n; ++v) {
      pass[v] = a[v] && !b[v];
      violate[v] = !a[v] && !b[v] && has_fair_continuation(v);
    }

    StateSet stuck(n, 0);  // end of a violating maximal path inside `pass`
    if (f.kind == Formula::Kind::Until) {
      for (StateIndex v = 0; v < n; ++v) {
        if (pass[v] && g_.deadlock(v)) stuck[v] = 1;
      }
      for (const StateSet& set : fair_cycle_sets(g_, pairs_, pass)) {
        for (StateIndex v = 0; v < n; ++v) {
          if (set[v]) stuck[v] = 1;
        }
      }
    }

    StateSet out(n, 1);
    for (StateIndex s = 0; s < n; ++s) {
      if (b[s]) continue;
      if (violate[s]) {
        out[s] = 0;
        continue;
      }
      const StateSet reachable = g_.forward(s, pass);
      for (StateIndex v = 0; v < n && out[s]; ++v) {
        if (!reachable[v]) continue;
        if (stuck[v]) out[s] = 0;
        for (const Edge& e : g_.succ(v)) {
          if (violate[e.target]) out[s] = 0;
        }
      }
    }
    return out;
  }

  Graph g_;
  std::span<const CompassionPair> pairs_;
  std::vector<StateIndex> continuation_targets_;
  StateSet continuation_;
  std::map<const Formula*, StateSet> memo_;
};

Path::Loop loop_to(std::size_t target, const Lts& lts, std::uint32_t rule) {
  return Path::Loop{target, lts.rules()[rule].label};
}

// Shortest path inside `in` from `from` to `to`, as (rule, state) steps.
std::vector<std::pair<std::uint32_t, StateIndex>> route(
    const Graph& g, StateIndex from, StateIndex to, const StateSet& in) {
  std::vector<std::int64_t> parent(g.size(), -1);
  std::vector<std::uint32_t> via(g.size(), 0);
  std::vector<StateIndex> queue{from};
  parent[from] = from;
  for (std::size_t head = 0; head < queue.size() && parent[to] < 0; ++head) {
    const StateIndex v = queue[head];
    for (const Edge& e : g.succ(v)) {
      if (!in[e.target] || parent[e.target] >= 0) continue;
      parent[e.target] = v;
      via[e.target] = e.rule;
      queue.push_back(e.target);
    }
  }
  std::vector<std::pair<std::uint32_t, StateIndex>> steps;
  if (from == to) return steps;
  for (StateIndex x = to; x != from; x = static_cast<StateIndex>(parent[x])) {
    steps.emplace_back(via[x], x);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace

bool oracle_check(const Lts& lts, std::span<const CompassionPair> pairs,
                  const Formula& f, const OracleOptions& options) {
  if (lts.state_count() > options.state_cap) {
    throw ResourceError("reference checker is limited to " +
                        std::to_string(options.state_cap) + " states");
  }
  Oracle oracle(lts, pairs);
  return oracle.eval(f)[Lts::initial()] != 0;
}

std::vector<std::vector<StateIndex>> oracle_fair_cycles(
    const Lts& lts, std::span<const CompassionPair> pairs,
    const std::vector<char>& within) {
  const Graph g(lts);
  const StateSet in = within.empty() ? StateSet(g.size(), 1) : within;
  std::vector<std::vector<StateIndex>> out;
  for (const StateSet& set : fair_cycle_sets(g, pairs, in)) {
    std::vector<StateIndex> members;
    for (StateIndex v = 0; v < g.size(); ++v) {
      if (set[v]) members.push_back(v);
    }
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Path> enumerate_fair_paths(const Lts& lts,
                                       std::span<const CompassionPair> pairs,
                                       std::size_t limit) {
  const Graph g(lts);
  const StateSet all(g.size(), 1);
  const auto sets = fair_cycle_sets(g, pairs, all);

  // Closed walk through every internal edge of each fair set, per entry.
  const auto cycle_from = [&](const StateSet& set, StateIndex entry) {
    std::vector<std::pair<std::uint32_t, StateIndex>> steps;
    StateIndex cur = entry;
    for (StateIndex v = 0; v < g.size(); ++v) {
      if (!set[v]) continue;
      for (const Edge& e : g.succ(v)) {
        if (!set[e.target]) continue;
        auto to_source = route(g, cur, v, set);
        steps.insert(steps.end(), to_source.begin(), to_source.end());
        steps.emplace_back(e.rule, e.target);
        cur = e.target;
      }
    }
    auto back = route(g, cur, entry, set);
    steps.insert(steps.end(), back.begin(), back.end());
    return steps;
  };

  std::vector<Path> out;
  std::vector<StateIndex> stack_states{Lts::initial()};
  std::vector<std::uint32_t> stack_rules;
  StateSet on_path(g.size(), 0);
  on_path[Lts::initial()] = 1;

  const auto emit_prefix = [&](Path& p) {
    for (StateIndex v : stack_states) p.states.push_back(g.state(v));
    for (std::uint32_t r : stack_rules) p.labels.push_back(lts.rules()[r].label);
  };

  // Depth-first enumeration of simple paths; explicit stack of edge cursors.
  std::vector<std::size_t> cursor{0};
  while (!cursor.empty() && out.size() < limit) {
    const StateIndex v = stack_states.back();
    if (cursor.back() == 0) {
      if (g.deadlock(v)) {
        Path p;
        emit_prefix(p);
        out.push_back(std::move(p));
      }
      for (const StateSet& set : sets) {
        if (!set[v] || out.size() >= limit) continue;
        Path p;
        emit_prefix(p);
        const auto steps = cycle_from(set, v);
        const std::size_t entry = p.states.size() - 1;
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
          p.labels.push_back(lts.rules()[steps[i].first].label);
          p.states.push_back(g.state(steps[i].second));
        }
        p.loop = loop_to(entry, lts, steps.back().first);
        out.push_back(std::move(p));
      }
    }
    const auto edges = g.succ(v);
    if (cursor.back() < edges.size()) {
      const Edge e = edges[cursor.back()++];
      if (on_path[e.target]) continue;
      on_path[e.target] = 1;
      stack_states.push_back(e.target);
      stack_rules.push_back(e.rule);
      cursor.push_back(0);
      continue;
    }
    on_path[v] = 0;
    stack_states.pop_back();
    if (!stack_rules.empty()) stack_rules.pop_back();
    cursor.pop_back();
  }
  return out;
}

bool path_is_fair(const Lts& lts, std::span<const CompassionPair> pairs,
                  const Path& path) {
  if (!path.loop) return true;
  const std::size_t start = path.loop->target;
  std::set<std::string> taken{path.loop->label};
  for (std::size_t i = start; i < path.labels.size(); ++i) {
    taken.insert(path.labels[i]);
  }
  for (std::uint32_t r : pair_rules(pairs)) {
    const Rule& rule = lts.rules()[r];
    bool enabled_on_cycle = false;
    for (std::size_t i = start; i < path.states.size(); ++i) {
      if (rule.enabled(path.states[i])) enabled_on_cycle = true;
    }
    if (enabled_on_cycle && !taken.count(rule.origin) &&
        !taken.count(rule.label)) {
      return false;
    }
  }
  return true;
}

}  // namespace pathmc
