#include "pathmc/checker.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "pathmc/error.hpp"

namespace pathmc {

namespace {

constexpr std::uint32_t kNoGroup = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

// Strongly connected components of the states carrying group id `g`.
class Tarjan {
 public:
  explicit Tarjan(const Lts& lts)
      : lts_(lts),
        index_(lts.state_count(), kUnvisited),
        low_(lts.state_count(), 0),
        on_stack_(lts.state_count(), 0) {}

  std::vector<std::vector<StateIndex>> run(
      const std::vector<StateIndex>& region,
      const std::vector<std::uint32_t>& group, std::uint32_t g) {
    for (StateIndex v : region) index_[v] = kUnvisited;
    counter_ = 0;
    std::vector<std::vector<StateIndex>> out;
    std::vector<std::pair<StateIndex, std::size_t>> calls;
    for (StateIndex root : region) {
      if (index_[root] != kUnvisited) continue;
      open(root);
      calls.emplace_back(root, 0);
      while (!calls.empty()) {
        const StateIndex v = calls.back().first;
        const auto edges = lts_.out_edges(v);
        if (calls.back().second < edges.size()) {
          const StateIndex w = edges[calls.back().second++].target;
          if (group[w] != g) continue;
          if (index_[w] == kUnvisited) {
            open(w);
            calls.emplace_back(w, 0);
          } else if (on_stack_[w]) {
            low_[v] = std::min(low_[v], index_[w]);
          }
          continue;
        }
        calls.pop_back();
        if (!calls.empty()) {
          const StateIndex u = calls.back().first;
          low_[u] = std::min(low_[u], low_[v]);
        }
        if (low_[v] == index_[v]) {
          std::vector<StateIndex> component;
          StateIndex w;
          do {
            w = stack_.back();
            stack_.pop_back();
            on_stack_[w] = 0;
            component.push_back(w);
          } while (w != v);
          out.push_back(std::move(component));
        }
      }
    }
    return out;
  }

 private:
  void open(StateIndex v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_stack_[v] = 1;
  }

  const Lts& lts_;
  std::vector<std::uint32_t> index_;
  std::vector<std::uint32_t> low_;
  std::vector<char> on_stack_;
  std::vector<StateIndex> stack_;
  std::uint32_t counter_ = 0;
};

struct FairSccResult {
  std::vector<std::vector<StateIndex>> fair;
  std::size_t sccs = 0;
};

FairSccResult compute_fair_sccs(const Lts& lts,
                                std::span<const CompassionPair> pairs,
                                const std::vector<char>& within) {
  const std::size_t n = lts.state_count();
  std::vector<char> is_pair(lts.rules().size(), 0);
  for (const CompassionPair& p : pairs) is_pair.at(p.rule) = 1;

  std::vector<std::uint32_t> group(n, kNoGroup);
  std::uint32_t next_group = 0;
  std::vector<StateIndex> initial;
  for (StateIndex v = 0; v < n; ++v) {
    if (within.empty() || within[v]) initial.push_back(v);
  }

  FairSccResult result;
  Tarjan tarjan(lts);
  std::vector<std::vector<StateIndex>> work;
  if (!initial.empty()) work.push_back(std::move(initial));
  std::vector<char> triggered(lts.rules().size(), 0);
  std::vector<char> internal(lts.rules().size(), 0);

  while (!work.empty()) {
    std::vector<StateIndex> region = std::move(work.back());
    work.pop_back();
    const std::uint32_t g = next_group++;
    for (StateIndex v : region) group[v] = g;

    for (auto& component : tarjan.run(region, group, g)) {
      ++result.sccs;
      const std::uint32_t c = next_group++;
      for (StateIndex v : component) group[v] = c;

      bool has_internal_edge = false;
      std::fill(triggered.begin(), triggered.end(), 0);
      std::fill(internal.begin(), internal.end(), 0);
      for (StateIndex v : component) {
        for (const Edge& e : lts.out_edges(v)) {
          const bool inside = group[e.target] == c;
          has_internal_edge = has_internal_edge || inside;
          if (!is_pair[e.rule]) continue;
          triggered[e.rule] = 1;
          if (inside) internal[e.rule] = 1;
        }
      }
      if (!has_internal_edge) continue;

      bool fair = true;
      for (const CompassionPair& p : pairs) {
        if (triggered[p.rule] && !internal[p.rule]) fair = false;
      }
      if (fair) {
        result.fair.push_back(std::move(component));
        continue;
      }
      std::vector<StateIndex> rest;
      for (StateIndex v : component) {
        const auto edges = lts.out_edges(v);
        const bool triggers_bad =
            std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
              return is_pair[e.rule] && !internal[e.rule];
            });
        if (!triggers_bad) rest.push_back(v);
      }
      if (!rest.empty()) work.push_back(std::move(rest));
    }
  }
  for (auto& component : result.fair) {
    std::sort(component.begin(), component.end());
  }
  std::sort(result.fair.begin(), result.fair.end());
  return result;
}

// Predecessor lists in CSR form.
struct Reverse {
  std::vector<std::uint32_t> offsets;
  std::vector<StateIndex> sources;

  explicit Reverse(const Lts& lts) : offsets(lts.state_count() + 1, 0) {
    for (StateIndex v = 0; v < lts.state_count(); ++v) {
      for (const Edge& e : lts.out_edges(v)) ++offsets[e.target + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
      offsets[i] += offsets[i - 1];
    }
    sources.resize(lts.edge_count());
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (StateIndex v = 0; v < lts.state_count(); ++v) {
      for (const Edge& e : lts.out_edges(v)) sources[fill[e.target]++] = v;
    }
  }

  std::span<const StateIndex> predecessors(StateIndex v) const {
    return {sources.data() + offsets[v], sources.data() + offsets[v + 1]};
  }
};

class Checker {
 public:
  Checker(const Lts& lts, std::span<const CompassionPair> pairs)
      : lts_(lts), pairs_(pairs), reverse_(lts) {}

  const std::vector<char>& label(const Formula& f) {
    if (auto it = index_.find(&f); it != index_.end()) {
      return result_.labels[it->second].second;
    }
    std::vector<char> sat = compute(f);
    index_.emplace(&f, result_.labels.size());
    result_.labels.emplace_back(&f, std::move(sat));
    return result_.labels.back().second;
  }

  std::optional<Witness> witness(const Formula& f, StateIndex s) {
    Witness w;
    w.states.push_back(s);
    if (!explain(f, w)) return std::nullopt;
    return w;
  }

  CheckResult take() { return std::move(result_); }
  CheckStats& stats() { return result_.stats; }

 private:
  std::vector<char> compute(const Formula& f) {
    const std::size_t n = lts_.state_count();
    switch (f.kind) {
      case Formula::Kind::True:
        return std::vector<char>(n, 1);
      case Formula::Kind::False:
        return std::vector<char>(n, 0);
      case Formula::Kind::Literal: {
        const auto species = lts_.system().find_species(f.species);
        if (!species) {
          throw ModelError("formula refers to species '" + f.species +
                           "' outside the model");
        }
        std::vector<char> sat(n);
        for (StateIndex v = 0; v < n; ++v) {
          sat[v] = lts_.test(v, *species) != f.negated;
        }
        return sat;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<char> sat = label(*f.lhs);
        const std::vector<char>& rhs = label(*f.rhs);
        for (StateIndex v = 0; v < n; ++v) {
          sat[v] = f.kind == Formula::Kind::And ? (sat[v] && rhs[v])
                                                : (sat[v] || rhs[v]);
        }
        return sat;
      }
      case Formula::Kind::Until:
      case Formula::Kind::WeakUntil: {
        const std::vector<char> fail = failing(f);
        std::vector<char> sat(n);
        for (StateIndex v = 0; v < n; ++v) sat[v] = !fail[v];
        return sat;
      }
    }
    return {};
  }

  // ¬g states from which a fair maximal path violates the until.
  std::vector<char> failing(const Formula& f) {
    const std::size_t n = lts_.state_count();
    const std::vector<char> lhs = label(*f.lhs);
    const std::vector<char>& rhs = label(*f.rhs);
    std::vector<char> region(n);
    for (StateIndex v = 0; v < n; ++v) region[v] = !rhs[v];

    std::vector<char> fail(n, 0);
    std::deque<StateIndex> queue;
    const auto seed = [&](StateIndex v) {
      if (!fail[v]) {
        fail[v] = 1;
        queue.push_back(v);
      }
    };
    for (StateIndex v = 0; v < n; ++v) {
      if (region[v] && !lhs[v]) seed(v);
    }
    if (f.kind == Formula::Kind::Until) {
      for (StateIndex v : lts_.deadlocks()) {
        if (region[v]) seed(v);
      }
      FairSccResult fair = compute_fair_sccs(lts_, pairs_, region);
      result_.stats.sccs += fair.sccs;
      result_.stats.fair_sccs += fair.fair.size();
      for (const auto& component : fair.fair) {
        for (StateIndex v : component) seed(v);
      }
      fair_cache_[&f] = std::move(fair.fair);
    }
    while (!queue.empty()) {
      const StateIndex v = queue.front();
      queue.pop_front();
      for (StateIndex u : reverse_.predecessors(v)) {
        if (region[u] && !fail[u]) {
          fail[u] = 1;
          queue.push_back(u);
        }
      }
    }
    return fail;
  }

  // Shortest path inside `allowed` from `from` to a state accepted by
  // `goal`, as (states, rules) appended to `w`.
  template <typename Goal>
  bool walk(Witness& w, const std::vector<char>& allowed, Goal goal) {
    const StateIndex from = w.states.back();
    if (goal(from)) return true;
    const std::size_t n = lts_.state_count();
    std::vector<std::int64_t> parent(n, -1);
    std::vector<std::uint32_t> via(n, 0);
    std::deque<StateIndex> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
      const StateIndex v = queue.front();
      queue.pop_front();
      for (const Edge& e : lts_.out_edges(v)) {
        if (parent[e.target] >= 0 || !allowed[e.target]) continue;
        parent[e.target] = v;
        via[e.target] = e.rule;
        if (goal(e.target)) {
          std::vector<StateIndex> states;
          std::vector<std::uint32_t> rules;
          for (StateIndex x = e.target; x != from;
               x = static_cast<StateIndex>(parent[x])) {
            states.push_back(x);
            rules.push_back(via[x]);
          }
          w.states.insert(w.states.end(), states.rbegin(), states.rend());
          w.rules.insert(w.rules.end(), rules.rbegin(), rules.rend());
          return true;
        }
        queue.push_back(e.target);
      }
    }
    return false;
  }

  // Extends `w`, whose last state falsifies `f`, into a counterexample.
  bool explain(const Formula& f, Witness& w) {
    const StateIndex s = w.states.back();
    if (propositional(f)) {
      w.kind = w.states.size() == 1 ? Witness::Kind::Initial
                                    : Witness::Kind::Prefix;
      return true;
    }
    if (f.kind == Formula::Kind::And) {
      return explain(label(*f.lhs)[s] ? *f.rhs : *f.lhs, w);
    }
    if (f.kind == Formula::Kind::Or) {
      if (propositional(*f.lhs)) return explain(*f.rhs, w);
      if (propositional(*f.rhs)) return explain(*f.lhs, w);
      return false;
    }

    const std::vector<char> lhs = label(*f.lhs);
    std::vector<char> region = label(*f.rhs);
    for (char& v : region) v = !v;

    if (f.kind == Formula::Kind::WeakUntil) {
      if (!walk(w, region, [&](StateIndex v) { return !lhs[v]; })) {
        return false;
      }
      return explain(*f.lhs, w);
    }

    const auto& fair = fair_cache_.at(&f);
    std::vector<std::int64_t> member(lts_.state_count(), -1);
    for (std::size_t c = 0; c < fair.size(); ++c) {
      for (StateIndex v : fair[c]) member[v] = static_cast<std::int64_t>(c);
    }
    const bool reached = walk(w, region, [&](StateIndex v) {
      return !lhs[v] || lts_.is_deadlock(v) || member[v] >= 0;
    });
    if (!reached) return false;
    const StateIndex t = w.states.back();
    if (!lhs[t]) return explain(*f.lhs, w);
    if (lts_.is_deadlock(t)) {
      w.kind = Witness::Kind::Deadlock;
      return true;
    }
    close_cycle(w, fair[static_cast<std::size_t>(member[t])]);
    return true;
  }

  // Appends a closed walk through `component` that takes one internal edge
  // of every compassion rule enabled in it.
  void close_cycle(Witness& w, const std::vector<StateIndex>& component) {
    std::vector<char> inside(lts_.state_count(), 0);
    for (StateIndex v : component) inside[v] = 1;
    const StateIndex entry = w.states.back();
    const std::size_t loop_start = w.states.size() - 1;

    std::vector<Edge> required;
    std::vector<StateIndex> required_source;
    for (const CompassionPair& p : pairs_) {
      for (StateIndex v : component) {
        const auto edges = lts_.out_edges(v);
        const auto it = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
          return e.rule == p.rule && inside[e.target];
        });
        if (it != edges.end()) {
          required.push_back(*it);
          required_source.push_back(v);
          break;
        }
      }
    }
    const auto take = [&](StateIndex source, const Edge& e) {
      walk(w, inside, [&](StateIndex v) { return v == source; });
      w.rules.push_back(e.rule);
      w.states.push_back(e.target);
    };
    for (std::size_t i = 0; i < required.size(); ++i) {
      take(required_source[i], required[i]);
    }
    if (w.states.size() - 1 == loop_start) {
      for (const Edge& e : lts_.out_edges(entry)) {
        if (inside[e.target]) {
          take(entry, e);
          break;
        }
      }
    }
    // Return to the entry state; the last step becomes the loop edge.
    walk(w, inside, [&](StateIndex v) { return v == entry; });
    w.states.pop_back();
    w.kind = Witness::Kind::Lasso;
    w.loop_start = loop_start;
  }

  const Lts& lts_;
  std::span<const CompassionPair> pairs_;
  Reverse reverse_;
  CheckResult result_;
  std::map<const Formula*, std::size_t> index_;
  std::map<const Formula*, std::vector<std::vector<StateIndex>>> fair_cache_;
};

}  // namespace

std::vector<CompassionPair> fairness_pairs(const Lts& lts) {
  std::vector<CompassionPair> out;
  for (std::size_t r : lts.system().fairness_scope) {
    out.push_back({static_cast<std::uint32_t>(r)});
  }
  return out;
}

std::vector<std::vector<StateIndex>> fair_sccs(
    const Lts& lts, std::span<const CompassionPair> pairs,
    const std::vector<char>& within) {
  return compute_fair_sccs(lts, pairs, within).fair;
}

const std::vector<char>& CheckResult::sat(const Formula& f) const {
  for (const auto& [formula, labels] : this->labels) {
    if (formula == &f) return labels;
  }
  throw ModelError("subformula was not labelled by this check");
}

CheckResult check(const Lts& lts, std::span<const CompassionPair> pairs,
                  const Formula& f) {
  const auto start = std::chrono::steady_clock::now();
  for (const CompassionPair& p : pairs) {
    if (p.rule >= lts.rules().size()) {
      throw ModelError("compassion pair refers to an unknown rule");
    }
  }
  Checker checker(lts, pairs);
  const bool verdict = checker.label(f)[Lts::initial()] != 0;
  std::optional<Witness> witness;
  if (!verdict) witness = checker.witness(f, Lts::initial());
  CheckResult result = checker.take();
  result.verdict = verdict;
  result.witness = std::move(witness);
  result.stats.states = lts.state_count();
  result.stats.time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return result;
}

std::string Witness::describe(const Lts& lts) const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Initial:
      out << "initial state violates the property";
      break;
    case Kind::Prefix:
      out << "path to a violating state";
      break;
    case Kind::Deadlock:
      out << "finite maximal path ending in a deadlock";
      break;
    case Kind::Lasso:
      out << "lasso (cycle repeated forever)";
      break;
  }
  out << ":\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (loop_start && i == *loop_start) out << "  loop:\n";
    out << "  " << lts.describe(states[i]) << '\n';
    if (i < rules.size()) {
      out << "    --" << lts.rules()[rules[i]].label << "-->";
      if (i + 1 == states.size()) {
        out << " back to " << lts.describe(states[*loop_start]);
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace pathmc
