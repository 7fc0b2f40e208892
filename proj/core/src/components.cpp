#include "pathmc/components.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pathmc/error.hpp"

namespace pathmc {

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0u);
}

std::uint32_t UnionFind::find(std::uint32_t x) {
  std::uint32_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::uint32_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(std::uint32_t x, std::uint32_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  return true;
}

ComponentMap::ComponentMap(const Pathway& p, UnionFind& classes) {
  const std::size_t n = p.species_count();
  of_.assign(n, 0);
  std::vector<std::int64_t> component_of_root(n, -1);
  for (SpeciesId s = 0; s < n; ++s) {
    const std::uint32_t root = classes.find(s);
    if (component_of_root[root] < 0) {
      component_of_root[root] = static_cast<std::int64_t>(members_.size());
      members_.emplace_back();
      representative_.push_back(s);
    }
    const auto c = static_cast<ComponentId>(component_of_root[root]);
    of_[s] = c;
    members_[c].push_back(s);
  }
  names_.reserve(members_.size());
  for (auto& members : members_) {
    std::sort(members.begin(), members.end(), [&](SpeciesId a, SpeciesId b) {
      return p.name(a) < p.name(b);
    });
    names_.push_back(p.name(members.front()));
  }
}

void ComponentMap::rename(ComponentId c, std::string name) {
  names_.at(c) = std::move(name);
}

std::optional<ComponentId> ComponentMap::find(const Pathway& p,
                                              std::string_view name) const {
  for (ComponentId c = 0; c < names_.size(); ++c) {
    if (names_[c] == name) return c;
  }
  if (auto s = p.find(name); s && *s < of_.size()) return of_[*s];
  return std::nullopt;
}

std::vector<ComponentId> ComponentMap::components_of(const Reaction& r) const {
  std::vector<ComponentId> out;
  for (SpeciesId s : r.species()) out.push_back(of_.at(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<std::set<std::string>> ComponentMap::partition(
    const Pathway& p) const {
  std::set<std::set<std::string>> out;
  for (const auto& members : members_) {
    std::set<std::string> names;
    for (SpeciesId s : members) names.insert(p.name(s));
    out.insert(std::move(names));
  }
  return out;
}

ComponentMap identify_components(const Pathway& p) {
  if (const auto violations = validate_normal_form(p); !violations.empty()) {
    const auto& v = violations.front();
    throw ModelError("reaction '" + v.reaction + "' is not in normal form (" +
                     std::to_string(v.reactants) + " reactants, " +
                     std::to_string(v.products) + " products)");
  }
  UnionFind classes(p.species_count());
  for (const Reaction& r : p.reactions()) {
    for (std::size_t j = 0; j < r.reactants.size(); ++j) {
      classes.unite(r.reactants[j], r.products[j]);
    }
  }
  return ComponentMap(p, classes);
}

std::map<std::string, std::string> parse_component_names(
    std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'name: species'", line_no, first + 1);
    }
    const auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string name = strip(line.substr(0, colon));
    std::string species = strip(line.substr(colon + 1));
    if (name.empty() || species.empty()) {
      throw ParseError("expected 'name: species'", line_no, first + 1);
    }
    out[std::move(name)] = std::move(species);
  }
  return out;
}

void apply_component_names(const Pathway& p, ComponentMap& m,
                           const std::map<std::string, std::string>& names) {
  for (const auto& [name, species] : names) {
    const auto id = p.find(species);
    if (!id) {
      throw ModelError("component name '" + name +
                       "' refers to unknown species '" + species + "'");
    }
    m.rename(m.component_of(*id), name);
  }
}

InitialInference infer_initial_state(const Pathway& p, const ComponentMap& m,
                                     const std::vector<SpeciesId>& manual,
                                     bool strict) {
  InitialInference out;
  const auto used = p.used_species();
  std::vector<char> in_pathway(p.species_count(), 0);
  for (SpeciesId s : used) in_pathway[s] = 1;
  for (SpeciesId s : manual) {
    if (s >= p.species_count() || !in_pathway[s]) {
      throw ModelError("manual initial species is not a species of the pathway");
    }
  }

  std::vector<char> produced(p.species_count(), 0);
  for (const Reaction& r : p.reactions()) {
    for (SpeciesId s : r.products) produced[s] = 1;
  }
  for (SpeciesId s : used) {
    if (!produced[s]) {
      out.initial.present.emplace(s, Provenance::HeuristicSource);
    }
  }

  const auto empty_components = [&] {
    std::vector<char> has(m.size(), 0);
    for (const auto& [s, provenance] : out.initial.present) {
      has[m.component_of(s)] = 1;
    }
    std::vector<ComponentId> empty;
    for (ComponentId c = 0; c < m.size(); ++c) {
      const bool relevant = std::any_of(
          m.members(c).begin(), m.members(c).end(),
          [&](SpeciesId s) { return in_pathway[s] != 0; });
      if (relevant && !has[c]) empty.push_back(c);
    }
    return empty;
  };

  out.needs_manual = empty_components();
  for (SpeciesId s : manual) {
    out.initial.present.emplace(s, Provenance::HeuristicManual);
  }
  out.unresolved = empty_components();

  if (!out.unresolved.empty()) {
    std::string list;
    for (ComponentId c : out.unresolved) {
      if (!list.empty()) list += ", ";
      list += m.name(c);
    }
    if (strict) {
      throw ModelError("components without an initial species: " + list);
    }
    out.warnings.push_back(
        "no initial species chosen for components (left absent): " + list);
  }
  return out;
}

InteractionGraph interaction_graph(const Pathway& p, const ComponentMap& m) {
  InteractionGraph g;
  for (ComponentId c = 0; c < m.size(); ++c) g.vertices.push_back(c);
  for (const Reaction& r : p.reactions()) {
    std::vector<ComponentId> reactant_side;
    for (SpeciesId s : r.reactants) reactant_side.push_back(m.component_of(s));
    std::vector<ComponentId> catalyst_side;
    for (SpeciesId s : r.catalysts) catalyst_side.push_back(m.component_of(s));
    for (std::size_t i = 0; i < reactant_side.size(); ++i) {
      for (std::size_t j = i + 1; j < reactant_side.size(); ++j) {
        const ComponentId a = reactant_side[i];
        const ComponentId b = reactant_side[j];
        if (a != b) g.undirected.emplace(std::min(a, b), std::max(a, b));
      }
    }
    for (ComponentId c : catalyst_side) {
      for (ComponentId target : reactant_side) {
        if (c != target) g.directed.emplace(c, target);
      }
    }
  }
  return g;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const InteractionGraph& g, const ComponentMap& m) {
  std::ostringstream out;
  out << "digraph {\n";
  for (ComponentId c : g.vertices) out << "  " << quoted(m.name(c)) << ";\n";
  for (const auto& [a, b] : g.undirected) {
    out << "  " << quoted(m.name(a)) << " -> " << quoted(m.name(b))
        << " [dir=both];\n";
  }
  for (const auto& [from, to] : g.directed) {
    out << "  " << quoted(m.name(from)) << " -> " << quoted(m.name(to))
        << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pathmc
