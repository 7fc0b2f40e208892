#include "pathmc/projection.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "pathmc/error.hpp"

namespace pathmc {

namespace {

std::vector<SpeciesId> restrict_ids(const std::vector<SpeciesId>& ids,
                                    const std::vector<char>& tracked) {
  std::vector<SpeciesId> out;
  for (SpeciesId s : ids) {
    if (tracked[s]) out.push_back(s);
  }
  return out;
}

std::vector<char> membership(std::size_t n, const std::vector<SpeciesId>& ids) {
  std::vector<char> out(n, 0);
  for (SpeciesId s : ids) out[s] = 1;
  return out;
}

std::vector<ComponentId> normalise(std::vector<ComponentId> components,
                                   const ComponentMap& m) {
  std::sort(components.begin(), components.end());
  components.erase(std::unique(components.begin(), components.end()),
                   components.end());
  for (ComponentId c : components) {
    if (c >= m.size()) {
      throw ModelError("unknown component id " + std::to_string(c));
    }
  }
  return components;
}

bool touches(const std::vector<ComponentId>& comps,
             const std::vector<char>& selected) {
  return std::any_of(comps.begin(), comps.end(),
                     [&](ComponentId c) { return selected[c] != 0; });
}

State mask_of(const std::vector<SpeciesId>& ids,
              const std::vector<std::int64_t>& index, std::size_t width) {
  State s(width);
  for (SpeciesId id : ids) s.set(static_cast<std::size_t>(index[id]));
  return s;
}

std::string unique_label(std::string label, std::set<std::string>& used) {
  while (!used.insert(label).second) label += '\'';
  return label;
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  return v == Variant::Productive ? "productive" : "stutter";
}

bool AbstractPathway::tracks(SpeciesId s) const {
  return std::binary_search(species.begin(), species.end(), s);
}

std::vector<SpeciesId> species_of_components(
    const Pathway& p, const ComponentMap& m,
    const std::vector<ComponentId>& components) {
  const auto selected_ids = normalise(components, m);
  std::vector<char> selected(m.size(), 0);
  for (ComponentId c : selected_ids) selected[c] = 1;
  std::vector<char> in(p.species_count(), 0);
  for (const Reaction& r : p.reactions()) {
    if (touches(m.components_of(r), selected)) {
      for (SpeciesId s : r.species()) in[s] = 1;
    }
  }
  std::vector<SpeciesId> out;
  for (SpeciesId s = 0; s < in.size(); ++s) {
    if (in[s]) out.push_back(s);
  }
  return out;
}

std::vector<SpeciesId> component_species(
    const ComponentMap& m, const std::vector<ComponentId>& components) {
  std::vector<SpeciesId> out;
  for (ComponentId c : normalise(components, m)) {
    const auto& members = m.members(c);
    out.insert(out.end(), members.begin(), members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

AbstractPathway project(const Pathway& p, const ComponentMap& m,
                        std::vector<ComponentId> components,
                        ProjectionScope scope) {
  AbstractPathway ap;
  ap.scope = scope;
  ap.components = normalise(std::move(components), m);
  ap.species = scope == ProjectionScope::Components
                   ? component_species(m, ap.components)
                   : species_of_components(p, m, ap.components);

  std::vector<char> selected(m.size(), 0);
  for (ComponentId c : ap.components) selected[c] = 1;
  const auto tracked = membership(p.species_count(), ap.species);

  for (const Reaction& r : p.reactions()) {
    const auto comps = m.components_of(r);
    const bool all_inside =
        std::all_of(comps.begin(), comps.end(),
                    [&](ComponentId c) { return selected[c] != 0; });
    if (all_inside) {
      ap.concrete.push_back(r);
      continue;
    }
    if (!touches(comps, selected)) continue;

    AbstractReaction productive;
    productive.base.id = r.id;
    productive.base.reactants = restrict_ids(r.reactants, tracked);
    productive.base.products = restrict_ids(r.products, tracked);
    productive.base.catalysts = restrict_ids(r.catalysts, tracked);
    productive.variant = Variant::Productive;
    productive.origin = r.id;
    productive.origin_catalysed = r.catalysed();

    AbstractReaction stutter = productive;
    stutter.base.products = stutter.base.reactants;
    stutter.variant = Variant::Stutter;

    ap.boundary.push_back(std::move(productive));
    ap.boundary.push_back(std::move(stutter));
  }

  for (const auto& [s, provenance] : p.initial().present) {
    if (tracked[s]) ap.initial.present.emplace(s, provenance);
  }
  return ap;
}

std::optional<State> abstract_step(const State& s, const AbstractReaction& ar) {
  const auto present = [&](SpeciesId id) { return s.test(id); };
  if (!std::all_of(ar.base.reactants.begin(), ar.base.reactants.end(),
                   present) ||
      !std::all_of(ar.base.catalysts.begin(), ar.base.catalysts.end(),
                   present)) {
    return std::nullopt;
  }
  if (ar.variant == Variant::Stutter) return s;
  State next = s;
  if (ar.origin_catalysed) {
    for (SpeciesId id : ar.base.reactants) next.set(id, false);
  }
  for (SpeciesId id : ar.base.products) next.set(id);
  if (next == s) return std::nullopt;
  return next;
}

RuleSystem abstract_system(const Pathway& p, const AbstractPathway& ap) {
  RuleSystem system;
  const std::size_t width = ap.species.size();
  std::vector<std::int64_t> index(p.species_count(), -1);
  for (std::size_t i = 0; i < width; ++i) {
    index[ap.species[i]] = static_cast<std::int64_t>(i);
    system.species.push_back(p.name(ap.species[i]));
  }
  std::set<std::string> used;
  for (const Reaction& r : ap.concrete) used.insert(r.id);

  for (const Reaction& r : ap.concrete) {
    Rule rule;
    rule.label = r.id;
    rule.origin = r.id;
    rule.reactants = mask_of(r.reactants, index, width);
    rule.products = mask_of(r.products, index, width);
    rule.catalysts = mask_of(r.catalysts, index, width);
    rule.effect = r.catalysed() ? Effect::Consume : Effect::Keep;
    rule.guard = Guard::ProductAbsent;
    system.fairness_scope.push_back(system.rules.size());
    system.rules.push_back(std::move(rule));
  }
  for (const AbstractReaction& ar : ap.boundary) {
    Rule rule;
    const bool productive = ar.variant == Variant::Productive;
    rule.label =
        unique_label(ar.origin + (productive ? "_prod" : "_stut"), used);
    rule.origin = ar.origin;
    rule.reactants = mask_of(ar.base.reactants, index, width);
    rule.products = mask_of(ar.base.products, index, width);
    rule.catalysts = mask_of(ar.base.catalysts, index, width);
    if (productive) {
      rule.effect = ar.origin_catalysed ? Effect::Consume : Effect::Keep;
      rule.guard = Guard::ChangesState;
    } else {
      rule.effect = Effect::Stutter;
      rule.guard = Guard::None;
    }
    system.rules.push_back(std::move(rule));
  }
  system.initial = mask_of(ap.initial.species(), index, width);
  return system;
}

State restrict_state(const State& s, const AbstractPathway& ap) {
  State out(ap.species.size());
  for (std::size_t i = 0; i < ap.species.size(); ++i) {
    if (s.test(ap.species[i])) out.set(i);
  }
  return out;
}

std::string print_abstract(const Pathway& p, const AbstractPathway& ap) {
  const RuleSystem system = abstract_system(p, ap);
  std::ostringstream out;
  const std::size_t n_concrete = ap.concrete.size();
  for (std::size_t i = 0; i < system.rules.size(); ++i) {
    const Reaction& base =
        i < n_concrete ? ap.concrete[i] : ap.boundary[i - n_concrete].base;
    out << system.rules[i].label << ": " << format_reaction(p, base);
    if (i >= n_concrete) {
      const AbstractReaction& ar = ap.boundary[i - n_concrete];
      out << "  # origin=" << ar.origin << " variant=" << to_string(ar.variant)
          << " origin_catalysed=" << (ar.origin_catalysed ? "true" : "false");
    }
    out << '\n';
  }
  if (!ap.initial.present.empty()) {
    out << "init: ";
    bool first = true;
    for (SpeciesId s : ap.initial.species()) {
      if (!first) out << ", ";
      out << p.name(s);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

RuleSystem annotated_system(const AnnotatedPathway& doc) {
  const Pathway& p = doc.pathway;
  RuleSystem system = concrete_system(p);
  system.fairness_scope.clear();
  for (std::size_t i = 0; i < p.reactions().size(); ++i) {
    const Reaction& r = p.reactions()[i];
    Rule& rule = system.rules[i];
    const auto it = doc.annotations.find(r.id);
    if (it == doc.annotations.end() ||
        it->second.find("variant=") == std::string::npos) {
      system.fairness_scope.push_back(i);
      continue;
    }
    std::map<std::string, std::string> fields;
    std::istringstream words(it->second);
    std::string word;
    while (words >> word) {
      if (auto eq = word.find('='); eq != std::string::npos) {
        fields[word.substr(0, eq)] = word.substr(eq + 1);
      }
    }
    const std::string variant = fields["variant"];
    const std::string catalysed = fields["origin_catalysed"];
    if ((variant != "productive" && variant != "stutter") ||
        (catalysed != "true" && catalysed != "false") ||
        fields["origin"].empty()) {
      throw ModelError("malformed projection annotation on reaction '" + r.id +
                       "'");
    }
    rule.origin = fields["origin"];
    if (variant == "productive") {
      rule.effect = catalysed == "true" ? Effect::Consume : Effect::Keep;
      rule.guard = Guard::ChangesState;
    } else {
      rule.effect = Effect::Stutter;
      rule.guard = Guard::None;
    }
  }
  return system;
}

namespace {

struct Transition {
  const State* source;
  const std::string* label;
};

}  // namespace

Path project_path(const Path& path, const Pathway& p, const ComponentMap& m,
                  const AbstractPathway& ap) {
  if (path.states.empty() || path.labels.size() + 1 != path.states.size()) {
    throw ModelError("malformed path");
  }
  std::vector<char> selected(m.size(), 0);
  for (ComponentId c : ap.components) selected[c] = 1;
  const auto kept = [&](const std::string& label) {
    const Reaction* r = p.find_reaction(label);
    if (!r) throw ModelError("path refers to unknown reaction '" + label + "'");
    return touches(m.components_of(*r), selected);
  };

  const std::size_t n = path.states.size() - 1;
  const std::size_t stem_end = path.loop ? path.loop->target : n;
  std::vector<Transition> stem;
  std::vector<Transition> cycle;
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept(path.labels[i])) continue;
    (i < stem_end ? stem : cycle).push_back({&path.states[i], &path.labels[i]});
  }
  if (path.loop && kept(path.loop->label)) {
    cycle.push_back({&path.states[n], &path.loop->label});
  }

  Path out;
  for (const Transition& t : stem) {
    out.states.push_back(restrict_state(*t.source, ap));
    out.labels.push_back(*t.label);
  }
  if (cycle.empty()) {
    out.states.push_back(restrict_state(path.states[stem_end], ap));
    return out;
  }
  const std::size_t entry = out.states.size();
  for (const Transition& t : cycle) {
    out.states.push_back(restrict_state(*t.source, ap));
    out.labels.push_back(*t.label);
  }
  out.loop = Path::Loop{entry, out.labels.back()};
  out.labels.pop_back();
  return out;
}

Path project_path_infinite(const Path& path, const Pathway& p,
                           const ComponentMap& m, const AbstractPathway& ap) {
  Path out = project_path(path, p, m, ap);
  if (!out.infinite()) {
    out.loop = Path::Loop{out.states.size() - 1, std::string(kStutterLabel)};
  }
  return out;
}

bool is_maximal_path(const Lts& lts, const Path& path) {
  if (path.states.empty() || path.labels.size() + 1 != path.states.size()) {
    return false;
  }
  std::vector<StateIndex> indices;
  for (const State& s : path.states) {
    const auto i = lts.find(s);
    if (!i) return false;
    indices.push_back(*i);
  }
  if (indices.front() != Lts::initial()) return false;

  const auto has_edge = [&](StateIndex from, StateIndex to,
                            const std::string& label) {
    for (const Edge& e : lts.out_edges(from)) {
      if (e.target != to) continue;
      if (label == kStutterLabel ? from == to
                                 : lts.rules()[e.rule].origin == label) {
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i + 1 < indices.size(); ++i) {
    if (!has_edge(indices[i], indices[i + 1], path.labels[i])) return false;
  }
  if (path.loop) {
    if (path.loop->target >= indices.size()) return false;
    return has_edge(indices.back(), indices[path.loop->target],
                    path.loop->label);
  }
  return lts.is_deadlock(indices.back());
}

}  // namespace pathmc
