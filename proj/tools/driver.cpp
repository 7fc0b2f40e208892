#include "driver.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathmc/checker.hpp"
#include "pathmc/components.hpp"
#include "pathmc/error.hpp"
#include "pathmc/formula.hpp"
#include "pathmc/lts.hpp"
#include "pathmc/projection.hpp"
#include "pathmc/smv.hpp"

namespace pathmc::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    if (std::string item = trim(text.substr(start, end - start));
        !item.empty()) {
      out.push_back(std::move(item));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split_all(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& item : raw) {
    for (std::string& name : split_list(item)) out.push_back(std::move(name));
  }
  return out;
}

bool declares_init(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.rfind("init", 0) == 0 && trim(t.substr(4)).rfind(':', 0) == 0) {
      return true;
    }
  }
  return false;
}

struct Model {
  AnnotatedPathway doc;
  bool abstract = false;
  bool inferred_initial = false;
  std::optional<ComponentMap> map;

  Pathway& pathway() { return doc.pathway; }

  const ComponentMap& components() {
    if (!map) map = identify_components(doc.pathway);  // throws on violations
    return *map;
  }
};

Model load_model(const std::string& path, const std::string& names_path,
                 std::ostream& err) {
  const std::string text = read_file(path);
  Model model;
  model.doc = parse_annotated_pathway(text);
  for (const auto& [id, note] : model.doc.annotations) {
    if (note.find("variant=") != std::string::npos) model.abstract = true;
  }
  Pathway& p = model.pathway();
  if (validate_normal_form(p).empty()) {
    model.map = identify_components(p);
    if (!names_path.empty()) {
      apply_component_names(p, *model.map,
                            parse_component_names(read_file(names_path)));
    }
  } else if (!names_path.empty()) {
    model.components();
  }
  if (!declares_init(text) && !model.abstract && model.map) {
    const InitialInference inferred = infer_initial_state(p, *model.map, {}, false);
    p.set_initial(inferred.initial);
    model.inferred_initial = true;
    err << "warning: no init directive; initial state inferred as {"
        << [&] {
             std::string list;
             for (SpeciesId s : inferred.initial.species()) {
               if (!list.empty()) list += ", ";
               list += p.name(s);
             }
             return list;
           }()
        << "}\n";
    for (const std::string& w : inferred.warnings) {
      err << "warning: " << w << '\n';
    }
  }
  return model;
}

std::vector<ComponentId> resolve_components(Model& model,
                                            const std::vector<std::string>& names) {
  const ComponentMap& m = model.components();
  std::vector<ComponentId> out;
  for (const std::string& name : names) {
    const auto c = m.find(model.pathway(), name);
    if (!c) throw UsageError("unknown component '" + name + "'");
    out.push_back(*c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string component_list(const ComponentMap& m,
                           const std::vector<ComponentId>& components) {
  std::string out;
  for (ComponentId c : components) {
    if (!out.empty()) out += ", ";
    out += m.name(c);
  }
  return out;
}

BuildOptions build_options(const std::optional<std::size_t>& cap) {
  BuildOptions options = BuildOptions::from_environment();
  if (cap) options.state_cap = *cap;
  return options;
}

// --- commands ---------------------------------------------------------------

int cmd_validate(const std::string& path, std::ostream& out) {
  const Pathway p = parse_pathway(read_file(path));
  const auto violations = validate_normal_form(p);
  for (const auto& v : violations) {
    out << v.reaction << ": " << v.reactants << " reactants, " << v.products
        << " products (not in normal form)\n";
  }
  for (SpeciesId s : p.unused_species()) {
    out << "warning: species '" << p.name(s) << "' occurs in no reaction\n";
  }
  out << p.species_count() << " species, " << p.reactions().size()
      << " reactions, " << (violations.empty() ? "normal form" : "not in normal form")
      << '\n';
  return violations.empty() ? kAllTrue : kFalseOrInconclusive;
}

int cmd_components(const std::string& path, const std::string& names_path,
                   const std::vector<std::string>& manual_names, bool strict,
                   std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path);
  Pathway p = parse_pathway(text);
  ComponentMap m = identify_components(p);
  if (!names_path.empty()) {
    apply_component_names(p, m, parse_component_names(read_file(names_path)));
  }
  for (ComponentId c = 0; c < m.size(); ++c) {
    out << m.name(c) << ": ";
    const auto& members = m.members(c);
    for (std::size_t i = 0; i < members.size(); ++i) {
      out << (i ? ", " : "") << p.name(members[i]);
    }
    out << '\n';
  }

  if (declares_init(text) && manual_names.empty()) {
    out << "initial:";
    for (SpeciesId s : p.initial().species()) out << ' ' << p.name(s);
    out << " (declared)\n";
    return kAllTrue;
  }
  std::vector<SpeciesId> manual;
  for (const std::string& name : manual_names) {
    const auto s = p.find(name);
    if (!s) throw UsageError("unknown species '" + name + "'");
    manual.push_back(*s);
  }
  const InitialInference inferred = infer_initial_state(p, m, manual, strict);
  out << "initial:";
  for (const auto& [s, provenance] : inferred.initial.present) {
    out << ' ' << p.name(s) << " [" << to_string(provenance) << ']';
  }
  out << '\n';
  if (!inferred.needs_manual.empty()) {
    out << "needs manual choice: " << component_list(m, inferred.needs_manual)
        << '\n';
  }
  for (const std::string& w : inferred.warnings) err << "warning: " << w << '\n';
  return kAllTrue;
}

int cmd_graph(const std::string& path, const std::string& names_path,
              const std::string& output, std::ostream& out,
              std::ostream& err) {
  Model model = load_model(path, names_path, err);
  const ComponentMap& m = model.components();
  write_output(output, to_dot(interaction_graph(model.pathway(), m), m), out);
  return kAllTrue;
}

RuleSystem scoped_system(Model& model, const std::vector<std::string>& onto) {
  if (model.abstract) {
    if (!onto.empty()) {
      throw UsageError("--onto cannot be applied to an already projected model");
    }
    return annotated_system(model.doc);
  }
  if (onto.empty()) return concrete_system(model.pathway());
  const auto components = resolve_components(model, onto);
  return abstract_system(model.pathway(),
                         project(model.pathway(), *model.map, components));
}

int cmd_lts(const std::string& path, const std::vector<std::string>& onto,
            bool dump, const std::optional<std::size_t>& cap,
            std::ostream& out, std::ostream& err) {
  Model model = load_model(path, "", err);
  const Lts lts = build_lts(scoped_system(model, onto), build_options(cap));
  out << lts.stats_line() << '\n';
  if (dump) out << lts.dump();
  return kAllTrue;
}

int cmd_project(const std::string& path, const std::string& names_path,
                const std::vector<std::string>& onto, const std::string& output,
                std::ostream& out, std::ostream& err) {
  if (onto.empty()) throw UsageError("project requires --onto");
  Model model = load_model(path, names_path, err);
  if (model.abstract) {
    throw UsageError("the input is already a projection");
  }
  const auto components = resolve_components(model, onto);
  const AbstractPathway ap =
      project(model.pathway(), *model.map, components);
  std::string text = "# projection onto " + component_list(*model.map, components) +
                     "\n" + print_abstract(model.pathway(), ap);
  write_output(output, text, out);
  return kAllTrue;
}

int cmd_export_smv(const std::string& path, const std::string& names_path,
                   const std::vector<std::string>& onto,
                   const std::string& output, std::ostream& out,
                   std::ostream& err) {
  Model model = load_model(path, names_path, err);
  if (!names_path.empty()) model.components();
  write_output(output, export_smv(scoped_system(model, onto)), out);
  return kAllTrue;
}

// --- check ------------------------------------------------------------------

struct Job {
  std::optional<std::vector<ComponentId>> scope;
  std::vector<const Property*> properties;
};

struct Report {
  const Property* property = nullptr;
  std::string scope;
  bool projected = false;
  bool verdict = false;
  std::size_t states = 0;
  double time_ms = 0;
  std::optional<Witness> witness;
  const Lts* lts = nullptr;
};

std::string_view witness_kind(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::Initial:
      return "initial";
    case Witness::Kind::Prefix:
      return "prefix";
    case Witness::Kind::Deadlock:
      return "deadlock";
    case Witness::Kind::Lasso:
      return "lasso";
  }
  return "";
}

nlohmann::json witness_json(const Witness& w, const Lts& lts) {
  nlohmann::json states = nlohmann::json::array();
  for (StateIndex s : w.states) states.push_back(lts.present_names(s));
  nlohmann::json rules = nlohmann::json::array();
  for (std::uint32_t r : w.rules) rules.push_back(lts.rules()[r].label);
  nlohmann::json j = {{"kind", witness_kind(w.kind)},
                      {"states", states},
                      {"rules", rules}};
  if (w.loop_start) j["loop_start"] = *w.loop_start;
  return j;
}

std::string indent(const std::string& text, const std::string& prefix) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += prefix + line + '\n';
  return out;
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Model model = load_model(config.pathway_path, config.names_path, err);
  Pathway& p = model.pathway();
  const auto onto_names = split_all(config.onto);
  const auto disable_names = split_all(config.disable);
  if (model.abstract &&
      (!onto_names.empty() || !disable_names.empty() || !config.plan_path.empty())) {
    throw UsageError(
        "--onto, --disable and --plan cannot be applied to an already "
        "projected model");
  }

  // Names are validated before anything is checked.
  const auto disabled = resolve_components(model, disable_names);
  std::optional<std::vector<ComponentId>> default_scope;
  if (!onto_names.empty()) default_scope = resolve_components(model, onto_names);
  ModularPlan plan;
  std::vector<std::vector<ComponentId>> plan_scopes;
  if (!config.plan_path.empty()) {
    plan = parse_plan(read_file(config.plan_path));
    for (const auto& entry : plan.entries) {
      plan_scopes.push_back(resolve_components(model, entry.components));
    }
  }

  std::vector<std::string> species_names;
  for (const Species& s : p.species()) species_names.push_back(s.name);
  std::vector<Property> properties;
  if (!config.property_path.empty()) {
    properties = parse_properties(read_file(config.property_path), species_names);
  }
  for (std::size_t i = 0; i < config.formulas.size(); ++i) {
    Property prop;
    prop.name = "f" + std::to_string(i + 1);
    prop.text = config.formulas[i];
    prop.formula = parse_formula(prop.text, species_names);
    properties.push_back(std::move(prop));
  }
  if (properties.empty()) throw UsageError("no properties to check");

  if (!disabled.empty()) {
    InitialSpec init = p.initial();
    for (ComponentId c : disabled) {
      for (SpeciesId s : model.map->members(c)) init.present.erase(s);
    }
    p.set_initial(std::move(init));
  }

  std::vector<Job> jobs;
  std::set<std::string> planned;
  for (std::size_t e = 0; e < plan.entries.size(); ++e) {
    Job job;
    job.scope = plan_scopes[e];
    for (const std::string& name : plan.entries[e].properties) {
      const auto it = std::find_if(properties.begin(), properties.end(),
                                   [&](const Property& q) { return q.name == name; });
      if (it == properties.end()) {
        throw UsageError("plan refers to unknown property '" + name + "'");
      }
      job.properties.push_back(&*it);
      planned.insert(name);
    }
    const auto same = std::find_if(jobs.begin(), jobs.end(),
                                   [&](const Job& j) { return j.scope == job.scope; });
    if (same != jobs.end()) {
      same->properties.insert(same->properties.end(), job.properties.begin(),
                              job.properties.end());
    } else {
      jobs.push_back(std::move(job));
    }
  }
  Job rest;
  rest.scope = default_scope;
  for (const Property& prop : properties) {
    if (!planned.count(prop.name)) rest.properties.push_back(&prop);
  }
  if (!rest.properties.empty()) jobs.push_back(std::move(rest));

  // Compile every scope and check property species against it first.
  struct Compiled {
    RuleSystem system;
    std::string scope;
    bool projected = false;
  };
  std::vector<Compiled> compiled;
  for (const Job& job : jobs) {
    Compiled c;
    if (model.abstract) {
      c.system = annotated_system(model.doc);
      c.scope = "abstract model";
      c.projected = true;
    } else if (job.scope) {
      c.system = abstract_system(p, project(p, *model.map, *job.scope));
      c.scope = "projection onto " + component_list(*model.map, *job.scope);
      c.projected = true;
    } else {
      c.system = concrete_system(p);
      c.scope = "complete model";
    }
    for (const Property* prop : job.properties) {
      for (const std::string& atom : atoms(*prop->formula)) {
        if (!c.system.find_species(atom)) {
          throw ModelError("property '" + prop->name + "' refers to species '" +
                           atom + "' outside the " + c.scope);
        }
      }
    }
    compiled.push_back(std::move(c));
  }

  std::vector<std::unique_ptr<Lts>> built;
  std::vector<Report> reports;
  const BuildOptions options = build_options(config.state_cap);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    built.push_back(std::make_unique<Lts>(build_lts(compiled[j].system, options)));
    const Lts& lts = *built.back();
    const auto pairs = config.fairness ? fairness_pairs(lts)
                                       : std::vector<CompassionPair>{};
    for (const Property* prop : jobs[j].properties) {
      const CheckResult result = check(lts, pairs, *prop->formula);
      Report r;
      r.property = prop;
      r.scope = compiled[j].scope;
      r.projected = compiled[j].projected;
      r.verdict = result.verdict;
      r.states = result.stats.states;
      r.time_ms = result.stats.time_ms;
      r.witness = result.witness;
      r.lts = &lts;
      reports.push_back(std::move(r));
    }
  }

  bool all_true = true;
  if (config.json) {
    nlohmann::json doc = nlohmann::json::array();
    for (const Report& r : reports) {
      nlohmann::json j = {
          {"property", r.property->name},
          {"scope", r.scope},
          {"fairness", config.fairness ? "on" : "off"},
          {"verdict", r.verdict},
          {"conclusive_for_complete_model", !r.projected || r.verdict},
          {"states", r.states},
          {"time_ms", r.time_ms},
      };
      if (r.witness) j["witness"] = witness_json(*r.witness, *r.lts);
      doc.push_back(std::move(j));
      all_true = all_true && r.verdict;
    }
    out << doc.dump(2) << '\n';
  } else {
    for (const std::string& note : plan.notes) out << "note: " << note << '\n';
    for (const Report& r : reports) {
      out << r.property->name << ": " << r.property->text << '\n';
      out << "  scope: " << r.scope << ", fairness "
          << (config.fairness ? "on" : "off") << ", " << r.states
          << " states\n";
      out << "  verdict: " << (r.verdict ? "true" : "false");
      if (r.projected) {
        out << (r.verdict ? " (holds in complete model, preserved by projection)"
                          : " (inconclusive for complete model)");
      }
      out << '\n';
      if (r.witness) {
        out << "  counterexample: " << indent(r.witness->describe(*r.lts), "  ").substr(2);
      }
      all_true = all_true && r.verdict;
    }
  }
  return all_true ? kAllTrue : kFalseOrInconclusive;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  }
}

}  // namespace

ModularPlan parse_plan(std::string_view text) {
  ModularPlan plan;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'properties: components'", line_no, 1);
    }
    const std::string head = trim(t.substr(0, colon));
    const std::string tail = trim(t.substr(colon + 1));
    if (head == "note") {
      plan.notes.push_back(tail);
      continue;
    }
    ModularPlan::Entry entry;
    entry.properties = split_list(head);
    entry.components = split_list(tail);
    if (entry.properties.empty() || entry.components.empty()) {
      throw ParseError("expected 'properties: components'", line_no, 1);
    }
    plan.entries.push_back(std::move(entry));
  }
  return plan;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Qualitative pathway model checker", "pathmc"};
  app.require_subcommand(1);

  std::optional<std::size_t> state_cap;
  app.add_option("--state-cap", state_cap,
                 "Maximum number of states to explore (also PATHMC_STATE_CAP)");

  std::string path;
  std::string names_path;
  std::string output;
  std::vector<std::string> onto;

  auto* validate = app.add_subcommand("validate", "Parse a pathway and check normal form");
  validate->add_option("pathway", path)->required();

  auto* components = app.add_subcommand("components", "List molecular components");
  std::vector<std::string> manual;
  bool strict = false;
  components->add_option("pathway", path)->required();
  components->add_option("--names", names_path, "Component names file");
  components->add_option("--manual", manual, "Initial species chosen by hand");
  components->add_flag("--strict", strict,
                       "Fail when a component has no initial species");

  auto* graph = app.add_subcommand("graph", "Component interaction graph");
  bool dot = false;
  graph->add_option("pathway", path)->required();
  graph->add_flag("--dot", dot, "Graphviz output (the only format)");
  graph->add_option("--names", names_path, "Component names file");
  graph->add_option("-o,--output", output, "Write to a file");

  auto* lts = app.add_subcommand("lts", "Build the transition system");
  bool dump = false;
  lts->add_option("pathway", path)->required();
  lts->add_option("--onto", onto, "Project onto these components first");
  lts->add_flag("--dump", dump, "Print every edge");

  auto* project_cmd = app.add_subcommand("project", "Project onto components");
  project_cmd->add_option("pathway", path)->required();
  project_cmd->add_option("--onto", onto, "Components to keep")->required();
  project_cmd->add_option("--names", names_path, "Component names file");
  project_cmd->add_option("-o,--output", output, "Write to a file");

  auto* check_cmd = app.add_subcommand("check", "Check ACTL properties");
  RunConfig config;
  bool no_fairness = false;
  check_cmd->add_option("pathway", config.pathway_path)->required();
  check_cmd->add_option("properties", config.property_path, "Property file");
  check_cmd->add_option("-f,--formula", config.formulas, "Inline property");
  check_cmd->add_option("--onto", config.onto, "Project onto these components");
  check_cmd->add_option("--disable", config.disable,
                        "Start with these components absent");
  check_cmd->add_option("--names", config.names_path, "Component names file");
  check_cmd->add_option("--plan", config.plan_path, "Modular verification plan");
  check_cmd->add_flag("--no-fairness", no_fairness, "Drop compassion requirements");
  check_cmd->add_flag("--json", config.json, "JSON report");

  auto* smv = app.add_subcommand("export-smv", "Write a NuSMV model");
  smv->add_option("pathway", path)->required();
  smv->add_option("--onto", onto, "Project onto these components first");
  smv->add_option("--names", names_path, "Component names file");
  smv->add_option("-o,--output", output, "Write to a file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAllTrue : kUsage;
  }

  return guarded(
      [&]() -> int {
        if (*validate) return cmd_validate(path, out);
        if (*components) {
          return cmd_components(path, names_path, split_all(manual), strict,
                                out, err);
        }
        if (*graph) return cmd_graph(path, names_path, output, out, err);
        if (*lts) return cmd_lts(path, split_all(onto), dump, state_cap, out, err);
        if (*project_cmd) {
          return cmd_project(path, names_path, split_all(onto), output, out, err);
        }
        if (*smv) {
          return cmd_export_smv(path, names_path, split_all(onto), output, out,
                                err);
        }
        config.fairness = !no_fairness;
        config.state_cap = state_cap;
        return cmd_check(config, out, err);
      },
      err);
}

}  // namespace pathmc::cli
