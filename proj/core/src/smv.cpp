#include "pathmc/smv.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace pathmc {

namespace {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

std::string join(const std::vector<std::string>& terms, const char* op,
                 const char* empty) {
  if (terms.empty()) return empty;
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += op;
    out += terms[i];
  }
  return terms.size() == 1 ? out : "(" + out + ")";
}

}  // namespace

std::string export_smv(const RuleSystem& system) {
  const std::size_t width = system.species.size();
  std::vector<std::string> var(width);
  for (std::size_t i = 0; i < width; ++i) {
    var[i] = "sp" + std::to_string(i) + "_" + sanitize(system.species[i]);
  }
  std::vector<std::string> choice(system.rules.size());
  for (std::size_t r = 0; r < system.rules.size(); ++r) {
    choice[r] = "r" + std::to_string(r) + "_" + sanitize(system.rules[r].label);
  }

  std::ostringstream out;
  out << "MODULE main\n";
  out << "VAR\n";
  for (std::size_t i = 0; i < width; ++i) {
    out << "  " << var[i] << " : boolean; -- " << system.species[i] << '\n';
  }
  out << "  taken : {none";
  for (const std::string& c : choice) out << ", " << c;
  out << ", stall};\n";

  out << "IVAR\n";
  out << "  reaction : {";
  for (const std::string& c : choice) out << c << ", ";
  out << "stall};\n";

  out << "DEFINE\n";
  std::vector<std::string> enabled_names;
  for (std::size_t r = 0; r < system.rules.size(); ++r) {
    const Rule& rule = system.rules[r];
    std::vector<std::string> terms;
    for (std::size_t i = 0; i < width; ++i) {
      if (rule.reactants.test(i) || rule.catalysts.test(i)) {
        terms.push_back(var[i]);
      }
    }
    std::vector<std::string> change;
    bool always_changes = false;
    for (std::size_t i = 0; i < width; ++i) {
      if (rule.products.test(i)) change.push_back("!" + var[i]);
      if (rule.effect == Effect::Consume && rule.reactants.test(i) &&
          !rule.products.test(i)) {
        always_changes = true;
      }
    }
    switch (rule.guard) {
      case Guard::ProductAbsent:
        terms.push_back(join(change, " | ", "FALSE"));
        break;
      case Guard::ChangesState:
        if (rule.effect == Effect::Stutter) {
          terms.push_back("FALSE");
        } else if (!always_changes) {
          terms.push_back(join(change, " | ", "FALSE"));
        }
        break;
      case Guard::None:
        break;
    }
    if (std::find(terms.begin(), terms.end(), "FALSE") != terms.end()) {
      terms.assign({"FALSE"});
    }
    const std::string name = "en_" + choice[r];
    enabled_names.push_back(name);
    out << "  " << name << " := " << join(terms, " & ", "TRUE") << "; -- "
        << rule.label << '\n';
  }
  out << "  deadlock := !" << join(enabled_names, " | ", "FALSE") << ";\n";

  out << "ASSIGN\n";
  for (std::size_t i = 0; i < width; ++i) {
    out << "  init(" << var[i] << ") := "
        << (system.initial.test(i) ? "TRUE" : "FALSE") << ";\n";
  }
  out << "  init(taken) := none;\n";
  out << "  next(taken) := reaction;\n";
  for (std::size_t i = 0; i < width; ++i) {
    std::vector<std::string> cases;
    for (std::size_t r = 0; r < system.rules.size(); ++r) {
      const Rule& rule = system.rules[r];
      if (rule.effect == Effect::Stutter) continue;
      if (rule.products.test(i)) {
        cases.push_back("reaction = " + choice[r] + " : TRUE;");
      } else if (rule.effect == Effect::Consume && rule.reactants.test(i)) {
        cases.push_back("reaction = " + choice[r] + " : FALSE;");
      }
    }
    if (cases.empty()) {
      out << "  next(" << var[i] << ") := " << var[i] << ";\n";
      continue;
    }
    out << "  next(" << var[i] << ") :=\n    case\n";
    for (const std::string& c : cases) out << "      " << c << '\n';
    out << "      TRUE : " << var[i] << ";\n    esac;\n";
  }

  out << "TRANS\n";
  out << "  (reaction = stall -> deadlock)";
  for (std::size_t r = 0; r < system.rules.size(); ++r) {
    out << "\n  & (reaction = " << choice[r] << " -> " << enabled_names[r]
        << ")";
  }
  out << ";\n";

  for (std::size_t r : system.fairness_scope) {
    out << "COMPASSION (" << enabled_names[r] << ", taken = " << choice[r]
        << ")\n";
  }
  return out.str();
}

}  // namespace pathmc
