#pragma once

#include <string>

#include "pathmc/rules.hpp"

namespace pathmc {

// NuSMV model of a rule system: one boolean per species (species order),
// an input variable choosing a rule label or `stall`, a `taken` state
// variable recording the last choice, and one COMPASSION declaration per
// rule in the fairness scope. `stall` keeps the state and is only possible
// when no rule is enabled, so the transition relation is total.
std::string export_smv(const RuleSystem& system);

}  // namespace pathmc
