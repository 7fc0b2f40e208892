#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pathmc::cli {

enum ExitCode : int {
  kAllTrue = 0,
  kFalseOrInconclusive = 1,
  kUsage = 2,
  kParse = 3,
  kResource = 4,
};

// Bad command line: unknown component names, missing inputs, conflicting
// flags.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string pathway_path;
  std::string property_path;
  std::vector<std::string> formulas;  // inline properties, named f1, f2, ...
  std::vector<std::string> onto;      // J, by component or species name
  std::vector<std::string> disable;
  std::string names_path;             // optional component names file
  std::string plan_path;
  bool fairness = true;
  std::optional<std::size_t> state_cap;
  bool json = false;
};

// `props: components` lines assign properties to projections; `note:`
// lines carry the user's claim about how the pieces combine.
struct ModularPlan {
  struct Entry {
    std::vector<std::string> properties;
    std::vector<std::string> components;
  };
  std::vector<Entry> entries;
  std::vector<std::string> notes;
};

ModularPlan parse_plan(std::string_view text);

// Runs one command line. Everything the command prints goes to `out`,
// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pathmc::cli
