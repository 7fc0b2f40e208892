#include "pathmc/synthetic.hpp"

#include <algorithm>

namespace pathmc {

namespace {

std::string inactive(std::size_t branch, std::size_t stage) {
  return "X" + std::to_string(branch) + "_" + std::to_string(stage);
}

std::string active(std::size_t branch, std::size_t stage) {
  return inactive(branch, stage) + "*";
}

}  // namespace

Pathway synthetic_cascade(const CascadeOptions& options) {
  Pathway p;
  const SpeciesId signal = p.intern("Signal");
  const SpeciesId phosphatase = p.intern("Phosphatase");
  InitialSpec init;
  init.present.emplace(signal, Provenance::Declared);
  init.present.emplace(phosphatase, Provenance::Declared);

  for (std::size_t b = 0; b < options.branches; ++b) {
    for (std::size_t i = 0; i < options.stages; ++i) {
      const SpeciesId off = p.intern(inactive(b, i));
      const SpeciesId on = p.intern(active(b, i));
      init.present.emplace(off, Provenance::Declared);
      Reaction activation;
      activation.id = "act" + std::to_string(b) + "_" + std::to_string(i);
      activation.reactants = {off};
      activation.products = {on};
      activation.catalysts = {i == 0 ? signal : *p.find(active(b, i - 1))};
      p.add_reaction(std::move(activation));
    }
    const std::size_t tail = std::min(options.reversible_tail, options.stages);
    for (std::size_t i = options.stages - tail; i < options.stages; ++i) {
      Reaction reset;
      reset.id = "dephos" + std::to_string(b) + "_" + std::to_string(i);
      reset.reactants = {*p.find(active(b, i))};
      reset.products = {*p.find(inactive(b, i))};
      reset.catalysts = {phosphatase};
      p.add_reaction(std::move(reset));
    }
  }
  p.set_initial(std::move(init));
  return p;
}

std::string cascade_output(const CascadeOptions& options, std::size_t branch) {
  return active(branch, options.stages - 1);
}

}  // namespace pathmc
