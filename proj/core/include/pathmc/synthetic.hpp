#pragma once

#include <cstddef>
#include <string>

#include "pathmc/pathway.hpp"

namespace pathmc {

struct CascadeOptions {
  std::size_t branches = 4;
  std::size_t stages = 18;
  // Number of trailing stages per branch that a phosphatase can reset.
  std::size_t reversible_tail = 2;
};

// Signalling-cascade shaped pathway in normal form. Branch b, stage i has an
// inactive form `X<b>_<i>` and an active form `X<b>_<i>*`; stage i is
// activated with stage i-1 active as catalyst (stage 0 by `Signal`), and
// the last `reversible_tail` stages are reset by `Phosphatase`. Signal and
// Phosphatase and every inactive form start present.
Pathway synthetic_cascade(const CascadeOptions& options = {});

// Name of the active form of the last stage of `branch`.
std::string cascade_output(const CascadeOptions& options, std::size_t branch);

}  // namespace pathmc
