#pragma once

#include <vector>

namespace ucm {

// Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached, thread-safe; the returned reference stays valid for the process lifetime.
const GaussRule& gauss_legendre(int order);

}  // namespace ucm
