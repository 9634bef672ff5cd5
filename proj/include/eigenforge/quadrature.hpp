#pragma once

#include <vector>

namespace eigenforge {

// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are computed once per node count and cached; the returned reference
// stays valid for the lifetime of the program.
const GaussLegendreRule& gauss_legendre(int n);

// Node count that integrates polynomials of the given degree exactly.
inline int exact_node_count(int degree) {
  return degree < 1 ? 1 : (degree + 2) / 2;
}

}  // namespace eigenforge
