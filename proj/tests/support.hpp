#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "eigenforge/polynomial.hpp"

namespace eigenforge::testing {

inline std::vector<double> random_coeffs(std::mt19937_64& rng, int degree, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> c(degree + 1);
  for (auto& v : c) v = dist(rng);
  if (c.back() == 0.0) c.back() = 1.0;
  return c;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, int max_degree, Interval iv,
                                    double lo = -10.0, double hi = 10.0) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  return Polynomial(random_coeffs(rng, deg(rng), lo, hi), iv);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace eigenforge::testing
