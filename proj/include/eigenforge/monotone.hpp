#pragma once

#include <utility>
#include <vector>

#include "eigenforge/polynomial.hpp"

namespace eigenforge {

enum class Direction { kIncreasing, kDecreasing, kConstant };

const char* to_string(Direction d);

// A sub-interval on which the source polynomial is monotone, hence a
// bijection onto its value range unless constant.
struct MonotonePiece {
  Polynomial source;
  Interval sub_interval;
  Direction direction = Direction::kConstant;

  // (min, max) of the source over the piece.
  std::pair<double, double> value_range() const;
};

struct SplitOptions {
  int grid_points = 1024;
  double root_tol = 1e-12;
  // Roots closer than this to each other or to an endpoint are merged.
  double merge_tol = 1e-9;
};

// Interior real roots of p on its open interval where p changes sign,
// ascending, found by a uniform sign scan refined by bisection.
std::vector<double> sign_change_roots(const Polynomial& p,
                                      const SplitOptions& options = {});

// Cuts the interval at the sign changes of the derivative. Throws
// kDegenerate for the zero polynomial; a nonzero constant yields one
// constant piece.
std::vector<MonotonePiece> split_monotone(const Polynomial& p,
                                          const SplitOptions& options = {});

// x1 != x2 -> u(x1) != u(x2) on `samples` interior points of the piece,
// checked as strict monotonicity of the sampled values.
bool is_equality_preserving(const MonotonePiece& piece, int samples = 64);

}  // namespace eigenforge
