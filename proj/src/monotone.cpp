#include "eigenforge/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "eigenforge/error.hpp"

namespace eigenforge {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::kIncreasing: return "increasing";
    case Direction::kDecreasing: return "decreasing";
    case Direction::kConstant: return "constant";
  }
  return "constant";
}

std::pair<double, double> MonotonePiece::value_range() const {
  const double lo = source.eval_unchecked(sub_interval.a);
  const double hi = source.eval_unchecked(sub_interval.b);
  return {std::min(lo, hi), std::max(lo, hi)};
}

namespace {

double bisect(const Polynomial& p, double lo, double hi, double flo, double tol) {
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p.eval_unchecked(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Direction direction_of(const Polynomial& p, double t0, double t1) {
  const double d = p.eval_unchecked(t1) - p.eval_unchecked(t0);
  if (d > 0.0) return Direction::kIncreasing;
  if (d < 0.0) return Direction::kDecreasing;
  return Direction::kConstant;
}

}  // namespace

std::vector<double> sign_change_roots(const Polynomial& p, const SplitOptions& options) {
  const Interval iv = p.interval();
  const int n = std::max(options.grid_points, 2);
  const double step = iv.length() / (n - 1);
  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? iv.b : iv.a + i * step;
    fs[i] = p.eval_unchecked(xs[i]);
  }

  std::vector<double> roots;
  for (int i = 0; i + 1 < n; ++i) {
    if (fs[i] == 0.0) {
      if (i > 0 && fs[i - 1] * fs[i + 1] < 0.0) roots.push_back(xs[i]);
      continue;
    }
    if (fs[i] * fs[i + 1] < 0.0) {
      roots.push_back(bisect(p, xs[i], xs[i + 1], fs[i], options.root_tol));
    }
  }

  std::vector<double> kept;
  for (double r : roots) {
    if (r - iv.a <= options.merge_tol || iv.b - r <= options.merge_tol) continue;
    if (!kept.empty() && r - kept.back() <= options.merge_tol) {
      kept.back() = 0.5 * (kept.back() + r);
      continue;
    }
    kept.push_back(r);
  }
  return kept;
}

std::vector<MonotonePiece> split_monotone(const Polynomial& p, const SplitOptions& options) {
  if (p.is_zero()) {
    throw Error(ErrorKind::kDegenerate, "split_monotone: zero polynomial");
  }
  const Interval iv = p.interval();
  if (p.is_constant()) {
    return {MonotonePiece{p, iv, Direction::kConstant}};
  }

  std::vector<double> cuts{iv.a};
  for (double r : sign_change_roots(differentiate(p), options)) cuts.push_back(r);
  cuts.push_back(iv.b);

  std::vector<MonotonePiece> pieces;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Direction dir = direction_of(p, cuts[k], cuts[k + 1]);
    if (!pieces.empty() && pieces.back().direction == dir) {
      // Merged roots can leave two same-direction neighbours; they are one piece.
      pieces.back().sub_interval.b = cuts[k + 1];
      continue;
    }
    pieces.push_back(MonotonePiece{p, Interval{cuts[k], cuts[k + 1]}, dir});
  }
  return pieces;
}

bool is_equality_preserving(const MonotonePiece& piece, int samples) {
  if (piece.direction == Direction::kConstant || samples < 2) return false;
  const double t0 = piece.sub_interval.a;
  const double h = piece.sub_interval.length() / (samples + 1);
  double prev = piece.source.eval_unchecked(t0 + h);
  for (int j = 2; j <= samples; ++j) {
    const double cur = piece.source.eval_unchecked(t0 + j * h);
    const bool ok = piece.direction == Direction::kIncreasing ? cur > prev : cur < prev;
    if (!ok) return false;
    prev = cur;
  }
  return true;
}

}  // namespace eigenforge
