#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eigenforge/error.hpp"
#include "eigenforge/monotone.hpp"
#include "support.hpp"

namespace eigenforge {
namespace {

TEST(SplitMonotone, MonotoneInput) {
  const auto pieces = split_monotone(Polynomial({0, 1}, Interval{0, 1}));
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].direction, Direction::kIncreasing);
  EXPECT_EQ(pieces[0].sub_interval.a, 0.0);
  EXPECT_EQ(pieces[0].sub_interval.b, 1.0);
}

TEST(SplitMonotone, Bubble) {
  const auto pieces = split_monotone(Polynomial({0, 1, -1}, Interval{0, 1}));
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_NEAR(pieces[0].sub_interval.b, 0.5, 1e-12);
  EXPECT_EQ(pieces[0].direction, Direction::kIncreasing);
  EXPECT_EQ(pieces[1].direction, Direction::kDecreasing);
}

TEST(SplitMonotone, Cubic) {
  const auto pieces = split_monotone(Polynomial({0, -1, 0, 1}, Interval{-2, 2}));
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_NEAR(pieces[0].sub_interval.b, -1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(pieces[1].sub_interval.b, 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_EQ(pieces[1].direction, Direction::kDecreasing);
}

TEST(SplitMonotone, ZeroPolynomialIsDegenerate) {
  try {
    split_monotone(Polynomial({0}, Interval{0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(SplitMonotone, ConstantIsOnePiece) {
  const auto pieces = split_monotone(Polynomial({3}, Interval{0, 1}));
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0].direction, Direction::kConstant);
  EXPECT_FALSE(is_equality_preserving(pieces[0]));
}

TEST(SplitMonotoneProperty, PiecesTileAndAlternate) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Interval iv{-1.0, 2.0};
    Polynomial p = testing::random_polynomial(rng, 9, iv, -5, 5);
    if (p.is_constant()) continue;
    const auto pieces = split_monotone(p);
    ASSERT_FALSE(pieces.empty());
    EXPECT_EQ(pieces.front().sub_interval.a, iv.a);
    EXPECT_EQ(pieces.back().sub_interval.b, iv.b);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const auto& piece = pieces[k];
      EXPECT_LT(piece.sub_interval.a, piece.sub_interval.b);
      if (k > 0) {
        EXPECT_EQ(piece.sub_interval.a, pieces[k - 1].sub_interval.b);
        EXPECT_NE(piece.direction, pieces[k - 1].direction);
      }
      EXPECT_TRUE(is_equality_preserving(piece));
      const auto [vlo, vhi] = piece.value_range();
      lo = std::min(lo, vlo);
      hi = std::max(hi, vhi);
    }
    // The piece ranges reproduce the function's range on a dense sample.
    double slo = INFINITY, shi = -INFINITY;
    for (int k = 0; k <= 4000; ++k) {
      const double v = p(iv.a + iv.length() * k / 4000.0);
      slo = std::min(slo, v);
      shi = std::max(shi, v);
    }
    const double scale = 1.0 + std::max(std::abs(slo), std::abs(shi));
    EXPECT_LE(lo, slo + 1e-12 * scale);
    EXPECT_GE(hi, shi - 1e-12 * scale);
    EXPECT_NEAR(lo, slo, 1e-5 * scale);
    EXPECT_NEAR(hi, shi, 1e-5 * scale);
  }
}

}  // namespace
}  // namespace eigenforge
