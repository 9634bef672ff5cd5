#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "eigenforge/sl_eigen.hpp"
#include "support.hpp"

namespace eigenforge {
namespace {

using std::numbers::pi;
using sl::EndCondition;

sl::SLProblem make(Polynomial p, Polynomial q, Polynomial r,
                   EndCondition at_a = EndCondition::kVanishValue,
                   EndCondition at_b = EndCondition::kVanishValue) {
  return {std::move(p), std::move(q), std::move(r), {at_a, at_b}};
}

sl::SLProblem dirichlet(Interval iv = {0, 1}) {
  return make(Polynomial::constant(1, iv), Polynomial::constant(0, iv), Polynomial::constant(1, iv));
}

sl::SLProblem neumann() {
  const Interval iv{0, 1};
  return make(Polynomial::constant(1, iv), Polynomial::constant(0, iv), Polynomial::constant(1, iv),
              EndCondition::kVanishDerivative, EndCondition::kVanishDerivative);
}

// A few problems with variable coefficients and every boundary combination.
std::vector<sl::SLProblem> assorted() {
  const Interval iv{0, 1};
  const Interval wide{-1, 2};
  return {
      dirichlet(),
      make(Polynomial({1, 0, 1}, iv), Polynomial({0, 1}, iv), Polynomial({1, 1}, iv)),
      make(Polynomial({2, -1}, iv), Polynomial({-3}, iv), Polynomial({1, 0, 2}, iv),
           EndCondition::kVanishValue, EndCondition::kVanishDerivative),
      make(Polynomial({1.5, 0.2}, wide), Polynomial({0, 0, -0.5}, wide), Polynomial({2, 0.3}, wide),
           EndCondition::kVanishDerivative, EndCondition::kVanishValue),
      make(Polynomial({1, 0.5}, iv), Polynomial({1}, iv), Polynomial({1}, iv),
           EndCondition::kVanishDerivative, EndCondition::kVanishDerivative),
  };
}

sl::SolveOptions opts(int modes, double k_tol = 1e-10, int max_degree = 40) {
  sl::SolveOptions o;
  o.num_modes = modes;
  o.k_tol = k_tol;
  o.max_degree = max_degree;
  return o;
}

TEST(RayleighQuotient, BubbleIsTen) {
  const sl::SLProblem prob = dirichlet();
  EXPECT_NEAR(sl::rayleigh_quotient(prob, Polynomial({0, 1, -1}, Interval{0, 1})), 10.0, 1e-13);
}

TEST(RayleighQuotient, ConstantUnderNeumann) {
  EXPECT_EQ(sl::rayleigh_quotient(neumann(), Polynomial({1}, Interval{0, 1})), 0.0);
}

TEST(RayleighQuotient, Errors) {
  const sl::SLProblem prob = dirichlet();
  try {
    sl::rayleigh_quotient(prob, Polynomial({1, 1}, Interval{0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConstraint);
  }
  try {
    sl::rayleigh_quotient(prob, Polynomial({0}, Interval{0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(Solve, DirichletBenchmark) {
  const auto sol = sl::solve(dirichlet(), opts(2));
  ASSERT_EQ(sol.modes.size(), 2u);
  EXPECT_LE(testing::rel_err(sol.modes[0].lambda, pi * pi), 1e-6);
  EXPECT_LE(testing::rel_err(sol.modes[1].lambda, 4 * pi * pi), 1e-5);
  EXPECT_LE(sol.modes[0].degree_used, 16);
  ASSERT_FALSE(sol.trace.entries.empty());
  EXPECT_EQ(sol.trace.entries.front().first, 2);
  EXPECT_NEAR(sol.trace.entries.front().second, 10.0, 1e-12);
  for (std::size_t k = 1; k < sol.trace.entries.size(); ++k) {
    EXPECT_LE(sol.trace.entries[k].second, sol.trace.entries[k - 1].second);
  }
  // sin(pi x) has a positive first lobe.
  EXPECT_GT(sol.modes[0].u(0.5), 0.0);
  EXPECT_GT(sol.modes[1].u(0.25), 0.0);
}

TEST(Solve, NeumannConstantMode) {
  const auto sol = sl::solve(neumann(), opts(2));
  EXPECT_NEAR(sol.modes[0].lambda, 0.0, 1e-12);
  EXPECT_EQ(sol.modes[0].u.degree(), 0);
  EXPECT_NEAR(sol.modes[0].u(0.3), 1.0, 1e-12);
  EXPECT_LT(sl::residual(neumann(), sol.modes[0]), 1e-12);
  EXPECT_LE(testing::rel_err(sol.modes[1].lambda, pi * pi), 1e-8);
}

TEST(Solve, MixedEndsQuarterWave) {
  const Interval iv{0, 1};
  const auto prob = make(Polynomial::constant(1, iv), Polynomial::constant(0, iv),
                         Polynomial::constant(1, iv), EndCondition::kVanishValue,
                         EndCondition::kVanishDerivative);
  const auto sol = sl::solve(prob, opts(2));
  EXPECT_LE(testing::rel_err(sol.modes[0].lambda, pi * pi / 4), 1e-9);
  EXPECT_LE(testing::rel_err(sol.modes[1].lambda, 9 * pi * pi / 4), 1e-9);
  EXPECT_NEAR(differentiate(sol.modes[0].u)(1.0), 0.0, 1e-6);
}

TEST(Solve, EulerTypeCoefficient) {
  // -((1+x)^2 u')' = lambda u has u = (1+x)^(-1/2) sin(k pi ln(1+x) / ln 2),
  // lambda_k = 1/4 + (k pi / ln 2)^2.
  const Interval iv{0, 1};
  const auto prob = make(Polynomial({1, 2, 1}, iv), Polynomial::constant(0, iv),
                         Polynomial::constant(1, iv));
  const auto sol = sl::solve(prob, opts(2));
  for (int k = 1; k <= 2; ++k) {
    const double want = 0.25 + std::pow(k * pi / std::numbers::ln2, 2);
    EXPECT_LE(testing::rel_err(sol.modes[k - 1].lambda, want), 1e-9) << k;
  }
}

TEST(Residual, Examples) {
  const auto prob = dirichlet();
  const auto modes16 = sl::ritz_at_degree(prob, 16);
  EXPECT_LT(sl::residual(prob, modes16[0]), 1e-4);
  const auto modes2 = sl::ritz_at_degree(prob, 2);
  EXPECT_GT(sl::residual(prob, modes2[0]), 0.1);
}

TEST(Solve, NonConvergenceCarriesTrace) {
  try {
    sl::solve(dirichlet(), opts(1, 1e-10, 4));
    FAIL();
  } catch (const sl::NonConvergenceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonConvergence);
    ASSERT_FALSE(e.trace().entries.empty());
    EXPECT_NEAR(e.trace().entries.front().second, 10.0, 1e-12);
    EXPECT_LE(e.trace().entries.back().first, 4);
  }
}

TEST(Solve, RejectsNonPositiveWeights) {
  const Interval iv{0, 1};
  const auto bad_p = make(Polynomial({-1, 2}, iv), Polynomial::constant(0, iv), Polynomial::constant(1, iv));
  const auto bad_r = make(Polynomial::constant(1, iv), Polynomial::constant(0, iv), Polynomial({0, 1}, iv));
  for (const auto& prob : {bad_p, bad_r}) {
    try {
      sl::solve(prob, opts(1));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
    }
  }
  const auto mixed = make(Polynomial::constant(1, iv), Polynomial::constant(0, Interval{0, 2}),
                          Polynomial::constant(1, iv));
  try {
    sl::solve(mixed, opts(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIntervalMismatch);
  }
}

// Independent Ritz oracle: the Dirichlet trial space of degree N on (0, 1) is
// spanned by x^k (x - x^2), k < N - 1. Moments of monomials are exact, and
// Eigen solves the generalized problem. The Ritz values depend only on the
// space, not on the basis.
TEST(Solve, RitzValuesMatchMonomialOracle) {
  const Interval iv{0, 1};
  const std::vector<double> p{1, 0, 1}, q{0, 1}, r{1, 1};
  const auto prob = make(Polynomial(p, iv), Polynomial(q, iv), Polynomial(r, iv));
  const int degree = 8;
  const int n = degree - 1;
  auto moment = [](const std::vector<double>& w, int k) {
    double s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] / (k + j + 1.0);
    return s;
  };
  // phi_i = x^{i+1} - x^{i+2}; phi_i' = (i+1) x^i - (i+2) x^{i+1}
  Eigen::MatrixXd K(n, n), M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double di[2] = {i + 1.0, -(i + 2.0)};
      const double dj[2] = {j + 1.0, -(j + 2.0)};
      double kin = 0, pot = 0, mass = 0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          kin += di[a] * dj[b] * moment(p, i + j + a + b);
          const double sign = a == b ? 1.0 : -1.0;
          pot += sign * moment(q, i + j + 2 + a + b);
          mass += sign * moment(r, i + j + 2 + a + b);
        }
      }
      K(i, j) = kin - pot;
      M(i, j) = mass;
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> oracle(K, M);
  ASSERT_EQ(oracle.info(), Eigen::Success);
  const auto ours = sl::ritz_at_degree(prob, degree);
  ASSERT_EQ(ours.size(), static_cast<std::size_t>(n));
  for (int m = 0; m < 3; ++m) {
    EXPECT_LE(testing::rel_err(ours[m].lambda, oracle.eigenvalues()(m)), 1e-9) << m;
  }
}

TEST(SolveProperty, RitzValuesNonIncreasingInDegree) {
  for (const auto& prob : assorted()) {
    std::vector<double> prev;
    for (int degree = 6; degree <= 24; ++degree) {
      const auto pairs = sl::ritz_at_degree(prob, degree);
      for (std::size_t m = 0; m < std::min<std::size_t>(3, prev.size()); ++m) {
        EXPECT_LE(pairs[m].lambda, prev[m] + 1e-11 * (1 + std::abs(prev[m])))
            << "degree " << degree << " mode " << m;
      }
      prev.clear();
      for (const auto& e : pairs) prev.push_back(e.lambda);
    }
  }
}

TEST(SolveProperty, OrthonormalAndRayleighConsistent) {
  for (const auto& prob : assorted()) {
    const auto sol = sl::solve(prob, opts(4));
    ASSERT_EQ(sol.modes.size(), 4u);
    for (std::size_t i = 0; i < sol.modes.size(); ++i) {
      const auto& ui = sol.modes[i];
      const double rq = sl::rayleigh_quotient(prob, ui.u);
      EXPECT_LE(std::abs(rq - ui.lambda), 1e-10 * (1 + std::abs(ui.lambda))) << i;
      for (std::size_t j = 0; j < sol.modes.size(); ++j) {
        const double ip = integrate_product(prob.r, ui.u, sol.modes[j].u);
        EXPECT_NEAR(ip, i == j ? 1.0 : 0.0, 1e-9) << i << "," << j;
      }
      if (prob.bc.at_a == EndCondition::kVanishValue) {
        EXPECT_NEAR(ui.u(prob.interval().a), 0.0, 1e-12);
      }
      if (prob.bc.at_b == EndCondition::kVanishValue) {
        EXPECT_NEAR(ui.u(prob.interval().b), 0.0, 1e-12);
      }
    }
  }
}

TEST(SolveProperty, DomainScalingCovariance) {
  const auto base = sl::solve(dirichlet(), opts(3));
  for (double length : {0.25, 0.5, 2.0, 3.0, 7.5}) {
    const auto scaled = sl::solve(dirichlet(Interval{0, length}), opts(3));
    for (int m = 0; m < 3; ++m) {
      EXPECT_LE(testing::rel_err(scaled.modes[m].lambda * length * length, base.modes[m].lambda), 1e-8)
          << "L=" << length << " mode " << m;
    }
  }
}

TEST(SolveProperty, VariableCoefficientScalingCovariance) {
  const Interval unit{0, 1};
  const Polynomial p({1, 0.5, 0.25}, unit), r({2, -1}, unit);
  const auto base = sl::solve(make(p, Polynomial::constant(0, unit), r), opts(2));
  for (double length : {0.5, 4.0}) {
    const Interval iv{0, length};
    const auto prob = make(compose_affine(p, 1 / length, 0, iv), Polynomial::constant(0, iv),
                           compose_affine(r, 1 / length, 0, iv));
    const auto scaled = sl::solve(prob, opts(2));
    for (int m = 0; m < 2; ++m) {
      EXPECT_LE(testing::rel_err(scaled.modes[m].lambda * length * length, base.modes[m].lambda), 1e-8);
    }
  }
}

TEST(SolveProperty, TerminatesForEveryTolerance) {
  for (double k_tol : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10}) {
    const auto sol = sl::solve(dirichlet(), opts(1, k_tol, 40));
    EXPECT_LE(sol.modes[0].degree_used, 40);
    EXPECT_LE(sol.modes[0].lambda - pi * pi, 10 * k_tol + 1e-12);
  }
}

TEST(SolveProperty, RandomPositiveCoefficients) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(0.1, 1.0);
  const Interval iv{0, 1};
  for (int trial = 0; trial < 20; ++trial) {
    // Positive on [0, 1]: all coefficients positive.
    const Polynomial p({c(rng), c(rng), c(rng)}, iv);
    const Polynomial r({c(rng), c(rng)}, iv);
    const Polynomial q({c(rng) - 0.5}, iv);
    const auto prob = make(p, q, r, trial % 2 ? EndCondition::kVanishDerivative : EndCondition::kVanishValue);
    const auto sol = sl::solve(prob, opts(2));
    for (const auto& e : sol.modes) {
      EXPECT_LE(std::abs(sl::rayleigh_quotient(prob, e.u) - e.lambda), 1e-10 * (1 + std::abs(e.lambda)));
      EXPECT_LT(sl::residual(prob, e), 1e-3);
    }
    EXPECT_LT(sol.modes[0].lambda, sol.modes[1].lambda);
  }
}

}  // namespace
}  // namespace eigenforge
