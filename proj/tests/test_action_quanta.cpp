#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eigenforge/action_quanta.hpp"
#include "support.hpp"

namespace eigenforge {
namespace {

using std::numbers::pi;
using action::Orientation;

sigma::SigmaModelSpec string_model(double g) {
  const Interval space{0, pi}, time{0, pi / 2};
  sigma::SigmaModelSpec spec;
  spec.space_dims = {{space, Polynomial::constant(1, space), {}}};
  spec.time_dim = {time, Polynomial::constant(1, time), {}};
  spec.P.terms = {{Polynomial::constant(1, space), Polynomial::constant(1, time)}};
  spec.P.coupling_g = g;
  for (int m = 1; m <= 3; ++m) spec.modes.push_back({"m" + std::to_string(m), {m}, 1.0});
  return spec;
}

std::vector<sigma::SeparableEigenstate> solve_all(const sigma::SigmaModelSpec& spec) {
  std::vector<sigma::SeparableEigenstate> states;
  for (const auto& mode : spec.modes) states.push_back(sigma::solve_state(spec, mode).state);
  return states;
}

const std::vector<sigma::SeparableEigenstate>& linear_states() {
  static const auto states = solve_all(string_model(0.0));
  return states;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidInput;
}

TEST(TimePair, EndpointValues) {
  const auto pair = action::make_time_pair(1.0, 12);
  EXPECT_NEAR(pair.quarter_period, pi / 2, 1e-9);
  EXPECT_NEAR(pair.u1(0.0), 1.0, 1e-8);
  EXPECT_NEAR(pair.u2(0.0), 0.0, 1e-8);
  EXPECT_LE(std::abs(pair.u1(pi / 2)), 1e-8);
  EXPECT_NEAR(pair.u2(pi / 2), 1.0, 1e-8);
  const double tau = 1.0;
  EXPECT_NEAR(pair.u1(tau) * pair.u1(tau) + pair.u2(tau) * pair.u2(tau), 1.0, 1e-6);
  EXPECT_LE(action::derivative_defect(pair), 1e-6);
  EXPECT_LE(action::modulus_defect(pair), 1e-6);
  for (int k = 0; k <= 40; ++k) {
    const double t = pair.quarter_period * k / 40;
    EXPECT_NEAR(pair.u1(t), std::cos(t), 1e-9);
    EXPECT_NEAR(pair.u2(t), std::sin(t), 1e-9);
  }
}

TEST(TimePair, BackwardOrientationFlipsSign) {
  const auto fwd = action::make_time_pair(1.0, 12);
  const auto bwd = action::make_time_pair(1.0, 12, Orientation::kBackward);
  const auto d1 = differentiate(bwd.u1), d2 = differentiate(bwd.u2);
  for (double t : {0.1, 0.8, 1.5}) {
    EXPECT_NEAR(bwd.u2(t), -fwd.u2(t), 1e-14);
    EXPECT_NEAR(d1(t), bwd.u2(t), 1e-6);
    EXPECT_NEAR(d2(t), -bwd.u1(t), 1e-6);
  }
  EXPECT_LE(action::derivative_defect(bwd), 1e-6);
}

TEST(TimePair, Errors) {
  EXPECT_EQ(kind_of([] { action::make_time_pair(0.0, 12); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(kind_of([] { action::make_time_pair(1.0, 4); }), ErrorKind::kAccuracy);
}

TEST(ActionIntegral, QuarterPeriodQuantum) {
  const auto pair = action::make_time_pair(1.0, 20);
  auto state = linear_states()[0];
  EXPECT_NEAR(action::action_integral(state, pair), pi / 2, 1e-7);
  state.amplitude = 2.0;
  EXPECT_NEAR(action::action_integral(state, pair), 2 * pi, 4e-7);
  state.amplitude = 0.0;
  EXPECT_EQ(action::action_integral(state, pair), 0.0);
}

TEST(ActionIntegral, RequiresNormalizedFactors) {
  const auto pair = action::make_time_pair(1.0, 20);
  auto state = linear_states()[0];
  state.factors[0][0].u *= 1.01;
  EXPECT_EQ(kind_of([&] { action::action_integral(state, pair); }), ErrorKind::kPrecondition);
}

TEST(ActionIntegral, EveryConvergedStateCarriesTheQuantum) {
  std::vector<sigma::SeparableEigenstate> states = linear_states();
  for (const auto& s : solve_all(string_model(0.01))) states.push_back(s);
  for (double amplitude : {0.5, 1.0, 1.7}) {
    for (auto state : states) {
      state.amplitude = amplitude;
      const auto pair = action::make_time_pair(state.omega, 20);
      const double want = amplitude * amplitude * pi / 2;
      EXPECT_LE(testing::rel_err(action::action_integral(state, pair), want), 1e-6) << state.label;
    }
  }
}

TEST(ActionIntegral, QuadraticInAmplitude) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> amp(0.1, 5.0);
  for (const auto& base : linear_states()) {
    const auto pair = action::make_time_pair(base.omega, 20);
    for (int trial = 0; trial < 10; ++trial) {
      auto state = base;
      state.amplitude = amp(rng);
      const double alpha = action::action_integral(state, pair);
      state.amplitude *= 2;
      EXPECT_LE(testing::rel_err(action::action_integral(state, pair), 4 * alpha), 1e-12);
    }
  }
}

TEST(Lattice, Examples) {
  const std::vector<double> ints{3.0, 6.0, 9.0};
  const auto lat = action::fit_lattice(ints, 1e-9);
  EXPECT_NEAR(lat.quantum, 3.0, 1e-12);
  EXPECT_EQ(lat.multipliers, (std::vector<std::int64_t>{1, 2, 3}));

  const std::vector<double> single{pi / 2};
  const auto one = action::fit_lattice(single, 1e-9);
  EXPECT_NEAR(one.quantum, pi / 2, 1e-15);
  EXPECT_EQ(one.multipliers, (std::vector<std::int64_t>{1}));

  const std::vector<double> irrational{1.0, std::sqrt(2.0)};
  EXPECT_EQ(kind_of([&] { action::fit_lattice(irrational, 1e-9); }), ErrorKind::kNoLattice);
}

TEST(Lattice, Closure) {
  const double I = 0.37;
  const std::vector<double> pair{I, 2 * I};
  EXPECT_TRUE(action::closure_check(pair, I, 1e-9));
  const std::vector<double> ints{3.0, 6.0, 9.0};
  EXPECT_TRUE(action::closure_check(ints, 3.0, 1e-9));
  const std::vector<double> irrational{1.0, std::sqrt(2.0)};
  EXPECT_FALSE(action::closure_check(irrational, 1.0, 1e-9));
}

TEST(LatticeProperty, IntegerMultiplesAreRecovered) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> quantum(0.1, 10.0);
  std::uniform_int_distribution<int> count(1, 6), mult(1, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const double I = quantum(rng);
    std::vector<double> alphas;
    std::vector<int> ns;
    for (int k = count(rng); k > 0; --k) {
      ns.push_back(mult(rng));
      alphas.push_back(ns.back() * I);
    }
    const auto lat = action::fit_lattice(alphas, 1e-9);
    // The fitted quantum is I times the gcd of the multipliers.
    int g = 0;
    for (int n : ns) g = std::gcd(g, n);
    EXPECT_LE(testing::rel_err(lat.quantum, g * I), 1e-9) << "trial " << trial;
    for (std::size_t m = 0; m < ns.size(); ++m) {
      EXPECT_EQ(lat.multipliers[m], ns[m] / g);
      EXPECT_LE(lat.residuals[m], 1e-9);
    }
    EXPECT_TRUE(action::closure_check(alphas, lat.quantum, 1e-9));
  }
}

TEST(TimeDensity, UnitAmplitude) {
  const auto pair = action::make_time_pair(1.0, 20);
  const auto dens = action::schrodinger_time_density(pair, 1.0, 4 * pi, 11);
  ASSERT_EQ(dens.tau.size(), 11u);
  for (std::size_t k = 0; k < 11; ++k) {
    EXPECT_NEAR(dens.kinetic[k], 1.0, 1e-6);
    EXPECT_NEAR(dens.schrodinger[k], 1.0, 1e-6);
  }
  const auto zero = action::schrodinger_time_density(pair, 0.0, 4 * pi, 11);
  for (std::size_t k = 0; k < 11; ++k) {
    EXPECT_EQ(zero.kinetic[k], 0.0);
    EXPECT_EQ(zero.schrodinger[k], 0.0);
  }
  const auto bwd = action::schrodinger_time_density(
      action::make_time_pair(1.0, 20, Orientation::kBackward), 1.0, 4 * pi, 11);
  for (std::size_t k = 0; k < 11; ++k) {
    EXPECT_NEAR(bwd.schrodinger[k], -dens.schrodinger[k], 1e-12);
    EXPECT_NEAR(bwd.kinetic[k], dens.kinetic[k], 1e-12);
  }
}

TEST(TotalEnergy, Examples) {
  const std::vector<double> omegas{1, 2};
  const std::vector<std::int64_t> n1{1, 0}, n0{0, 0}, n21{2, 1}, bad{-1, 0};
  EXPECT_NEAR(action::total_energy(pi / 2, omegas, n1).total, 1.0, 1e-15);
  EXPECT_EQ(action::total_energy(pi / 2, omegas, n0).total, 0.0);
  const auto ledger = action::total_energy(pi / 2, omegas, n21);
  EXPECT_NEAR(ledger.total, 4.0, 1e-15);
  EXPECT_NEAR(ledger.h, 2 * pi, 1e-15);
  EXPECT_EQ(kind_of([&] { action::total_energy(pi / 2, omegas, bad); }), ErrorKind::kDomain);
}

TEST(TotalEnergyProperty, Additive) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<std::int64_t> occ(0, 50);
  std::uniform_int_distribution<int> modes(1, 6), small(1, 5);
  std::uniform_real_distribution<double> freq(0.1, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = modes(rng);
    std::vector<double> omegas(m), integral(m);
    std::vector<std::int64_t> a(m), b(m), sum(m);
    for (int k = 0; k < m; ++k) {
      omegas[k] = freq(rng);
      integral[k] = small(rng);
      a[k] = occ(rng);
      b[k] = occ(rng);
      sum[k] = a[k] + b[k];
    }
    const double ea = action::total_energy(1.3, omegas, a).total;
    const double eb = action::total_energy(1.3, omegas, b).total;
    EXPECT_LE(testing::rel_err(action::total_energy(1.3, omegas, sum).total, ea + eb), 1e-13);
    // With h = 2 pi and integer frequencies every energy is an exact integer.
    const double ia = action::total_energy(pi / 2, integral, a).total;
    const double ib = action::total_energy(pi / 2, integral, b).total;
    EXPECT_EQ(action::total_energy(pi / 2, integral, sum).total, ia + ib);
  }
}

TEST(ActionSpectrum, StringModesFormALattice) {
  const auto spec = action::action_spectrum(linear_states(), 1e-8);
  EXPECT_NEAR(spec.lattice.quantum, pi / 2, 1e-7);
  EXPECT_EQ(spec.lattice.multipliers, (std::vector<std::int64_t>{1, 1, 1}));
  for (double r : spec.lattice.residuals) EXPECT_LE(r, 1e-8);
  EXPECT_TRUE(spec.closed);
  EXPECT_EQ(spec.labels, (std::vector<std::string>{"m1", "m2", "m3"}));
}

TEST(ActionSpectrum, IncommensurableAmplitudes) {
  auto states = linear_states();
  states.resize(2);
  states[1].amplitude = std::pow(2.0, 0.25);  // alpha ratio sqrt(2)
  EXPECT_EQ(kind_of([&] { action::action_spectrum(states, 1e-8); }), ErrorKind::kNoLattice);
}

}  // namespace
}  // namespace eigenforge
