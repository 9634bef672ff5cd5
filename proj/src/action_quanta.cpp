#include "eigenforge/action_quanta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eigenforge/monotone.hpp"

namespace eigenforge::action {
namespace {

constexpr int kDefectSamples = 201;
constexpr double kPairTolerance = 1e-6;

// First interior cut of a full period, where cos and sin stop being jointly
// monotone. Should land on pi/2; anything else means the fit is too coarse.
double first_joint_cut() {
  const Interval period{0.0, 2.0 * std::numbers::pi};
  const int degree = 28;
  double cut = period.b;
  for (auto fn : {+[](double x) { return std::cos(x); }, +[](double x) { return std::sin(x); }}) {
    const Polynomial full = chebyshev_fit(fn, degree, period, 2 * degree + 1);
    const auto pieces = split_monotone(full);
    if (pieces.size() > 1) cut = std::min(cut, pieces.front().sub_interval.b);
  }
  return cut;
}

template <typename F>
double max_over_piece(const TimePair& pair, F&& f) {
  const Interval iv = pair.u1.interval();
  double worst = 0.0;
  for (int k = 0; k < kDefectSamples; ++k) {
    const double x =
        k == kDefectSamples - 1 ? iv.b : iv.a + iv.length() * k / (kDefectSamples - 1);
    worst = std::max(worst, std::abs(f(x)));
  }
  return worst;
}

}  // namespace

TimePair make_time_pair(double omega, int degree, Orientation orientation) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorKind::kInvalidInput, "make_time_pair: omega must be positive and finite");
  }
  if (degree < 2) throw Error(ErrorKind::kInvalidInput, "make_time_pair: degree must be >= 2");

  static const double cut = first_joint_cut();
  const double quarter = std::numbers::pi / 2.0;
  if (std::abs(cut - quarter) > 1e-9) {
    std::ostringstream msg;
    msg << "monotone split of the harmonic pair cut at " << cut << ", not at a quarter period";
    throw Error(ErrorKind::kAccuracy, msg.str());
  }

  const Interval piece{0.0, quarter};
  const double sign = orientation == Orientation::kForward ? 1.0 : -1.0;
  TimePair pair{
      chebyshev_fit([](double x) { return std::cos(x); }, degree, piece, degree + 1),
      chebyshev_fit([sign](double x) { return sign * std::sin(x); }, degree, piece, degree + 1),
      quarter, omega, orientation};

  const double d_defect = derivative_defect(pair);
  const double m_defect = modulus_defect(pair);
  if (d_defect > kPairTolerance || m_defect > kPairTolerance) {
    std::ostringstream msg;
    msg << "harmonic pair at degree " << degree << " misses 1e-6 (derivative defect "
        << d_defect << ", modulus defect " << m_defect << ")";
    throw Error(ErrorKind::kAccuracy, msg.str());
  }
  return pair;
}

double derivative_defect(const TimePair& pair) {
  const Polynomial d1 = differentiate(pair.u1);
  const Polynomial d2 = differentiate(pair.u2);
  const double s = pair.orientation == Orientation::kForward ? 1.0 : -1.0;
  const double a = max_over_piece(pair, [&](double x) {
    return d1.eval_unchecked(x) + s * pair.u2.eval_unchecked(x);
  });
  const double b = max_over_piece(pair, [&](double x) {
    return d2.eval_unchecked(x) - s * pair.u1.eval_unchecked(x);
  });
  return std::max(a, b);
}

double modulus_defect(const TimePair& pair) {
  return max_over_piece(pair, [&](double x) {
    const double c = pair.u1.eval_unchecked(x);
    const double s = pair.u2.eval_unchecked(x);
    return c * c + s * s - 1.0;
  });
}

double action_integral(const sigma::SeparableEigenstate& state, const TimePair& pair) {
  const std::size_t space = state.num_space_dims();
  if (state.factors.empty()) throw Error(ErrorKind::kInvalidInput, "state has no components");
  double norm_product = 1.0;
  for (std::size_t l = 0; l < state.factors.size(); ++l) {
    for (std::size_t i = 0; i < space; ++i) {
      const Polynomial& u = state.factors[l][i].u;
      const double norm = integrate_product(state.space_weights[i], u, u);
      if (std::abs(norm - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << "space factor " << i << " of component " << l
            << " is not r-normalized (int r u^2 = " << norm << ")";
        throw Error(ErrorKind::kPrecondition, msg.str());
      }
      if (l == 0) norm_product *= norm;
    }
  }
  const Polynomial d1 = differentiate(pair.u1);
  const Polynomial d2 = differentiate(pair.u2);
  const double kinetic = integrate_product(d1, d1) + integrate_product(d2, d2);
  return state.amplitude * state.amplitude * norm_product * kinetic;
}

Lattice fit_lattice(std::span<const double> alphas, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::kInvalidInput, "fit_lattice: tol must be > 0");
  if (alphas.empty()) throw Error(ErrorKind::kInvalidInput, "fit_lattice: no alphas");
  for (double a : alphas) {
    if (!(a > tol) || !std::isfinite(a)) {
      throw Error(ErrorKind::kInvalidInput, "fit_lattice: every alpha must exceed tol");
    }
  }

  auto real_gcd = [tol](double a, double b) {
    if (a < b) std::swap(a, b);
    while (b > tol) {
      double r = std::fmod(a, b);
      if (r <= tol || b - r <= tol) r = 0.0;
      a = b;
      b = r;
    }
    return a;
  };
  double quantum = alphas[0];
  for (std::size_t m = 1; m < alphas.size(); ++m) quantum = real_gcd(quantum, alphas[m]);

  Lattice out;
  out.quantum = quantum;
  double n_max = 0.0;
  for (double a : alphas) {
    const double n = std::round(a / quantum);
    if (n > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2)) {
      throw Error(ErrorKind::kNoLattice, "alphas admit no common quantum at this tolerance");
    }
    n_max = std::max(n_max, n);
    out.multipliers.push_back(static_cast<std::int64_t>(n));
    out.residuals.push_back(std::abs(a - n * quantum));
  }
  const double worst = *std::max_element(out.residuals.begin(), out.residuals.end());
  // A quantum so small that tol-sized errors in it accumulate to half a
  // step across the multipliers cannot separate n from n + 1.
  if (worst > tol || n_max * tol >= quantum / 2.0) {
    std::ostringstream msg;
    msg << "alphas admit no common quantum at tol " << tol << " (candidate I = " << quantum
        << ", worst residual " << worst << ")";
    throw Error(ErrorKind::kNoLattice, msg.str());
  }
  return out;
}

bool closure_check(std::span<const double> alphas, double quantum, double tol, int depth) {
  if (!(quantum > 0.0) || !(tol > 0.0)) return false;
  auto on_lattice = [&](double v) { return std::abs(v - std::round(v / quantum) * quantum) <= tol; };
  auto dedupe = [tol](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::vector<double> kept;
    for (double x : v) {
      if (x <= tol) continue;
      if (kept.empty() || x - kept.back() > tol) kept.push_back(x);
    }
    v = std::move(kept);
  };

  std::vector<double> set(alphas.begin(), alphas.end());
  for (double a : set)
    if (!on_lattice(a)) return false;
  dedupe(set);
  for (int round = 0; round < depth; ++round) {
    std::vector<double> next = set;
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i; j < set.size(); ++j) {
        const double sum = set[i] + set[j];
        const double diff = std::abs(set[i] - set[j]);
        if (!on_lattice(sum) || !on_lattice(diff)) return false;
        next.push_back(sum);
        next.push_back(diff);
      }
    }
    dedupe(next);
    set = std::move(next);
  }
  return true;
}

TimeDensity schrodinger_time_density(const TimePair& pair, double amplitude, double h,
                                     int samples) {
  if (!(h > 0.0)) throw Error(ErrorKind::kInvalidInput, "schrodinger_time_density: h must be > 0");
  if (samples < 2) throw Error(ErrorKind::kInvalidInput, "schrodinger_time_density: samples >= 2");
  const Polynomial d1 = differentiate(pair.u1);
  const Polynomial d2 = differentiate(pair.u2);
  const Interval iv = pair.u1.interval();
  const double a2 = amplitude * amplitude;
  TimeDensity out;
  for (int k = 0; k < samples; ++k) {
    const double tau = k == samples - 1 ? iv.b : iv.a + iv.length() * k / (samples - 1);
    const double u1 = pair.u1.eval_unchecked(tau);
    const double u2 = pair.u2.eval_unchecked(tau);
    const double v1 = d1.eval_unchecked(tau);
    const double v2 = d2.eval_unchecked(tau);
    out.tau.push_back(tau);
    out.kinetic.push_back(a2 * (v1 * v1 + v2 * v2));
    // (h / 4pi) * 2 A^2 (u1 u2' - u2 u1'), per unit of h / 2pi.
    const double density = h / (4.0 * std::numbers::pi) * 2.0 * a2 * (u1 * v2 - u2 * v1);
    out.schrodinger.push_back(density / (h / (2.0 * std::numbers::pi)));
  }
  return out;
}

EnergyLedger total_energy(double quantum_I, std::span<const double> omegas,
                          std::span<const std::int64_t> occupations) {
  if (!(quantum_I > 0.0) || !std::isfinite(quantum_I)) {
    throw Error(ErrorKind::kDomain, "total_energy: I must be positive");
  }
  if (omegas.size() != occupations.size()) {
    throw Error(ErrorKind::kInvalidInput, "total_energy: one occupation per frequency");
  }
  EnergyLedger out;
  out.quantum_I = quantum_I;
  out.h = 4.0 * quantum_I;
  // Sum n * omega first so that integer ledgers add exactly.
  double weighted = 0.0;
  for (std::size_t m = 0; m < omegas.size(); ++m) {
    if (!(omegas[m] > 0.0) || !std::isfinite(omegas[m])) {
      throw Error(ErrorKind::kDomain, "total_energy: frequencies must be positive");
    }
    if (occupations[m] < 0) throw Error(ErrorKind::kDomain, "total_energy: negative occupation");
    weighted += static_cast<double>(occupations[m]) * omegas[m];
  }
  out.total = out.h / (2.0 * std::numbers::pi) * weighted;
  out.omegas.assign(omegas.begin(), omegas.end());
  out.occupations.assign(occupations.begin(), occupations.end());
  return out;
}

ActionSpectrum action_spectrum(std::span<const sigma::SeparableEigenstate> states,
                               double lattice_tol, int time_degree) {
  ActionSpectrum out;
  for (const auto& state : states) {
    const TimePair pair = make_time_pair(state.omega, time_degree);
    out.labels.push_back(state.label);
    out.alphas.push_back(action_integral(state, pair));
  }
  out.lattice = fit_lattice(out.alphas, lattice_tol);
  out.closed = closure_check(out.alphas, out.lattice.quantum, lattice_tol, 3);
  return out;
}

}  // namespace eigenforge::action
