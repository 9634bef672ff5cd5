#include "eigenforge/sl_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eigenforge/quadrature.hpp"

namespace eigenforge::sl {
namespace {

// A trial basis function as a short combination of Legendre polynomials.
struct BasisFunction {
  int first = 0;   // Legendre index of the leading term
  int offset = 0;  // index distance to the second term, 0 if none
  double second = 0.0;
};

std::vector<BasisFunction> trial_basis(const BoundaryCondition& bc, int degree) {
  const bool va = bc.at_a == EndCondition::kVanishValue;
  const bool vb = bc.at_b == EndCondition::kVanishValue;
  std::vector<BasisFunction> basis;
  const int n = trial_dimension(bc, degree);
  for (int k = 0; k < n; ++k) {
    if (va && vb) {
      basis.push_back({k, 2, -1.0});  // L_k - L_{k+2}: zero at both ends
    } else if (va) {
      basis.push_back({k, 1, 1.0});   // L_k + L_{k+1}: zero at s = -1
    } else if (vb) {
      basis.push_back({k, 1, -1.0});  // L_k - L_{k+1}: zero at s = +1
    } else {
      basis.push_back({k, 0, 0.0});
    }
  }
  return basis;
}

// Legendre values and s-derivatives L_0..L_n at s.
void legendre_table(double s, int n, std::vector<double>& val, std::vector<double>& der) {
  val.assign(n + 1, 0.0);
  der.assign(n + 1, 0.0);
  val[0] = 1.0;
  if (n >= 1) {
    val[1] = s;
    der[1] = 1.0;
  }
  for (int k = 1; k < n; ++k) {
    val[k + 1] = ((2.0 * k + 1.0) * s * val[k] - k * val[k - 1]) / (k + 1.0);
    der[k + 1] = (k + 1.0) * val[k] + s * der[k];
  }
}

// Mass-scaled generalized eigen decomposition at one degree; columns of
// `vectors` are coefficients in the unscaled basis.
constexpr double kChopTolerance = 1e-13;

SymmetricEigen ritz_decomposition(const SLProblem& prob, int degree, double jacobi_tol) {
  auto [stiff, mass] = assemble(prob, degree);
  const std::size_t n = mass.rows();
  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(mass(i, i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      stiff(i, j) *= scale[i] * scale[j];
      mass(i, j) *= scale[i] * scale[j];
    }
  }
  SymmetricEigen eig = generalized_symmetric_eigen(stiff, mass, jacobi_tol);
  // Chop the trailing coefficients that sit at rounding level: converting
  // to monomials amplifies each by roughly 2.4^k, so noise in high modes would
  // swamp the function. The basis is unit-mass, so the dropped tail sum
  // bounds the L2 change.
  for (std::size_t c = 0; c < n; ++c) {
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(eig.vectors(i, c)));
    double tail = 0.0;
    for (std::size_t i = n; i-- > 1;) {
      tail += std::abs(eig.vectors(i, c));
      if (tail > kChopTolerance * peak) break;
      eig.vectors(i, c) = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) eig.vectors(i, c) *= scale[i];
  }
  return eig;
}

// First lobe positive: the first sample, scanning from a, whose magnitude is
// a visible fraction of the peak decides the sign.
Polynomial canonical_sign(Polynomial u) {
  constexpr int kSamples = 513;
  const Interval iv = u.interval();
  std::vector<double> vals(kSamples);
  double peak = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    vals[k] = u.eval_unchecked(iv.a + iv.length() * k / (kSamples - 1));
    peak = std::max(peak, std::abs(vals[k]));
  }
  for (double v : vals) {
    if (std::abs(v) > 1e-3 * peak) {
      if (v < 0.0) u = -u;
      break;
    }
  }
  return u;
}

EigenPair make_pair(const SLProblem& prob, const SymmetricEigen& eig, int column,
                    int degree) {
  const auto basis = trial_basis(prob.bc, degree);
  std::vector<double> legendre(degree + 1, 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double v = eig.vectors(k, column);
    if (v == 0.0) continue;
    legendre[basis[k].first] += v;
    if (basis[k].offset != 0) legendre[basis[k].first + basis[k].offset] += basis[k].second * v;
  }
  Polynomial u = from_legendre_series(legendre, prob.interval());
  const double norm = integrate_product(prob.r, u, u);
  u *= 1.0 / std::sqrt(norm);
  return EigenPair{eig.values[column], canonical_sign(std::move(u)), column, degree};
}

}  // namespace

void validate(const SLProblem& prob) {
  const Interval iv = prob.p.interval();
  if (!(prob.q.interval() == iv) || !(prob.r.interval() == iv)) {
    throw Error(ErrorKind::kIntervalMismatch, "p, q, r must share one interval");
  }
  constexpr int kSamples = 257;
  for (int j = 0; j < kSamples; ++j) {
    const double x = iv.midpoint() +
                     0.5 * iv.length() * std::cos(std::numbers::pi * j / (kSamples - 1));
    if (!(prob.p.eval_unchecked(x) > 1e-12)) {
      std::ostringstream msg;
      msg << "p must be positive on [a, b]; p(" << x << ") = " << prob.p.eval_unchecked(x);
      throw Error(ErrorKind::kInvalidInput, msg.str());
    }
    if (!(prob.r.eval_unchecked(x) > 1e-12)) {
      std::ostringstream msg;
      msg << "r must be positive on [a, b]; r(" << x << ") = " << prob.r.eval_unchecked(x);
      throw Error(ErrorKind::kInvalidInput, msg.str());
    }
  }
}

double rayleigh_quotient(const SLProblem& prob, const Polynomial& u) {
  if (!(u.interval() == prob.interval())) {
    throw Error(ErrorKind::kIntervalMismatch, "trial function on a different interval");
  }
  if (u.is_zero()) throw Error(ErrorKind::kDegenerate, "zero trial function");
  const Interval iv = prob.interval();
  if (prob.bc.at_a == EndCondition::kVanishValue && std::abs(u(iv.a)) > 1e-9) {
    throw Error(ErrorKind::kConstraint, "trial function does not vanish at a");
  }
  if (prob.bc.at_b == EndCondition::kVanishValue && std::abs(u(iv.b)) > 1e-9) {
    throw Error(ErrorKind::kConstraint, "trial function does not vanish at b");
  }
  const double den = integrate_product(prob.r, u, u);
  if (den < 1e-14) {
    throw Error(ErrorKind::kDegenerate, "int r u^2 is numerically zero");
  }
  const Polynomial du = differentiate(u);
  const double num = integrate_product(prob.p, du, du) - integrate_product(prob.q, u, u);
  return num / den;
}

int minimal_degree(const BoundaryCondition& bc) { return bc.constrained_ends(); }

int trial_dimension(const BoundaryCondition& bc, int degree) {
  return std::max(0, degree + 1 - bc.constrained_ends());
}

std::pair<Matrix, Matrix> assemble(const SLProblem& prob, int degree) {
  const auto basis = trial_basis(prob.bc, degree);
  const std::size_t n = basis.size();
  if (n == 0) {
    throw Error(ErrorKind::kInvalidInput, "trial degree too low for the boundary conditions");
  }
  const Interval iv = prob.interval();
  const double half = 0.5 * iv.length();
  const double ds_dx = 1.0 / half;

  const int integrand_degree = std::max({prob.p.degree() + 2 * degree,
                                         prob.q.degree() + 2 * degree,
                                         prob.r.degree() + 2 * degree});
  const auto& rule = gauss_legendre(exact_node_count(integrand_degree));

  Matrix stiff(n, n);
  Matrix mass(n, n);
  std::vector<double> val;
  std::vector<double> der;
  std::vector<double> phi(n);
  std::vector<double> dphi(n);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double s = rule.nodes[k];
    const double x = iv.midpoint() + half * s;
    const double w = rule.weights[k] * half;
    legendre_table(s, degree, val, der);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& bf = basis[i];
      phi[i] = val[bf.first];
      dphi[i] = der[bf.first];
      if (bf.offset != 0) {
        phi[i] += bf.second * val[bf.first + bf.offset];
        dphi[i] += bf.second * der[bf.first + bf.offset];
      }
      dphi[i] *= ds_dx;
    }
    const double pw = w * prob.p.eval_unchecked(x);
    const double qw = w * prob.q.eval_unchecked(x);
    const double rw = w * prob.r.eval_unchecked(x);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        stiff(i, j) += pw * dphi[i] * dphi[j] - qw * phi[i] * phi[j];
        mass(i, j) += rw * phi[i] * phi[j];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      stiff(j, i) = stiff(i, j);
      mass(j, i) = mass(i, j);
    }
  }
  return {std::move(stiff), std::move(mass)};
}

std::vector<EigenPair> ritz_at_degree(const SLProblem& prob, int degree, double jacobi_tol) {
  validate(prob);
  const SymmetricEigen eig = ritz_decomposition(prob, degree, jacobi_tol);
  std::vector<EigenPair> pairs;
  for (std::size_t c = 0; c < eig.values.size(); ++c) {
    pairs.push_back(make_pair(prob, eig, static_cast<int>(c), degree));
  }
  return pairs;
}

Solution solve(const SLProblem& prob, const SolveOptions& options) {
  validate(prob);
  if (options.num_modes < 1) throw Error(ErrorKind::kInvalidInput, "num_modes must be >= 1");
  if (!(options.k_tol > 0.0)) throw Error(ErrorKind::kInvalidInput, "k_tol must be > 0");
  if (options.max_degree > options.degree_cap) {
    std::ostringstream msg;
    msg << "max_degree " << options.max_degree << " exceeds the degree cap "
        << options.degree_cap;
    throw Error(ErrorKind::kInvalidInput, msg.str());
  }
  const int start = minimal_degree(prob.bc);
  if (options.max_degree < start) {
    throw Error(ErrorKind::kInvalidInput, "max_degree below the minimal trial degree");
  }

  RitzTrace trace;
  SymmetricEigen prev = ritz_decomposition(prob, start, options.jacobi_tol);
  trace.entries.emplace_back(start, prev.values[0]);
  const auto modes = static_cast<std::size_t>(options.num_modes);

  for (int degree = start + 2; degree <= options.max_degree; degree += 2) {
    SymmetricEigen cur = ritz_decomposition(prob, degree, options.jacobi_tol);
    // Exact Ritz values cannot increase with the degree; once converged they
    // jitter at rounding level, which the trace clips.
    trace.entries.emplace_back(degree, std::min(cur.values[0], trace.entries.back().second));
    bool converged = prev.values.size() >= modes && cur.values.size() >= modes;
    for (std::size_t m = 0; converged && m < modes; ++m) {
      converged = prev.values[m] - cur.values[m] < options.k_tol;
    }
    if (converged) {
      Solution sol;
      for (std::size_t m = 0; m < modes; ++m) {
        sol.modes.push_back(make_pair(prob, cur, static_cast<int>(m), degree));
      }
      sol.trace = std::move(trace);
      return sol;
    }
    prev = std::move(cur);
  }
  std::ostringstream msg;
  msg << "Ritz values did not settle below k_tol = " << options.k_tol
      << " by degree " << options.max_degree;
  throw NonConvergenceError(msg.str(), std::move(trace));
}

double residual(const SLProblem& prob, const EigenPair& pair) {
  const Polynomial& u = pair.u;
  const Polynomial flux = prob.p * differentiate(u);
  const Polynomial strong = -differentiate(flux) - prob.q * u - pair.lambda * (prob.r * u);
  const Interval iv = prob.interval();
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i == 100 ? iv.b : iv.a + iv.length() * i / 100.0;
    worst = std::max(worst, std::abs(strong.eval_unchecked(x)));
  }
  return worst / (1.0 + std::abs(pair.lambda));
}

}  // namespace eigenforge::sl
