#include "eigenforge/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eigenforge/error.hpp"
#include "eigenforge/quadrature.hpp"

namespace eigenforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kIntervalMismatch: return "interval mismatch";
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kDegenerate: return "degenerate input";
    case ErrorKind::kConstraint: return "constraint violation";
    case ErrorKind::kConditioning: return "ill-conditioned";
    case ErrorKind::kPrecondition: return "precondition violated";
    case ErrorKind::kAccuracy: return "accuracy not met";
    case ErrorKind::kNonConvergence: return "non-convergence";
    case ErrorKind::kNoLattice: return "no lattice";
  }
  return "error";
}

namespace {

void check_interval(Interval iv) {
  if (!std::isfinite(iv.a) || !std::isfinite(iv.b) || !(iv.a < iv.b)) {
    std::ostringstream msg;
    msg << "interval (" << iv.a << ", " << iv.b << ") must satisfy a < b";
    throw Error(ErrorKind::kInvalidInput, msg.str());
  }
}

double domain_slack(Interval iv) {
  return 1e-12 * std::max({1.0, std::abs(iv.a), std::abs(iv.b)});
}

void trim(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
}

// Coefficients of p(alpha + beta * y) in y, by Horner on coefficient vectors.
std::vector<double> substitute_linear(const std::vector<double>& c, double alpha,
                                      double beta) {
  std::vector<double> acc{c.back()};
  for (size_t k = c.size() - 1; k-- > 0;) {
    std::vector<double> next(acc.size() + 1, 0.0);
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i] += alpha * acc[i];
      next[i + 1] += beta * acc[i];
    }
    next[0] += c[k];
    acc = std::move(next);
  }
  return acc;
}

// x = mid + half * s, and back.
std::vector<double> x_to_local(const std::vector<double>& c, Interval iv) {
  return substitute_linear(c, iv.midpoint(), 0.5 * iv.length());
}
std::vector<double> local_to_x(const std::vector<double>& c, Interval iv) {
  const double inv_half = 2.0 / iv.length();
  return substitute_linear(c, -iv.midpoint() * inv_half, inv_half);
}

void axpy(std::vector<double>& out, double alpha, const std::vector<double>& p) {
  if (out.size() < p.size()) out.resize(p.size(), 0.0);
  for (size_t k = 0; k < p.size(); ++k) out[k] += alpha * p[k];
}

// out += alpha * s * p
void axpy_shifted(std::vector<double>& out, double alpha, const std::vector<double>& p) {
  if (out.size() < p.size() + 1) out.resize(p.size() + 1, 0.0);
  for (size_t k = 0; k < p.size(); ++k) out[k + 1] += alpha * p[k];
}

}  // namespace

Polynomial::Polynomial() : coeffs_{0.0}, local_{0.0}, interval_{0.0, 1.0} {}

Polynomial::Polynomial(std::vector<double> coeffs, Interval interval)
    : coeffs_(std::move(coeffs)), interval_(interval) {
  check_interval(interval_);
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::kInvalidInput, "polynomial coefficient is not finite");
    }
  }
  trim(coeffs_);
  local_ = x_to_local(coeffs_, interval_);
  trim(local_);
}

Polynomial::Polynomial(LocalTag, std::vector<double> local, Interval interval)
    : local_(std::move(local)), interval_(interval) {
  check_interval(interval_);
  for (double c : local_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::kInvalidInput, "polynomial coefficient is not finite");
    }
  }
  trim(local_);
  coeffs_ = local_to_x(local_, interval_);
  trim(coeffs_);
}

Polynomial Polynomial::from_local(std::vector<double> local, Interval interval) {
  return Polynomial(LocalTag{}, std::move(local), interval);
}

Polynomial Polynomial::constant(double c, Interval interval) {
  return Polynomial({c}, interval);
}

Polynomial Polynomial::identity(Interval interval) {
  return Polynomial({0.0, 1.0}, interval);
}

double Polynomial::eval_local(double s) const {
  double acc = 0.0;
  for (auto it = local_.rbegin(); it != local_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::eval_unchecked(double x) const {
  return eval_local((2.0 * x - interval_.a - interval_.b) / interval_.length());
}

double Polynomial::operator()(double x) const {
  if (!interval_.contains(x, domain_slack(interval_))) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [" << interval_.a << ", " << interval_.b << "]";
    throw Error(ErrorKind::kDomain, msg.str());
  }
  return eval_unchecked(x);
}

Polynomial Polynomial::with_interval(Interval interval) const {
  if (interval == interval_) return *this;
  return compose_affine(*this, 1.0, 0.0, interval);
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (double& c : out.coeffs_) c = -c;
  for (double& c : out.local_) c = -c;
  return out;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  for (double& c : local_) c *= s;
  trim(coeffs_);
  trim(local_);
  return *this;
}

Polynomial poly_arith(const Polynomial& lhs, const Polynomial& rhs, ArithOp op) {
  if (!(lhs.interval() == rhs.interval())) {
    throw Error(ErrorKind::kIntervalMismatch,
                "polynomial operands live on different intervals");
  }
  const auto& x = lhs.local_coeffs();
  const auto& y = rhs.local_coeffs();
  std::vector<double> out;
  switch (op) {
    case ArithOp::kAdd:
    case ArithOp::kSub: {
      const double sign = op == ArithOp::kAdd ? 1.0 : -1.0;
      out.assign(std::max(x.size(), y.size()), 0.0);
      for (size_t k = 0; k < x.size(); ++k) out[k] += x[k];
      for (size_t k = 0; k < y.size(); ++k) out[k] += sign * y[k];
      break;
    }
    case ArithOp::kMul: {
      out.assign(x.size() + y.size() - 1, 0.0);
      for (size_t i = 0; i < x.size(); ++i) {
        for (size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
      }
      break;
    }
  }
  return Polynomial::from_local(std::move(out), lhs.interval());
}

Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs) {
  return poly_arith(lhs, rhs, ArithOp::kAdd);
}
Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs) {
  return poly_arith(lhs, rhs, ArithOp::kSub);
}
Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  return poly_arith(lhs, rhs, ArithOp::kMul);
}
Polynomial operator*(double s, const Polynomial& p) {
  Polynomial out = p;
  out *= s;
  return out;
}

Polynomial differentiate(const Polynomial& p) {
  const auto& c = p.local_coeffs();
  if (c.size() == 1) return Polynomial::constant(0.0, p.interval());
  const double ds_dx = 2.0 / p.interval().length();
  std::vector<double> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k] * ds_dx;
  return Polynomial::from_local(std::move(d), p.interval());
}

// Vanishes at a, so that it is the integral from a to x.
Polynomial antiderivative(const Polynomial& p) {
  const auto& c = p.local_coeffs();
  const double dx_ds = 0.5 * p.interval().length();
  std::vector<double> out(c.size() + 1, 0.0);
  double at_a = 0.0;  // value at s = -1 before fixing the constant
  for (size_t k = 0; k < c.size(); ++k) {
    out[k + 1] = c[k] * dx_ds / static_cast<double>(k + 1);
    at_a += (k % 2 == 0 ? -1.0 : 1.0) * out[k + 1];
  }
  out[0] = -at_a;
  return Polynomial::from_local(std::move(out), p.interval());
}

double integrate(const Polynomial& p) {
  const auto& rule = gauss_legendre(exact_node_count(p.degree()));
  double sum = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    sum += rule.weights[q] * p.eval_local(rule.nodes[q]);
  }
  return 0.5 * p.interval().length() * sum;
}

double integrate_product(std::initializer_list<const Polynomial*> factors) {
  if (factors.size() == 0) {
    throw Error(ErrorKind::kInvalidInput, "integrate_product needs a factor");
  }
  const Interval iv = (*factors.begin())->interval();
  int degree = 0;
  for (const Polynomial* f : factors) {
    if (!(f->interval() == iv)) {
      throw Error(ErrorKind::kIntervalMismatch,
                  "integrate_product factors live on different intervals");
    }
    degree += f->degree();
  }
  const auto& rule = gauss_legendre(exact_node_count(degree));
  double sum = 0.0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    double v = rule.weights[q];
    for (const Polynomial* f : factors) v *= f->eval_local(rule.nodes[q]);
    sum += v;
  }
  return 0.5 * iv.length() * sum;
}

double integrate_antiderivative(const Polynomial& p) {
  const Polynomial anti = antiderivative(p);
  return anti.eval_local(1.0) - anti.eval_local(-1.0);
}

Polynomial compose_affine(const Polynomial& p, double scale, double shift,
                          Interval interval) {
  check_interval(interval);
  // New local coordinate t: x = mid + half * t, y = scale * x + shift, and
  // p's own local coordinate is (y - p.mid) / p.half.
  const Interval src = p.interval();
  const double src_half = 0.5 * src.length();
  const double alpha = (scale * interval.midpoint() + shift - src.midpoint()) / src_half;
  const double beta = scale * 0.5 * interval.length() / src_half;
  return Polynomial::from_local(substitute_linear(p.local_coeffs(), alpha, beta), interval);
}

Polynomial from_legendre_series(std::span<const double> c, Interval interval) {
  check_interval(interval);
  if (c.empty()) return Polynomial::constant(0.0, interval);
  std::vector<double> prev{1.0};
  std::vector<double> out;
  axpy(out, c[0], prev);
  if (c.size() == 1) return Polynomial::from_local(std::move(out), interval);
  std::vector<double> cur = {0.0, 1.0};
  axpy(out, c[1], cur);
  for (size_t n = 1; n + 1 < c.size(); ++n) {
    // (n+1) L_{n+1} = (2n+1) s L_n - n L_{n-1}
    std::vector<double> next;
    const double inv = 1.0 / static_cast<double>(n + 1);
    axpy_shifted(next, (2.0 * n + 1.0) * inv, cur);
    axpy(next, -static_cast<double>(n) * inv, prev);
    axpy(out, c[n + 1], next);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial::from_local(std::move(out), interval);
}

Polynomial from_chebyshev_series(std::span<const double> c, Interval interval) {
  check_interval(interval);
  if (c.empty()) return Polynomial::constant(0.0, interval);
  std::vector<double> prev{1.0};
  std::vector<double> out;
  axpy(out, c[0], prev);
  if (c.size() == 1) return Polynomial::from_local(std::move(out), interval);
  std::vector<double> cur = {0.0, 1.0};
  axpy(out, c[1], cur);
  for (size_t n = 1; n + 1 < c.size(); ++n) {
    std::vector<double> next;
    axpy_shifted(next, 2.0, cur);
    axpy(next, -1.0, prev);
    axpy(out, c[n + 1], next);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial::from_local(std::move(out), interval);
}

Polynomial chebyshev_fit(const std::function<double(double)>& f, int degree,
                         Interval interval, int num_points) {
  check_interval(interval);
  if (degree < 0 || num_points < degree + 1) {
    throw Error(ErrorKind::kInvalidInput,
                "chebyshev_fit needs degree >= 0 and num_points > degree");
  }
  const int n = num_points;
  std::vector<double> values(n);
  std::vector<double> angles(n);
  for (int j = 0; j < n; ++j) {
    angles[j] = std::numbers::pi * (j + 0.5) / n;
    const double s = std::cos(angles[j]);
    values[j] = f(interval.midpoint() + 0.5 * interval.length() * s);
  }
  std::vector<double> c(degree + 1, 0.0);
  for (int k = 0; k <= degree; ++k) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += values[j] * std::cos(k * angles[j]);
    c[k] = (k == 0 ? 1.0 : 2.0) * sum / n;
  }
  return from_chebyshev_series(c, interval);
}

}  // namespace eigenforge
