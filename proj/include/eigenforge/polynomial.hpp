#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace eigenforge {

struct Interval {
  double a = 0.0;
  double b = 1.0;

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x, double slack = 0.0) const {
    return x >= a - slack && x <= b + slack;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Degree cap for solver trial spaces; polynomial arithmetic itself is
// unbounded so that products of trial functions stay exact.
inline constexpr int kDefaultDegreeCap = 64;

// Real polynomial in the monomial basis, coefficients ascending, living on a
// finite interval (a, b) with a < b. The zero polynomial is {0}.
//
// Arithmetic and evaluation run on a second copy of the coefficients in the
// local variable s = (2x - a - b) / (b - a), which spans [-1, 1]. Monomials
// in x grow like ((|a| + |b|) / (b - a))^k relative to the function, so a
// degree-30 Legendre mode on (0, pi) expanded in x loses all precision; in s
// it does not. coeffs() reports the x-monomial form.
class Polynomial {
 public:
  Polynomial();
  Polynomial(std::vector<double> coeffs, Interval interval);

  static Polynomial constant(double c, Interval interval);
  // The identity map x on the interval.
  static Polynomial identity(Interval interval);
  // From coefficients in the local variable s.
  static Polynomial from_local(std::vector<double> local, Interval interval);

  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<double>& local_coeffs() const { return local_; }
  const Interval& interval() const { return interval_; }
  int degree() const { return static_cast<int>(local_.size()) - 1; }
  bool is_zero() const { return local_.size() == 1 && local_[0] == 0.0; }
  bool is_constant() const { return local_.size() == 1; }

  // Horner evaluation; throws kDomain outside [a, b].
  double operator()(double x) const;
  // Horner evaluation without the domain check, for quadrature kernels.
  double eval_unchecked(double x) const;
  // Evaluation at the local coordinate s in [-1, 1].
  double eval_local(double s) const;

  // The same function of x, restricted or extended to another interval.
  Polynomial with_interval(Interval interval) const;

  Polynomial operator-() const;
  Polynomial& operator*=(double s);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  struct LocalTag {};
  Polynomial(LocalTag, std::vector<double> local, Interval interval);

  std::vector<double> coeffs_;
  std::vector<double> local_;
  Interval interval_;
};

enum class ArithOp { kAdd, kSub, kMul };

// Coefficient-level arithmetic; throws kIntervalMismatch when the operands
// live on different intervals.
Polynomial poly_arith(const Polynomial& lhs, const Polynomial& rhs, ArithOp op);

Polynomial operator+(const Polynomial& lhs, const Polynomial& rhs);
Polynomial operator-(const Polynomial& lhs, const Polynomial& rhs);
Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
Polynomial operator*(double s, const Polynomial& p);

Polynomial differentiate(const Polynomial& p);
// Antiderivative with zero constant term.
Polynomial antiderivative(const Polynomial& p);

// Definite integral over the polynomial's interval by Gauss-Legendre with
// ceil((deg+1)/2) nodes, which is exact for the polynomial.
double integrate(const Polynomial& p);
// Same integral by evaluating the antiderivative at the endpoints.
double integrate_antiderivative(const Polynomial& p);

// Exact integral of the product of the factors. The factors are evaluated
// separately at the Gauss nodes, which avoids the cancellation of forming
// product coefficients in the monomial basis.
double integrate_product(std::initializer_list<const Polynomial*> factors);

inline double integrate_product(const Polynomial& f, const Polynomial& g) {
  return integrate_product({&f, &g});
}
inline double integrate_product(const Polynomial& w, const Polynomial& f,
                                const Polynomial& g) {
  return integrate_product({&w, &f, &g});
}

// p(scale * x + shift), as a polynomial in x on `interval`.
Polynomial compose_affine(const Polynomial& p, double scale, double shift,
                          Interval interval);

// Polynomial on `interval` from a Legendre series sum_k c_k L_k(s), where s
// maps the interval affinely onto [-1, 1].
Polynomial from_legendre_series(std::span<const double> c, Interval interval);
// Same for a Chebyshev series sum_k c_k T_k(s).
Polynomial from_chebyshev_series(std::span<const double> c, Interval interval);

// Discrete least-squares fit of f by a polynomial of degree <= `degree`
// sampled at `num_points` Chebyshev-Gauss points of the interval. With
// num_points == degree + 1 this is Chebyshev interpolation.
Polynomial chebyshev_fit(const std::function<double(double)>& f, int degree,
                         Interval interval, int num_points);

}  // namespace eigenforge
