#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eigenforge/error.hpp"
#include "eigenforge/polynomial.hpp"
#include "eigenforge/sl_eigen.hpp"

namespace eigenforge::sigma {

struct Dimension {
  Interval interval;
  Polynomial r;
  sl::BoundaryCondition bc;
};

// Separable coefficient field: a sum of terms, each a product of one factor
// per dimension (space dimensions first, then time), plus coupling_g * Psi^2.
struct CoeffField {
  std::vector<std::vector<Polynomial>> terms;
  double coupling_g = 0.0;
};

struct ModeSpec {
  std::string label;
  // 1-based mode number tracked in each space dimension (1 = lowest).
  std::vector<int> targets;
  double amplitude = 1.0;
};

struct SigmaModelSpec {
  std::vector<Dimension> space_dims;
  // Only r (a positive constant) and the interval length matter here: the
  // length seeds the first time piece before a frequency is known.
  Dimension time_dim;
  int components = 2;
  CoeffField P;
  CoeffField Q;
  std::vector<ModeSpec> modes;

  std::size_t num_dims() const { return space_dims.size() + 1; }
  std::size_t time_index() const { return space_dims.size(); }
};

void validate(const SigmaModelSpec& spec);

// Psi_l = A * prod_i u_li(x_i) * T_l(t). Space factors are r-normalized; the
// time factors are the unit harmonic pair (cos for even l, sin for odd l)
// on one quarter period [0, pi / (2 omega)].
struct SeparableEigenstate {
  std::string label;
  std::vector<std::vector<sl::EigenPair>> factors;  // [component][dimension]
  std::vector<Polynomial> space_weights;           // r_i per space dimension
  double amplitude = 1.0;
  double omega = 0.0;

  std::size_t num_space_dims() const { return space_weights.size(); }
};

struct IterationReport {
  int iterations = 0;
  std::vector<double> indicial_residuals;
  std::vector<double> factor_changes;
  bool converged = false;
};

struct SigmaOptions {
  double tol = 1e-10;
  int max_iter = 200;
  double damping = 0.5;
  double sl_tol = 1e-12;
  int sl_max_degree = 48;
  int time_degree = 20;
  int coupling_degree = 16;
  int coupling_points = 65;
};

struct StateSolution {
  SeparableEigenstate state;
  IterationReport report;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, IterationReport report)
      : Error(ErrorKind::kNonConvergence, what), report_(std::move(report)) {}
  const IterationReport& report() const { return report_; }

 private:
  IterationReport report_;
};

// Effective (p, q) for one dimension and component: every other dimension's
// factor of each term is replaced by its average against u^2 r, and the
// Psi^2 coupling contributes g A^2 prod(<u^4 r> / <u^2 r>) times a
// least-squares projection of u_dim^2. For the time dimension the result
// lives on the current time piece.
std::pair<Polynomial, Polynomial> effective_coeffs(const SigmaModelSpec& spec,
                                                   const SeparableEigenstate& state,
                                                   std::size_t dim, int component,
                                                   const SigmaOptions& options = {});

// Damped alternating sweeps over the space factors, each followed by pinning
// the time frequency so that the indicial constraint holds.
StateSolution solve_state(const SigmaModelSpec& spec, const ModeSpec& mode,
                          const SigmaOptions& options = {});

// |sum_{l,i} lambda_li - sum_l lambda_l,time|
double indicial_residual(const SeparableEigenstate& state);

struct NullPostulateTerms {
  double space_term = 0.0;
  double time_term = 0.0;
  double residual = 0.0;
  bool degenerate = false;  // zero field: both terms vanish
};

// The space and time integrals of the Lagrange density over one quarter
// time piece, by exact per-dimension quadrature of the separable products.
NullPostulateTerms null_postulate_terms(const SigmaModelSpec& spec,
                                        const SeparableEigenstate& state);

double null_postulate_residual(const SigmaModelSpec& spec, const SeparableEigenstate& state);

// Time factors of the harmonic pair at frequency omega, as polynomials in t.
std::vector<sl::EigenPair> harmonic_time_factors(double omega, int components, int degree);

// max |Psi_l| over a grid^(d+1) sample grid of space x time piece.
double field_max_abs(const SeparableEigenstate& state, int grid = 33);

}  // namespace eigenforge::sigma
