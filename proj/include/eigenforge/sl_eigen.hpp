#pragma once

#include <utility>
#include <vector>

#include "eigenforge/error.hpp"
#include "eigenforge/linalg.hpp"
#include "eigenforge/polynomial.hpp"

namespace eigenforge::sl {

// Each endpoint forces either the value or the derivative to vanish, so that
// u u' = 0 there. Vanishing values are built into the trial space; vanishing
// derivatives are the natural condition of the functional.
enum class EndCondition { kVanishValue, kVanishDerivative };

struct BoundaryCondition {
  EndCondition at_a = EndCondition::kVanishValue;
  EndCondition at_b = EndCondition::kVanishValue;

  int constrained_ends() const {
    return (at_a == EndCondition::kVanishValue) + (at_b == EndCondition::kVanishValue);
  }
};

// -(p u')' - q u = lambda r u on (a, b), in Rayleigh-quotient form.
struct SLProblem {
  Polynomial p;
  Polynomial q;
  Polynomial r;
  BoundaryCondition bc;

  Interval interval() const { return p.interval(); }
};

// Throws kIntervalMismatch / kInvalidInput unless p, q, r share the interval
// and p, r > 1e-12 at 257 Chebyshev points.
void validate(const SLProblem& prob);

struct EigenPair {
  double lambda = 0.0;
  Polynomial u;
  int mode_index = 0;
  int degree_used = 0;
};

// Ground-mode Ritz value per trial degree.
struct RitzTrace {
  std::vector<std::pair<int, double>> entries;
};

struct SolveOptions {
  int num_modes = 1;
  // Stop once lambda_N - lambda_{N+2} < k_tol for every requested mode.
  double k_tol = 1e-10;
  int max_degree = 40;
  int degree_cap = kDefaultDegreeCap;
  double jacobi_tol = 1e-14;
};

struct Solution {
  std::vector<EigenPair> modes;
  RitzTrace trace;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, RitzTrace trace)
      : Error(ErrorKind::kNonConvergence, what), trace_(std::move(trace)) {}
  const RitzTrace& trace() const { return trace_; }

 private:
  RitzTrace trace_;
};

// (int p u'^2 - q u^2) / (int r u^2). Only the essential (vanishing value)
// conditions are checked, to 1e-9.
double rayleigh_quotient(const SLProblem& prob, const Polynomial& u);

// Smallest trial degree whose boundary-respecting space is nonempty.
int minimal_degree(const BoundaryCondition& bc);

// Dimension of the trial space of total degree N.
int trial_dimension(const BoundaryCondition& bc, int degree);

// Stiffness and mass matrices of the trial space of total degree N, in the
// (unscaled) Legendre-combination basis.
std::pair<Matrix, Matrix> assemble(const SLProblem& prob, int degree);

// All Ritz pairs of the degree-N trial space, ascending, r-orthonormal.
std::vector<EigenPair> ritz_at_degree(const SLProblem& prob, int degree,
                                      double jacobi_tol = 1e-14);

// Degree escalation N0, N0 + 2, ... until the stopping rule holds.
Solution solve(const SLProblem& prob, const SolveOptions& options);

// max over 101 uniform points of |-(p u')' - q u - lambda r u| / (1 + |lambda|).
double residual(const SLProblem& prob, const EigenPair& pair);

}  // namespace eigenforge::sl
