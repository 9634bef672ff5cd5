#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eigenforge/polynomial.hpp"
#include "eigenforge/sigma_model.hpp"

namespace eigenforge::action {

// forward:  u1' = -u2, u2' = u1   (cos, sin)
// backward: u1' =  u2, u2' = -u1  (cos, -sin)
enum class Orientation { kForward, kBackward };

// Harmonic pair on one irreducible piece, as polynomials in tau = omega t.
struct TimePair {
  Polynomial u1;
  Polynomial u2;
  double quarter_period = 0.0;
  double omega = 1.0;
  Orientation orientation = Orientation::kForward;
};

// Locates the first piece on which both members of a full-period fit are
// monotone (via split_monotone), then fits cos / sin there by Chebyshev
// interpolation of the given degree. Throws kAccuracy when the derivative
// relations or u1^2 + u2^2 = 1 miss 1e-6.
TimePair make_time_pair(double omega, int degree,
                        Orientation orientation = Orientation::kForward);

// max |u1' +- u2| and |u2' -+ u1| over the piece.
double derivative_defect(const TimePair& pair);
// max |u1^2 + u2^2 - 1| over the piece.
double modulus_defect(const TimePair& pair);

// A^2 prod_i int u_i^2 r_i dx_i * int_0^{pi/2} (u1'^2 + u2'^2) dtau.
// Throws kPrecondition unless the space factors are r-normalized.
double action_integral(const sigma::SeparableEigenstate& state, const TimePair& pair);

struct Lattice {
  double quantum = 0.0;
  std::vector<std::int64_t> multipliers;
  std::vector<double> residuals;
};

// Real Euclidean gcd of the alphas with threshold tol, then n_m =
// round(alpha_m / I). Throws kNoLattice when a residual exceeds tol or the
// multipliers are too large for I to be resolved at this tolerance.
Lattice fit_lattice(std::span<const double> alphas, double tol);

// Every sum and absolute difference generated from the alphas up to `depth`
// rounds lies within tol of a multiple of I.
bool closure_check(std::span<const double> alphas, double quantum, double tol, int depth = 3);

struct TimeDensity {
  std::vector<double> tau;
  std::vector<double> kinetic;      // A^2 (u1'^2 + u2'^2)
  std::vector<double> schrodinger;  // (h/4pi) 2A^2 (u1 u2' - u2 u1') in tau units
};

TimeDensity schrodinger_time_density(const TimePair& pair, double amplitude, double h,
                                     int samples);

struct EnergyLedger {
  double quantum_I = 0.0;
  double h = 0.0;
  std::vector<double> omegas;
  std::vector<std::int64_t> occupations;
  double total = 0.0;
};

// h = 4I, E_t = sum n_m h omega_m / 2pi.
EnergyLedger total_energy(double quantum_I, std::span<const double> omegas,
                          std::span<const std::int64_t> occupations);

struct ActionSpectrum {
  std::vector<std::string> labels;
  std::vector<double> alphas;
  Lattice lattice;
  bool closed = false;
};

// alpha per state on a time pair at the state's frequency, then the lattice.
ActionSpectrum action_spectrum(std::span<const sigma::SeparableEigenstate> states,
                               double lattice_tol, int time_degree = 20);

}  // namespace eigenforge::action
