#include "eigenforge/sigma_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eigenforge/action_quanta.hpp"

namespace eigenforge::sigma {
namespace {

// Weight r_d of a dimension, on the interval its current factor lives on.
Polynomial weight_of(const SigmaModelSpec& spec, const SeparableEigenstate& state,
                     std::size_t d, int component) {
  if (d < spec.space_dims.size()) return spec.space_dims[d].r;
  return spec.time_dim.r.with_interval(state.factors[component][d].u.interval());
}

// <f> = int f u^2 r / int u^2 r; constants pass through exactly.
double average(const Polynomial& f, const Polynomial& u, const Polynomial& r) {
  if (f.is_constant()) return f.coeffs()[0];
  const Polynomial g = f.with_interval(u.interval());
  return integrate_product({&g, &u, &u, &r}) / integrate_product({&u, &u, &r});
}

double quartic_ratio(const Polynomial& u, const Polynomial& r) {
  return integrate_product({&u, &u, &u, &u, &r}) / integrate_product({&u, &u, &r});
}

Polynomial effective_field(const SigmaModelSpec& spec, const SeparableEigenstate& state,
                           const CoeffField& field, std::size_t dim, int component,
                           const SigmaOptions& options) {
  const auto& row = state.factors[component];
  const Interval iv = row[dim].u.interval();
  Polynomial acc = Polynomial::constant(0.0, iv);
  for (const auto& term : field.terms) {
    double prod = 1.0;
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (d == dim) continue;
      prod *= average(term[d], row[d].u, weight_of(spec, state, d, component));
    }
    acc = acc + prod * term[dim].with_interval(iv);
  }
  if (field.coupling_g != 0.0) {
    double c = field.coupling_g * state.amplitude * state.amplitude;
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (d == dim) continue;
      c *= quartic_ratio(row[d].u, weight_of(spec, state, d, component));
    }
    const Polynomial& u = row[dim].u;
    const Polynomial square = chebyshev_fit(
        [&u](double x) {
          const double v = u.eval_unchecked(x);
          return v * v;
        },
        options.coupling_degree, iv, options.coupling_points);
    acc = acc + c * square;
  }
  return acc;
}

void set_time_factors(SeparableEigenstate& state, double omega, int degree) {
  const std::size_t t = state.num_space_dims();
  const auto factors = harmonic_time_factors(omega, static_cast<int>(state.factors.size()), degree);
  for (std::size_t l = 0; l < state.factors.size(); ++l) state.factors[l][t] = factors[l];
  state.omega = omega;
}

// Pins the time eigenvalue to the space sum: with lambda_l,time taken as the
// Rayleigh quotient of the time factor, a_l omega^2 - b_l, the constraint is
// one equation in omega.
void project_time(const SigmaModelSpec& spec, SeparableEigenstate& state,
                  const SigmaOptions& options) {
  const std::size_t t = spec.time_index();
  const int components = static_cast<int>(state.factors.size());
  double space_sum = 0.0;
  for (const auto& row : state.factors)
    for (std::size_t i = 0; i < t; ++i) space_sum += row[i].lambda;

  auto rayleigh_parts = [&](int l) {
    const auto [p_t, q_t] = effective_coeffs(spec, state, t, l, options);
    const Polynomial& tf = state.factors[l][t].u;
    const Polynomial dtf = differentiate(tf);
    const Polynomial r_t = weight_of(spec, state, t, l);
    const double mass = integrate_product(r_t, tf, tf);
    const double kinetic = integrate_product(p_t, dtf, dtf) / mass;
    const double potential = integrate_product(q_t, tf, tf) / mass;
    return std::pair{kinetic, potential};
  };

  for (int iter = 0; iter < 50; ++iter) {
    const double w2_old = state.omega * state.omega;
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (int l = 0; l < components; ++l) {
      const auto [kinetic, potential] = rayleigh_parts(l);
      sum_a += kinetic / w2_old;
      sum_b += potential;
    }
    const double w2 = (space_sum + sum_b) / sum_a;
    if (!(w2 > 0.0) || !std::isfinite(w2)) {
      std::ostringstream msg;
      msg << "indicial constraint admits no real time frequency (omega^2 = " << w2 << ")";
      throw Error(ErrorKind::kInvalidInput, msg.str());
    }
    const double w = std::sqrt(w2);
    const bool settled = std::abs(w - state.omega) <= 1e-15 * w;
    set_time_factors(state, w, options.time_degree);
    if (settled) break;
  }
  for (int l = 0; l < components; ++l) {
    const auto [kinetic, potential] = rayleigh_parts(l);
    state.factors[l][t].lambda = kinetic - potential;
  }
}

double l2_distance(const Polynomial& a, const Polynomial& b) {
  const Polynomial diff = a - b;
  return std::sqrt(std::max(0.0, integrate_product(diff, diff)));
}

}  // namespace

void validate(const SigmaModelSpec& spec) {
  if (spec.space_dims.empty()) {
    throw Error(ErrorKind::kInvalidInput, "sigma model needs at least one space dimension");
  }
  if (spec.components < 1) throw Error(ErrorKind::kInvalidInput, "components must be >= 1");
  for (const auto& dim : spec.space_dims) {
    if (!(dim.r.interval() == dim.interval)) {
      throw Error(ErrorKind::kIntervalMismatch, "space weight r is not on its dimension's interval");
    }
    // Positivity of r reuses the Sturm-Liouville check with p = 1, q = 0.
    sl::validate(sl::SLProblem{Polynomial::constant(1.0, dim.interval),
                               Polynomial::constant(0.0, dim.interval), dim.r, dim.bc});
  }
  const auto& rt = spec.time_dim.r;
  if (!rt.is_constant() || !(rt.coeffs()[0] > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "time weight r must be a positive constant");
  }
  for (const CoeffField* field : {&spec.P, &spec.Q}) {
    if (!std::isfinite(field->coupling_g)) {
      throw Error(ErrorKind::kInvalidInput, "coupling_g must be finite");
    }
    for (const auto& term : field->terms) {
      if (term.size() != spec.num_dims()) {
        std::ostringstream msg;
        msg << "coefficient term has " << term.size() << " factors, expected "
            << spec.num_dims() << " (space dimensions then time)";
        throw Error(ErrorKind::kInvalidInput, msg.str());
      }
      for (std::size_t d = 0; d < spec.space_dims.size(); ++d) {
        if (!(term[d].interval() == spec.space_dims[d].interval)) {
          throw Error(ErrorKind::kIntervalMismatch,
                      "coefficient factor is not on its dimension's interval");
        }
      }
    }
  }
  for (const auto& mode : spec.modes) {
    if (mode.targets.size() != spec.space_dims.size()) {
      throw Error(ErrorKind::kInvalidInput,
                  "mode '" + mode.label + "' needs one target per space dimension");
    }
    for (int t : mode.targets) {
      if (t < 1) throw Error(ErrorKind::kInvalidInput, "mode targets are 1-based");
    }
    if (!std::isfinite(mode.amplitude)) {
      throw Error(ErrorKind::kInvalidInput, "amplitude must be finite");
    }
  }
}

std::pair<Polynomial, Polynomial> effective_coeffs(const SigmaModelSpec& spec,
                                                   const SeparableEigenstate& state,
                                                   std::size_t dim, int component,
                                                   const SigmaOptions& options) {
  if (dim >= spec.num_dims() || component < 0 ||
      component >= static_cast<int>(state.factors.size())) {
    throw Error(ErrorKind::kInvalidInput, "effective_coeffs: dimension or component out of range");
  }
  return {effective_field(spec, state, spec.P, dim, component, options),
          effective_field(spec, state, spec.Q, dim, component, options)};
}

std::vector<sl::EigenPair> harmonic_time_factors(double omega, int components, int degree) {
  const action::TimePair pair = action::make_time_pair(omega, degree);
  const Interval piece{0.0, pair.quarter_period / omega};
  const Polynomial cos_t = compose_affine(pair.u1, omega, 0.0, piece);
  const Polynomial sin_t = compose_affine(pair.u2, omega, 0.0, piece);
  std::vector<sl::EigenPair> out;
  for (int l = 0; l < components; ++l) {
    out.push_back(sl::EigenPair{omega * omega, l % 2 == 0 ? cos_t : sin_t, l, degree});
  }
  return out;
}

StateSolution solve_state(const SigmaModelSpec& spec, const ModeSpec& mode,
                          const SigmaOptions& options) {
  validate(spec);
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw Error(ErrorKind::kInvalidInput, "tol must be > 0 and max_iter >= 1");
  }
  if (mode.targets.size() != spec.space_dims.size()) {
    throw Error(ErrorKind::kInvalidInput, "one target per space dimension is required");
  }
  const std::size_t space = spec.space_dims.size();
  const int components = spec.components;

  SeparableEigenstate state;
  state.label = mode.label;
  state.amplitude = mode.amplitude;
  for (const auto& dim : spec.space_dims) state.space_weights.push_back(dim.r);
  state.factors.assign(components, std::vector<sl::EigenPair>(space + 1));
  set_time_factors(state, std::numbers::pi / (2.0 * spec.time_dim.interval.length()),
                   options.time_degree);

  auto sl_options = [&](int target) {
    sl::SolveOptions o;
    o.num_modes = target;
    o.k_tol = options.sl_tol;
    o.max_degree = options.sl_max_degree;
    return o;
  };

  // Seed each space factor with the plain (p = 1, q = 0) mode.
  for (std::size_t i = 0; i < space; ++i) {
    const auto& dim = spec.space_dims[i];
    const sl::SLProblem seed{Polynomial::constant(1.0, dim.interval),
                             Polynomial::constant(0.0, dim.interval), dim.r, dim.bc};
    const int target = mode.targets[i];
    const sl::EigenPair pair = sl::solve(seed, sl_options(target)).modes[target - 1];
    for (int l = 0; l < components; ++l) state.factors[l][i] = pair;
  }
  project_time(spec, state, options);

  IterationReport report;
  for (int it = 1; it <= options.max_iter; ++it) {
    double change = 0.0;
    for (int l = 0; l < components; ++l) {
      for (std::size_t i = 0; i < space; ++i) {
        const auto& dim = spec.space_dims[i];
        auto [p_eff, q_eff] = effective_coeffs(spec, state, i, l, options);
        const sl::SLProblem prob{std::move(p_eff), std::move(q_eff), dim.r, dim.bc};
        const int target = mode.targets[i];
        const sl::EigenPair fresh = sl::solve(prob, sl_options(target)).modes[target - 1];

        sl::EigenPair& slot = state.factors[l][i];
        Polynomial blended = slot.u + (1.0 - options.damping) * (fresh.u - slot.u);
        blended *= 1.0 / std::sqrt(integrate_product(dim.r, blended, blended));
        change = std::max(change, l2_distance(blended, slot.u));
        slot = sl::EigenPair{fresh.lambda, std::move(blended), target - 1, fresh.degree_used};
      }
    }
    const double omega_before = state.omega;
    project_time(spec, state, options);
    change = std::max(change, std::abs(state.omega - omega_before));

    const double residual = indicial_residual(state);
    report.iterations = it;
    report.indicial_residuals.push_back(residual);
    report.factor_changes.push_back(change);
    if (change < options.tol && residual <= options.tol) {
      report.converged = true;
      return {std::move(state), std::move(report)};
    }
  }
  std::ostringstream msg;
  msg << "sigma-model state '" << mode.label << "' did not converge in " << options.max_iter
      << " sweeps (last factor change " << report.factor_changes.back() << ")";
  throw NonConvergenceError(msg.str(), std::move(report));
}

double indicial_residual(const SeparableEigenstate& state) {
  const std::size_t t = state.num_space_dims();
  double space_sum = 0.0;
  double time_sum = 0.0;
  for (const auto& row : state.factors) {
    for (std::size_t i = 0; i < t; ++i) space_sum += row[i].lambda;
    time_sum += row[t].lambda;
  }
  return std::abs(space_sum - time_sum);
}

NullPostulateTerms null_postulate_terms(const SigmaModelSpec& spec,
                                        const SeparableEigenstate& state) {
  const std::size_t t = spec.time_index();
  const double a2 = state.amplitude * state.amplitude;
  NullPostulateTerms out;

  for (int l = 0; l < static_cast<int>(state.factors.size()); ++l) {
    const auto& row = state.factors[l];
    std::vector<Polynomial> weights;
    for (std::size_t d = 0; d <= t; ++d) weights.push_back(weight_of(spec, state, d, l));

    // int f u^2 r over dimension d, and int u^4 r.
    auto weighted = [&](const Polynomial& f, std::size_t d) {
      const Polynomial g = f.with_interval(row[d].u.interval());
      return integrate_product({&g, &row[d].u, &row[d].u, &weights[d]});
    };
    auto quartic = [&](std::size_t d) {
      const Polynomial& u = row[d].u;
      return integrate_product({&u, &u, &u, &u, &weights[d]});
    };

    for (std::size_t dim = 0; dim <= t; ++dim) {
      const Polynomial& u = row[dim].u;
      const Polynomial du = differentiate(u);
      double contrib = 0.0;
      for (const auto& term : spec.P.terms) {
        const Polynomial f = term[dim].with_interval(u.interval());
        double prod = integrate_product(f, du, du);
        for (std::size_t d = 0; d <= t; ++d)
          if (d != dim) prod *= weighted(term[d], d);
        contrib += a2 * prod;
      }
      for (const auto& term : spec.Q.terms) {
        const Polynomial g = term[dim].with_interval(u.interval());
        double prod = integrate_product(g, u, u);
        for (std::size_t d = 0; d <= t; ++d)
          if (d != dim) prod *= weighted(term[d], d);
        contrib -= a2 * prod;
      }
      if (spec.P.coupling_g != 0.0) {
        double prod = integrate_product({&du, &du, &u, &u});
        for (std::size_t d = 0; d <= t; ++d)
          if (d != dim) prod *= quartic(d);
        contrib += spec.P.coupling_g * a2 * a2 * prod;
      }
      if (spec.Q.coupling_g != 0.0) {
        double prod = integrate_product({&u, &u, &u, &u});
        for (std::size_t d = 0; d <= t; ++d)
          if (d != dim) prod *= quartic(d);
        contrib -= spec.Q.coupling_g * a2 * a2 * prod;
      }
      (dim < t ? out.space_term : out.time_term) += contrib;
    }
  }

  if (out.space_term == 0.0 && out.time_term == 0.0) {
    out.degenerate = true;
    out.residual = 0.0;
    return out;
  }
  out.residual = std::abs(out.space_term - out.time_term) / (std::abs(out.space_term) + 1e-300);
  return out;
}

double null_postulate_residual(const SigmaModelSpec& spec, const SeparableEigenstate& state) {
  return null_postulate_terms(spec, state).residual;
}

double field_max_abs(const SeparableEigenstate& state, int grid) {
  // Psi is a product of one-dimensional factors, so its maximum modulus over
  // a tensor grid is the product of the per-dimension maxima.
  double worst = 0.0;
  for (const auto& row : state.factors) {
    double prod = std::abs(state.amplitude);
    for (const auto& factor : row) {
      const Interval iv = factor.u.interval();
      double peak = 0.0;
      for (int k = 0; k < grid; ++k) {
        const double x = k == grid - 1 ? iv.b : iv.a + iv.length() * k / (grid - 1);
        peak = std::max(peak, std::abs(factor.u.eval_unchecked(x)));
      }
      prod *= peak;
    }
    worst = std::max(worst, prod);
  }
  return worst;
}

}  // namespace eigenforge::sigma
