#include "eigenforge/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "eigenforge/error.hpp"

namespace eigenforge::io {
namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kInvalidInput, where + ": " + what);
}

void expect_keys(const Json& j, const std::string& where, std::set<std::string> required,
                 std::set<std::string> optional = {}) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!required.count(key) && !optional.count(key)) bad(where, "unknown key \"" + key + "\"");
  }
  for (const auto& key : required) {
    if (!j.contains(key)) bad(where, "missing key \"" + key + "\"");
  }
}

double real(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "expected a finite number");
  return v;
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

Interval interval(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [a, b]");
  const Interval iv{real(j[0], where + "[0]"), real(j[1], where + "[1]")};
  if (!(iv.a < iv.b)) bad(where, "interval needs a < b");
  return iv;
}

sl::EndCondition end_condition(const Json& j, const std::string& where) {
  const std::string s = text(j, where);
  if (s == "value") return sl::EndCondition::kVanishValue;
  if (s == "derivative") return sl::EndCondition::kVanishDerivative;
  bad(where, "expected \"value\" or \"derivative\", got \"" + s + "\"");
}

sl::BoundaryCondition boundary(const Json& j, const std::string& where) {
  expect_keys(j, where, {"a", "b"});
  return {end_condition(j["a"], where + ".a"), end_condition(j["b"], where + ".b")};
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write(std::string& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        write(out, value, indent + 2);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j) flat = flat && is_scalar(v);
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          write(out, j[k], indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += inner;
        write(out, j[k], indent + 2);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}


}  // namespace

std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Keep floats recognisable as floats when read back.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string dump(const Json& value) {
  std::string out;
  write(out, value, 0);
  out += "\n";
  return out;
}

Json parse_text(const std::string& content, const std::string& what) {
  try {
    return Json::parse(content);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput, what + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

Polynomial polynomial_from_json(const Json& j, const std::string& where,
                                std::optional<Interval> fallback) {
  if (j.is_number()) {
    if (!fallback) bad(where, "a bare number needs an interval from context");
    return Polynomial::constant(real(j, where), *fallback);
  }
  if (fallback) {
    expect_keys(j, where, {"coeffs"}, {"interval"});
  } else {
    expect_keys(j, where, {"coeffs", "interval"});
  }
  const Json& c = j["coeffs"];
  if (!c.is_array() || c.empty()) bad(where + ".coeffs", "expected a non-empty array");
  std::vector<double> coeffs;
  for (std::size_t k = 0; k < c.size(); ++k) {
    coeffs.push_back(real(c[k], where + ".coeffs[" + std::to_string(k) + "]"));
  }
  const Interval iv = j.contains("interval") ? interval(j["interval"], where + ".interval") : *fallback;
  return Polynomial(std::move(coeffs), iv);
}

Json to_json(const Polynomial& p) {
  Json j;
  j["coeffs"] = p.coeffs();
  j["interval"] = {p.interval().a, p.interval().b};
  return j;
}

ProblemFile problem_from_json(const Json& j) {
  const std::string where = "problem";
  expect_keys(j, where, {"p", "q", "r", "bc"}, {"interval", "modes", "tol", "max_degree"});
  std::optional<Interval> iv;
  if (j.contains("interval")) iv = interval(j["interval"], where + ".interval");
  ProblemFile out{sl::SLProblem{polynomial_from_json(j["p"], where + ".p", iv),
                                polynomial_from_json(j["q"], where + ".q", iv),
                                polynomial_from_json(j["r"], where + ".r", iv),
                                boundary(j["bc"], where + ".bc")},
                  {}, {}, {}};
  if (j.contains("modes")) out.modes = integer(j["modes"], where + ".modes");
  if (j.contains("tol")) out.tol = real(j["tol"], where + ".tol");
  if (j.contains("max_degree")) out.max_degree = integer(j["max_degree"], where + ".max_degree");
  return out;
}

Json to_json(const sl::Solution& solution) {
  Json j;
  Json modes = Json::array();
  for (const auto& m : solution.modes) {
    Json e;
    e["lambda"] = m.lambda;
    e["coeffs"] = m.u.coeffs();
    e["interval"] = {m.u.interval().a, m.u.interval().b};
    e["degree"] = m.degree_used;
    modes.push_back(std::move(e));
  }
  j["modes"] = std::move(modes);
  Json trace = Json::array();
  for (const auto& [n, lambda] : solution.trace.entries) trace.push_back({n, lambda});
  j["trace"] = std::move(trace);
  return j;
}

ModelFile model_from_json(const Json& j) {
  const std::string where = "model";
  expect_keys(j, where, {"space_dims", "time_dim", "P", "modes"},
              {"components", "Q", "tol", "max_iter"});
  ModelFile out;
  auto& spec = out.spec;

  auto dimension = [&](const Json& d, const std::string& at, bool time) {
    if (time) {
      expect_keys(d, at, {"interval"}, {"r", "bc"});
    } else {
      expect_keys(d, at, {"interval", "r", "bc"});
    }
    sigma::Dimension dim;
    dim.interval = interval(d["interval"], at + ".interval");
    dim.r = d.contains("r") ? polynomial_from_json(d["r"], at + ".r", dim.interval)
                            : Polynomial::constant(1.0, dim.interval);
    dim.bc = d.contains("bc") ? boundary(d["bc"], at + ".bc") : sl::BoundaryCondition{};
    return dim;
  };

  const Json& sd = j["space_dims"];
  if (!sd.is_array() || sd.empty()) bad(where + ".space_dims", "expected a non-empty array");
  for (std::size_t i = 0; i < sd.size(); ++i) {
    spec.space_dims.push_back(dimension(sd[i], where + ".space_dims[" + std::to_string(i) + "]", false));
  }
  spec.time_dim = dimension(j["time_dim"], where + ".time_dim", true);
  if (j.contains("components")) spec.components = integer(j["components"], where + ".components");

  auto field = [&](const Json& f, const std::string& at) {
    expect_keys(f, at, {"terms"}, {"coupling_g"});
    sigma::CoeffField out_field;
    if (f.contains("coupling_g")) out_field.coupling_g = real(f["coupling_g"], at + ".coupling_g");
    const Json& terms = f["terms"];
    if (!terms.is_array()) bad(at + ".terms", "expected an array");
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tat = at + ".terms[" + std::to_string(t) + "]";
      const Json& term = terms[t];
      if (!term.is_array() || term.size() != spec.num_dims()) {
        bad(tat, "expected one factor per dimension (" + std::to_string(spec.num_dims()) +
                     ", space then time)");
      }
      std::vector<Polynomial> factors;
      for (std::size_t d = 0; d < term.size(); ++d) {
        const Interval iv =
            d < spec.space_dims.size() ? spec.space_dims[d].interval : spec.time_dim.interval;
        factors.push_back(polynomial_from_json(term[d], tat + "[" + std::to_string(d) + "]", iv));
      }
      out_field.terms.push_back(std::move(factors));
    }
    return out_field;
  };
  spec.P = field(j["P"], where + ".P");
  if (j.contains("Q")) spec.Q = field(j["Q"], where + ".Q");

  const Json& modes = j["modes"];
  if (!modes.is_array() || modes.empty()) bad(where + ".modes", "expected a non-empty array");
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const std::string at = where + ".modes[" + std::to_string(m) + "]";
    expect_keys(modes[m], at, {"label", "targets"}, {"amplitude"});
    sigma::ModeSpec mode;
    mode.label = text(modes[m]["label"], at + ".label");
    const Json& targets = modes[m]["targets"];
    if (!targets.is_array()) bad(at + ".targets", "expected an array");
    for (std::size_t k = 0; k < targets.size(); ++k) {
      mode.targets.push_back(integer(targets[k], at + ".targets[" + std::to_string(k) + "]"));
    }
    if (modes[m].contains("amplitude")) mode.amplitude = real(modes[m]["amplitude"], at + ".amplitude");
    spec.modes.push_back(std::move(mode));
  }
  if (j.contains("tol")) out.tol = real(j["tol"], where + ".tol");
  if (j.contains("max_iter")) out.max_iter = integer(j["max_iter"], where + ".max_iter");
  return out;
}

Json to_json(const sigma::SeparableEigenstate& state) {
  Json j;
  j["label"] = state.label;
  j["amplitude"] = state.amplitude;
  j["omega"] = state.omega;
  Json weights = Json::array();
  for (const auto& r : state.space_weights) weights.push_back(to_json(r));
  j["space_weights"] = std::move(weights);
  Json components = Json::array();
  for (const auto& row : state.factors) {
    Json factors = Json::array();
    for (const auto& f : row) {
      Json e;
      e["lambda"] = f.lambda;
      e["coeffs"] = f.u.coeffs();
      e["interval"] = {f.u.interval().a, f.u.interval().b};
      e["degree"] = f.degree_used;
      factors.push_back(std::move(e));
    }
    components.push_back(std::move(factors));
  }
  j["factors"] = std::move(components);
  return j;
}

Json to_json(const sigma::IterationReport& report) {
  Json j;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["indicial_residuals"] = report.indicial_residuals;
  j["factor_changes"] = report.factor_changes;
  return j;
}

Json to_json(const sigma::NullPostulateTerms& terms) {
  Json j;
  j["space_term"] = terms.space_term;
  j["time_term"] = terms.time_term;
  j["residual"] = terms.residual;
  j["degenerate"] = terms.degenerate;
  return j;
}

sigma::SeparableEigenstate state_from_json(const Json& j, const std::string& where) {
  expect_keys(j, where, {"label", "amplitude", "omega", "space_weights", "factors"},
              {"report", "null_postulate"});
  sigma::SeparableEigenstate state;
  state.label = text(j["label"], where + ".label");
  state.amplitude = real(j["amplitude"], where + ".amplitude");
  state.omega = real(j["omega"], where + ".omega");
  const Json& weights = j["space_weights"];
  if (!weights.is_array() || weights.empty()) bad(where + ".space_weights", "expected a non-empty array");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    state.space_weights.push_back(
        polynomial_from_json(weights[i], where + ".space_weights[" + std::to_string(i) + "]"));
  }
  const Json& comps = j["factors"];
  if (!comps.is_array() || comps.empty()) bad(where + ".factors", "expected a non-empty array");
  for (std::size_t l = 0; l < comps.size(); ++l) {
    const std::string at = where + ".factors[" + std::to_string(l) + "]";
    if (!comps[l].is_array() || comps[l].size() != weights.size() + 1) {
      bad(at, "expected one factor per space dimension plus time");
    }
    std::vector<sl::EigenPair> row;
    for (std::size_t d = 0; d < comps[l].size(); ++d) {
      const std::string fat = at + "[" + std::to_string(d) + "]";
      const Json& f = comps[l][d];
      expect_keys(f, fat, {"lambda", "coeffs", "interval"}, {"degree"});
      Json poly;
      poly["coeffs"] = f["coeffs"];
      poly["interval"] = f["interval"];
      sl::EigenPair pair;
      pair.lambda = real(f["lambda"], fat + ".lambda");
      pair.u = polynomial_from_json(poly, fat);
      pair.degree_used = f.contains("degree") ? integer(f["degree"], fat + ".degree") : pair.u.degree();
      row.push_back(std::move(pair));
    }
    state.factors.push_back(std::move(row));
  }
  return state;
}

Json to_json(const action::ActionSpectrum& spectrum) {
  Json j;
  Json alphas = Json::array();
  for (std::size_t m = 0; m < spectrum.alphas.size(); ++m) {
    Json e;
    e["mode"] = spectrum.labels[m];
    e["alpha"] = spectrum.alphas[m];
    alphas.push_back(std::move(e));
  }
  j["alphas"] = std::move(alphas);
  j["I"] = spectrum.lattice.quantum;
  j["multipliers"] = spectrum.lattice.multipliers;
  j["residuals"] = spectrum.lattice.residuals;
  j["closed"] = spectrum.closed;
  return j;
}

Json to_json(const action::EnergyLedger& ledger) {
  Json j;
  j["I"] = ledger.quantum_I;
  j["h"] = ledger.h;
  j["omegas"] = ledger.omegas;
  j["occupations"] = ledger.occupations;
  j["E_t"] = ledger.total;
  return j;
}

}  // namespace eigenforge::io
