#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eigenforge/action_quanta.hpp"
#include "eigenforge/polynomial.hpp"
#include "eigenforge/sigma_model.hpp"
#include "eigenforge/sl_eigen.hpp"

namespace eigenforge::io {

using Json = nlohmann::ordered_json;

// Deterministic text: two-space indent, arrays of scalars on one line,
// doubles with 17 significant digits, LF endings, trailing newline.
std::string dump(const Json& value);
std::string format_real(double x);

// Parses text, throwing kInvalidInput with the parser message on failure.
Json parse_text(const std::string& text, const std::string& what);
Json read_file(const std::string& path);

// {"coeffs": [...], "interval": [a, b]}. A bare number, or an object
// without "interval", takes `fallback` when one is given.
Polynomial polynomial_from_json(const Json& j, const std::string& where,
                                std::optional<Interval> fallback = std::nullopt);
Json to_json(const Polynomial& p);

struct ProblemFile {
  sl::SLProblem problem;
  std::optional<int> modes;
  std::optional<double> tol;
  std::optional<int> max_degree;
};
// {"p", "q", "r", "bc": {"a": "value|derivative", "b": ...}} with optional
// "interval", "modes", "tol", "max_degree". Unknown keys are rejected.
ProblemFile problem_from_json(const Json& j);
Json to_json(const sl::Solution& solution);

struct ModelFile {
  sigma::SigmaModelSpec spec;
  std::optional<double> tol;
  std::optional<int> max_iter;
};
ModelFile model_from_json(const Json& j);

Json to_json(const sigma::SeparableEigenstate& state);
Json to_json(const sigma::IterationReport& report);
Json to_json(const sigma::NullPostulateTerms& terms);
// Reads back the state part of a sigma result entry (report and residual
// fields are accepted and ignored).
sigma::SeparableEigenstate state_from_json(const Json& j, const std::string& where);

Json to_json(const action::ActionSpectrum& spectrum);
Json to_json(const action::EnergyLedger& ledger);

}  // namespace eigenforge::io
