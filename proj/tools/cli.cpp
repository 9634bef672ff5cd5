#include "cli.hpp"

#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "eigenforge/action_quanta.hpp"
#include "eigenforge/error.hpp"
#include "eigenforge/godel_codec.hpp"
#include "eigenforge/json_io.hpp"
#include "eigenforge/qstar.hpp"
#include "eigenforge/sigma_model.hpp"
#include "eigenforge/sl_eigen.hpp"

namespace eigenforge::cli {
namespace {

constexpr double kDefaultLatticeTol = 1e-9;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonConvergence: return kNonConvergence;
    case ErrorKind::kNoLattice: return kNoLattice;
    default: return kInvalidInput;
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::kInvalidInput, "cannot write " + path);
  file << text;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorKind::kInvalidInput, what + ": not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::kInvalidInput, what + ": expected a comma-separated list");
  return out;
}

struct EigenArgs {
  std::string problem, out;
  std::optional<int> modes, max_degree;
  std::optional<double> tol;
};

int run_eigen(const EigenArgs& a, std::ostream& out, std::ostream& err) {
  const io::ProblemFile file = io::problem_from_json(io::read_file(a.problem));
  sl::SolveOptions options;
  options.num_modes = a.modes.value_or(file.modes.value_or(1));
  options.k_tol = a.tol.value_or(file.tol.value_or(options.k_tol));
  options.max_degree = a.max_degree.value_or(file.max_degree.value_or(options.max_degree));
  try {
    emit(io::dump(io::to_json(sl::solve(file.problem, options))), a.out, out);
  } catch (const sl::NonConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& [n, lambda] : e.trace().entries) {
      err << "  degree " << n << ": lambda = " << io::format_real(lambda) << "\n";
    }
    return kNonConvergence;
  }
  return kOk;
}

struct SigmaArgs {
  std::string model, out;
  std::optional<double> tol;
  std::optional<int> max_iter;
};

int run_sigma(const SigmaArgs& a, std::ostream& out, std::ostream& err) {
  const io::ModelFile file = io::model_from_json(io::read_file(a.model));
  sigma::validate(file.spec);
  sigma::SigmaOptions options;
  options.tol = a.tol.value_or(file.tol.value_or(options.tol));
  options.max_iter = a.max_iter.value_or(file.max_iter.value_or(options.max_iter));

  // Eigenstates are independent; results are gathered in model order.
  std::vector<std::future<sigma::StateSolution>> jobs;
  for (const auto& mode : file.spec.modes) {
    jobs.push_back(std::async(std::launch::async, [&file, &options, mode] {
      return sigma::solve_state(file.spec, mode, options);
    }));
  }
  std::vector<sigma::StateSolution> solved;
  std::optional<Error> failure;
  for (auto& job : jobs) {
    try {
      solved.push_back(job.get());
    } catch (const Error& e) {
      if (!failure) failure = e;
    }
  }
  if (failure) throw *failure;

  io::Json result;
  io::Json states = io::Json::array();
  std::vector<sigma::SeparableEigenstate> plain;
  for (const auto& s : solved) {
    io::Json entry = io::to_json(s.state);
    entry["report"] = io::to_json(s.report);
    entry["null_postulate"] = io::to_json(sigma::null_postulate_terms(file.spec, s.state));
    states.push_back(std::move(entry));
    plain.push_back(s.state);
  }
  result["states"] = std::move(states);
  int code = kOk;
  try {
    result["spectrum"] = io::to_json(action::action_spectrum(plain, kDefaultLatticeTol));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNoLattice) throw;
    result["spectrum"] = nullptr;
    result["message"] = e.what();
    err << "error: " << e.what() << "\n";
    code = kNoLattice;
  }
  emit(io::dump(result), a.out, out);
  return code;
}

struct ActionArgs {
  std::string solution, out;
  double lattice_tol = kDefaultLatticeTol;
};

int run_action(const ActionArgs& a, std::ostream& out) {
  const io::Json doc = io::read_file(a.solution);
  if (!doc.is_object() || !doc.contains("states") || !doc["states"].is_array()) {
    throw Error(ErrorKind::kInvalidInput, a.solution + ": expected a sigma result with \"states\"");
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "states" && key != "spectrum" && key != "message") {
      throw Error(ErrorKind::kInvalidInput, a.solution + ": unknown key \"" + key + "\"");
    }
  }
  std::vector<sigma::SeparableEigenstate> states;
  for (std::size_t m = 0; m < doc["states"].size(); ++m) {
    states.push_back(io::state_from_json(doc["states"][m], "states[" + std::to_string(m) + "]"));
  }
  emit(io::dump(io::to_json(action::action_spectrum(states, a.lattice_tol))), a.out, out);
  return kOk;
}

struct EnumerateArgs {
  std::string omegas, out;
  double quantum_I = 0.0;
  double e_max = 0.0;
};

int run_enumerate(const EnumerateArgs& a, std::ostream& out) {
  const std::vector<double> omegas = parse_reals(a.omegas, "--omegas");
  if (!(a.quantum_I > 0.0)) throw Error(ErrorKind::kDomain, "--quantum-I must be positive");
  const auto rows = godel::enumerate_definable(omegas, 4.0 * a.quantum_I, a.e_max);
  std::ostringstream csv;
  godel::write_csv(csv, rows);
  emit(csv.str(), a.out, out);
  return kOk;
}

int run_qstar(const std::string& expr, const std::string& compare, std::ostream& out) {
  const qstar::Element value = qstar::parse(expr);
  const qstar::Element other = qstar::parse(compare);
  const std::string ref = qstar::to_string(other);
  out << qstar::to_string(value) << "\n"
      << qstar::to_string(qstar::classify(value)) << "; "
      << (qstar::equal(value, other) ? "equal to " : "not equal to ") << ref << "; "
      << (qstar::identical(value, other) ? "identical to " : "not identical to ") << ref << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"eigenforge: variational eigensolver, sigma-model, action quanta, codec"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed, "seed for randomized fixtures");

  EigenArgs eigen;
  auto* eigen_cmd = app.add_subcommand("eigen", "Rayleigh-Ritz Sturm-Liouville solve");
  eigen_cmd->add_option("--problem", eigen.problem, "problem JSON")->required();
  eigen_cmd->add_option("--modes", eigen.modes, "number of modes");
  eigen_cmd->add_option("--tol", eigen.tol, "stopping tolerance 1/k");
  eigen_cmd->add_option("--max-degree", eigen.max_degree, "highest polynomial degree");
  eigen_cmd->add_option("--out", eigen.out, "output file (default stdout)");

  SigmaArgs sig;
  auto* sigma_cmd = app.add_subcommand("sigma", "solve the sigma-model eigenstates");
  sigma_cmd->add_option("--model", sig.model, "model JSON")->required();
  sigma_cmd->add_option("--tol", sig.tol, "factor-change and indicial tolerance");
  sigma_cmd->add_option("--max-iter", sig.max_iter, "sweep limit");
  sigma_cmd->add_option("--out", sig.out, "output file (default stdout)");

  ActionArgs act;
  auto* action_cmd = app.add_subcommand("action", "action spectrum of solved eigenstates");
  action_cmd->add_option("--solution", act.solution, "sigma result JSON")->required();
  action_cmd->add_option("--lattice-tol", act.lattice_tol, "real gcd tolerance");
  action_cmd->add_option("--out", act.out, "output file (default stdout)");

  std::string occupation;
  auto* encode_cmd = app.add_subcommand("encode", "occupation numbers to Goedel integer");
  encode_cmd->add_option("--occupation", occupation, "e.g. 2,1")->required();

  std::string integer;
  auto* decode_cmd = app.add_subcommand("decode", "Goedel integer to occupation numbers");
  decode_cmd->add_option("--integer", integer, "positive integer")->required();

  EnumerateArgs en;
  auto* enum_cmd = app.add_subcommand("enumerate", "definable distributions up to an energy");
  enum_cmd->add_option("--omegas", en.omegas, "e.g. 1,2")->required();
  enum_cmd->add_option("--quantum-I", en.quantum_I, "action quantum (h = 4I)")->required();
  enum_cmd->add_option("--emax", en.e_max, "energy bound")->required();
  enum_cmd->add_option("--out", en.out, "output file (default stdout)");

  std::string expr;
  std::string compare = "1";
  auto* qstar_cmd = app.add_subcommand("qstar", "classify an element of the Q* model");
  qstar_cmd->add_option("--expr", expr, "e.g. (W+1)/W")->required();
  qstar_cmd->add_option("--compare", compare, "element to compare with");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*eigen_cmd) return run_eigen(eigen, out, err);
    if (*sigma_cmd) return run_sigma(sig, out, err);
    if (*action_cmd) return run_action(act, out);
    if (*encode_cmd) {
      out << godel::encode(godel::parse_occupation(occupation)).str() << "\n";
      return kOk;
    }
    if (*decode_cmd) {
      out << godel::format_occupation(godel::decode(godel::parse_integer(integer))) << "\n";
      return kOk;
    }
    if (*enum_cmd) return run_enumerate(en, out);
    if (*qstar_cmd) return run_qstar(expr, compare, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace eigenforge::cli
