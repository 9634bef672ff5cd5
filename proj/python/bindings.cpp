#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eigenforge/action_quanta.hpp"
#include "eigenforge/error.hpp"
#include "eigenforge/godel_codec.hpp"
#include "eigenforge/json_io.hpp"
#include "eigenforge/monotone.hpp"
#include "eigenforge/polynomial.hpp"
#include "eigenforge/qstar.hpp"
#include "eigenforge/sigma_model.hpp"
#include "eigenforge/sl_eigen.hpp"

namespace py = pybind11;
using namespace eigenforge;

namespace {

godel::BigInt to_big(const py::int_& value) {
  return godel::parse_integer(py::str(value).cast<std::string>());
}

py::int_ to_py(const godel::BigInt& value) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "eigenforge native core";

  static py::exception<Error> base(m, "EigenforgeError", PyExc_ValueError);
  static py::exception<Error> nonconv(m, "NonConvergenceError", base.ptr());
  static py::exception<Error> nolattice(m, "NoLatticeError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      switch (e.kind()) {
        case ErrorKind::kNonConvergence: py::set_error(nonconv, msg.c_str()); break;
        case ErrorKind::kNoLattice: py::set_error(nolattice, msg.c_str()); break;
        default: py::set_error(base, msg.c_str()); break;
      }
    }
  });

  py::class_<Polynomial>(m, "Polynomial")
      .def(py::init([](std::vector<double> coeffs, std::pair<double, double> iv) {
             return Polynomial(std::move(coeffs), Interval{iv.first, iv.second});
           }),
           py::arg("coeffs"), py::arg("interval"))
      .def_property_readonly("coeffs", &Polynomial::coeffs)
      .def_property_readonly("interval",
                             [](const Polynomial& p) {
                               return std::pair{p.interval().a, p.interval().b};
                             })
      .def_property_readonly("degree", &Polynomial::degree)
      .def("__call__", [](const Polynomial& p, double x) { return p(x); })
      .def("integrate", [](const Polynomial& p) { return integrate(p); })
      .def("derivative", [](const Polynomial& p) { return differentiate(p); })
      .def("split_monotone", [](const Polynomial& p) {
        std::vector<std::tuple<double, double, std::string>> out;
        for (const auto& piece : split_monotone(p)) {
          out.emplace_back(piece.sub_interval.a, piece.sub_interval.b, to_string(piece.direction));
        }
        return out;
      })
      .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
      .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
      .def("__mul__", [](const Polynomial& a, const Polynomial& b) { return a * b; });

  m.def(
      "solve_eigen",
      [](const std::string& problem, int modes, double tol, int max_degree) {
        const io::ProblemFile file = io::problem_from_json(io::parse_text(problem, "problem"));
        sl::SolveOptions options;
        options.num_modes = modes;
        options.k_tol = tol;
        options.max_degree = max_degree;
        return io::dump(io::to_json(sl::solve(file.problem, options)));
      },
      py::arg("problem_json"), py::arg("modes") = 1, py::arg("tol") = 1e-10,
      py::arg("max_degree") = 40, "Problem JSON text in, solution JSON text out.");

  m.def(
      "solve_sigma",
      [](const std::string& model, std::optional<double> tol, std::optional<int> max_iter) {
        const io::ModelFile file = io::model_from_json(io::parse_text(model, "model"));
        sigma::SigmaOptions options;
        options.tol = tol.value_or(file.tol.value_or(options.tol));
        options.max_iter = max_iter.value_or(file.max_iter.value_or(options.max_iter));
        io::Json states = io::Json::array();
        for (const auto& mode : file.spec.modes) {
          const auto solved = sigma::solve_state(file.spec, mode, options);
          io::Json entry = io::to_json(solved.state);
          entry["report"] = io::to_json(solved.report);
          entry["null_postulate"] = io::to_json(sigma::null_postulate_terms(file.spec, solved.state));
          states.push_back(std::move(entry));
        }
        io::Json result;
        result["states"] = std::move(states);
        return io::dump(result);
      },
      py::arg("model_json"), py::arg("tol") = py::none(), py::arg("max_iter") = py::none(),
      "Model JSON text in; JSON text with one solved state per mode out.");

  m.def(
      "action_spectrum",
      [](const std::string& result, double lattice_tol) {
        const io::Json doc = io::parse_text(result, "sigma result");
        std::vector<sigma::SeparableEigenstate> states;
        for (std::size_t k = 0; k < doc.at("states").size(); ++k) {
          states.push_back(io::state_from_json(doc["states"][k], "states[" + std::to_string(k) + "]"));
        }
        return io::dump(io::to_json(action::action_spectrum(states, lattice_tol)));
      },
      py::arg("sigma_result_json"), py::arg("lattice_tol") = 1e-9);

  m.def(
      "fit_lattice",
      [](const std::vector<double>& alphas, double tol) {
        const auto lat = action::fit_lattice(alphas, tol);
        return py::make_tuple(lat.quantum, lat.multipliers, lat.residuals);
      },
      py::arg("alphas"), py::arg("tol") = 1e-9);
  m.def(
      "closure_check",
      [](const std::vector<double>& alphas, double quantum, double tol, int depth) {
        return action::closure_check(alphas, quantum, tol, depth);
      },
      py::arg("alphas"), py::arg("quantum"),
        py::arg("tol") = 1e-9, py::arg("depth") = 3);
  m.def(
      "time_pair",
      [](double omega, int degree) {
        const auto pair = action::make_time_pair(omega, degree);
        return py::make_tuple(pair.u1, pair.u2);
      },
      py::arg("omega"), py::arg("degree") = 20);
  m.def(
      "total_energy",
      [](double quantum, const std::vector<double>& omegas,
         const std::vector<std::int64_t>& occupations) {
        return io::dump(io::to_json(action::total_energy(quantum, omegas, occupations)));
      },
      py::arg("quantum_I"), py::arg("omegas"), py::arg("occupations"));

  m.def(
      "encode", [](const std::vector<std::int64_t>& occ) { return to_py(godel::encode(occ)); },
      py::arg("occupation"));
  m.def("decode", [](const py::int_& g) { return godel::decode(to_big(g)); }, py::arg("g"));
  m.def(
      "enumerate_definable",
      [](const std::vector<double>& omegas, double h, double e_max) {
        py::list out;
        for (const auto& row : godel::enumerate_definable(omegas, h, e_max)) {
          out.append(py::make_tuple(to_py(row.godel), row.occupation, row.energy));
        }
        return out;
      },
      py::arg("omegas"), py::arg("h"), py::arg("e_max"));

  m.def("qstar_canonical", [](const std::string& e) { return qstar::to_string(qstar::parse(e)); },
        py::arg("expr"));
  m.def(
      "qstar_classify",
      [](const std::string& e) { return std::string(qstar::to_string(qstar::classify(qstar::parse(e)))); },
      py::arg("expr"));
  m.def(
      "qstar_equal",
      [](const std::string& a, const std::string& b) {
        return qstar::equal(qstar::parse(a), qstar::parse(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "qstar_identical",
      [](const std::string& a, const std::string& b) {
        return qstar::identical(qstar::parse(a), qstar::parse(b));
      },
      py::arg("a"), py::arg("b"));
}
