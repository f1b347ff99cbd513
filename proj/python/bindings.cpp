#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asyncbool/bifurcation.hpp"
#include "asyncbool/cli.hpp"
#include "asyncbool/conjugacy.hpp"
#include "asyncbool/omega.hpp"
#include "asyncbool/runs.hpp"
#include "asyncbool/state_graph.hpp"
#include "asyncbool/text_format.hpp"

namespace py = pybind11;
using namespace asyncbool;

namespace {

std::vector<std::string> bits_of(const std::vector<State>& states) {
  std::vector<std::string> out;
  for (const auto& s : states) out.push_back(to_bits(s));
  return out;
}

py::dict verdict_dict(const EquivalenceVerdict& v) {
  py::dict d;
  d["equivalent"] = v.equivalent;
  if (v.witness) {
    d["h"] = render_bijection(v.witness->h);
    d["h_prime"] = render_bijection(v.witness->h_prime);
  }
  if (v.counterexample) {
    d["counterexample"] = py::make_tuple(to_bits(v.counterexample->nu), to_bits(v.counterexample->mu));
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_asyncbool, m) {
  m.doc() = "Asynchronous Boolean systems generated by truth tables";

  static py::exception<CapabilityError> capability_error(m, "CapabilityError", PyExc_RuntimeError);
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const CapabilityError& e) {
      py::set_error(capability_error, e.what());
    }
  });

  py::class_<TruthTable>(m, "TruthTable")
      .def(py::init([](const std::string& text) { return parse_truth_table(text); }), py::arg("text"))
      .def(py::init<unsigned, std::vector<std::uint32_t>>(), py::arg("width"), py::arg("outputs"))
      .def_static("identity", &TruthTable::identity)
      .def_static("negation", &TruthTable::negation)
      .def_property_readonly("width", &TruthTable::width)
      .def_property_readonly("outputs", [](const TruthTable& t) {
        return std::vector<std::uint32_t>(t.outputs().begin(), t.outputs().end());
      })
      .def("__call__", [](const TruthTable& t, const std::string& mu) { return to_bits(t(state_from_bits(mu))); })
      .def("__eq__", [](const TruthTable& a, const TruthTable& b) { return a == b; })
      .def("__str__", &render_truth_table);

  py::class_<StateBijection>(m, "Bijection")
      .def(py::init([](const std::string& text) { return parse_bijection(text); }), py::arg("text"))
      .def(py::init<unsigned, std::vector<std::uint32_t>>(), py::arg("width"), py::arg("forward"))
      .def_property_readonly("width", &StateBijection::width)
      .def("__call__", [](const StateBijection& h, const std::string& mu) { return to_bits(h(state_from_bits(mu))); })
      .def("__eq__", [](const StateBijection& a, const StateBijection& b) { return a == b; })
      .def("__str__", &render_bijection);

  m.def("apply_masked", [](const TruthTable& phi, const std::string& nu, const std::string& mu) {
    return to_bits(apply_masked(phi, mask_from_bits(nu), state_from_bits(mu)));
  }, py::arg("phi"), py::arg("nu"), py::arg("mu"));
  m.def("fixed_points", [](const TruthTable& phi) { return bits_of(fixed_points(phi)); });
  m.def("nullclin", [](const TruthTable& phi, unsigned i) { return bits_of(nullclin(phi, i)); });

  m.def("run_at", [](const TruthTable& phi, const std::string& rho, const std::string& mu, const std::string& t) {
    return to_bits(continuous_run(phi, parse_rho(rho), state_from_bits(mu))(parse_time(t)));
  }, py::arg("phi"), py::arg("rho"), py::arg("mu"), py::arg("t"), "Phi^rho(t, mu); rho and t in the text formats");
  m.def("final_value", [](const TruthTable& phi, const std::string& rho, const std::string& mu) -> py::object {
    const auto v = final_value(continuous_run(phi, parse_rho(rho), state_from_bits(mu)));
    if (!v) return py::none();
    return py::str(to_bits(*v));
  });
  m.def("period", [](const TruthTable& phi, const std::string& rho, const std::string& mu) -> py::object {
    const auto p = detect_period(continuous_run(phi, parse_rho(rho), state_from_bits(mu)));
    if (!p) return py::none();
    return py::make_tuple(to_string(p->period), to_string(p->t_prime));
  }, "(T0, t') as strings, or None when the run has a final value");

  m.def("accessible", [](const TruthTable& phi, const std::string& a, const std::string& b) {
    return accessible(phi, state_from_bits(a), state_from_bits(b));
  });
  m.def("is_transitive", [](const TruthTable& phi, const std::string& mode) {
    if (mode == "exists") return is_transitive_exists(phi);
    if (mode == "forall") return is_transitive_forall(phi);
    throw UsageError("mode must be 'exists' or 'forall'");
  }, py::arg("phi"), py::arg("mode") = "exists");
  m.def("portrait", [](const TruthTable& phi, bool self_loops) {
    return export_portrait(phi, PortraitOptions{self_loops});
  }, py::arg("phi"), py::arg("self_loops") = false);

  m.def("is_in_omega", [](const StateBijection& h) { return is_in_omega(h).verdict; });
  m.def("enumerate_omega", &enumerate_omega);

  m.def("check_conjugacy", [](const TruthTable& phi, const TruthTable& psi, const StateBijection& h,
                              const StateBijection& h_prime) {
    return verdict_dict(check_conjugacy(phi, psi, {h, h_prime}));
  });
  m.def("find_equivalence", [](const TruthTable& phi, const TruthTable& psi, unsigned jobs) {
    EquivalenceVerdict v;
    {
      py::gil_scoped_release release;
      v = find_equivalence(phi, psi, SearchOptions{jobs});
    }
    return verdict_dict(v);
  }, py::arg("phi"), py::arg("psi"), py::arg("jobs") = 1);

  m.def("bifurcation_classes", [](const std::string& family_text) {
    return bifurcation_diagram(parse_family(family_text)).classes;
  });
  m.def("structurally_stable", [](const std::string& family_text) {
    return family_structurally_stable(parse_family(family_text));
  });

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command-line front end in-process; returns (exit code, stdout, stderr).");
}
