#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cutpaste/channels.hpp"
#include "cutpaste/continuous.hpp"
#include "cutpaste/entanglement.hpp"
#include "cutpaste/errors.hpp"
#include "cutpaste/io.hpp"
#include "cutpaste/optics.hpp"

namespace py = pybind11;
using namespace cutpaste;

namespace {

py::object optional_length(const std::optional<double>& v) {
  return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::list profile_rows(const std::vector<ProfilePoint>& rows) {
  py::list out;
  for (const auto& r : rows) out.append(py::make_tuple(r.x, r.concurrence, r.pre_clamp));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Qubit channel algebra, switched Lindblad lines and the three-interferometer optical model";
  m.attr("__version__") = io::library_version();

  static py::exception<Error> error_type(m, "CutPasteError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<QuantumChannel>(m, "QuantumChannel")
      .def_static("from_kraus", &QuantumChannel::from_kraus, py::arg("kraus"))
      .def_static("from_superop", &QuantumChannel::from_superop, py::arg("superop"), py::arg("in_dim"),
                  py::arg("out_dim"))
      .def_static("identity", &QuantumChannel::identity, py::arg("dim"))
      .def_property_readonly("in_dim", &QuantumChannel::in_dim)
      .def_property_readonly("out_dim", &QuantumChannel::out_dim)
      .def_property_readonly("kraus", &QuantumChannel::kraus)
      .def_property_readonly("superop", &QuantumChannel::superop)
      .def_property_readonly("trace_preserving", &QuantumChannel::trace_preserving)
      .def("apply", &QuantumChannel::apply, py::arg("rho"))
      .def("apply_on_first", &QuantumChannel::apply_on_first, py::arg("rho"), py::arg("ancilla_dim"))
      .def("choi_matrix", &QuantumChannel::choi_matrix)
      .def("to_json", [](const QuantumChannel& c) { return io::channel_to_json(c).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::channel_from_json(io::json::parse(s)); });

  m.def("ad_channel", &ad_channel, py::arg("eta"));
  m.def("pd_channel", &pd_channel, py::arg("p"));
  m.def("unitary_channel", &unitary_channel, py::arg("u"));
  m.def("compose", &compose, py::arg("first"), py::arg("then"), "Signal passes through `first`, then `then`.");
  m.def("compose_sequence", [](const std::vector<QuantumChannel>& seq) { return compose_sequence(seq); },
        py::arg("signal_order"));
  m.def("power", &power, py::arg("channel"), py::arg("n"));
  m.def("superop_distance", &superop_distance);
  m.def("choi_state", [](const QuantumChannel& c) { return choi_state(c).matrix(); });

  m.def(
      "is_eb",
      [](const QuantumChannel& c, double tol) {
        const EbVerdict v = is_eb(c, tol);
        py::dict d;
        d["entanglement_breaking"] = v.entanglement_breaking;
        d["margin"] = v.margin;
        d["concurrence"] = v.concurrence;
        d["negativity"] = v.negativity;
        return d;
      },
      py::arg("channel"), py::arg("eb_tol") = kTol.eb);
  m.def(
      "eb_order",
      [](const QuantumChannel& c, int max_n) -> py::object {
        const EbOrder o = eb_order(c, max_n);
        return o.bounded() ? py::object(py::int_(*o.order)) : py::object(py::none());
      },
      py::arg("channel"), py::arg("max_n"), "Smallest EB power, or None when unbounded up to max_n.");

  m.def(
      "concurrence",
      [](const ComplexMatrix& rho) {
        const Concurrence c = concurrence(DensityMatrix(rho));
        return py::make_tuple(c.value, c.pre_clamp);
      },
      py::arg("rho"), "(value, pre_clamp)");
  m.def("negativity", [](const ComplexMatrix& rho) { return negativity(DensityMatrix(rho)); }, py::arg("rho"));
  m.def(
      "werner_state",
      [](double w, const ComplexVector& omega) { return werner_state(w, DensityMatrix::pure(omega)).matrix(); },
      py::arg("w"), py::arg("omega"));
  m.def("omega_plus", &omega_plus);
  m.def("singlet", &singlet);

  py::enum_<DephasingSign>(m, "DephasingSign")
      .value("Decaying", DephasingSign::Decaying)
      .value("Growing", DephasingSign::Growing);

  py::class_<Liouvillian>(m, "Liouvillian")
      .def(py::init<int, ComplexMatrix, std::string>(), py::arg("dim"), py::arg("generator"), py::arg("label"))
      .def_property_readonly("dim", &Liouvillian::dim)
      .def_property_readonly("generator", &Liouvillian::generator)
      .def_property_readonly("label", &Liouvillian::label);
  py::class_<SwitchedLine>(m, "SwitchedLine")
      .def(py::init<Liouvillian, Liouvillian, double, std::string>(), py::arg("gen_even"), py::arg("gen_odd"),
           py::arg("slice_len"), py::arg("label") = "")
      .def_property_readonly("slice_len", &SwitchedLine::slice_len);

  m.def("rotating_ad_liouvillian", &rotating_ad_liouvillian, py::arg("j"), py::arg("omega"), py::arg("eps"));
  m.def("rotating_pd_liouvillian", &rotating_pd_liouvillian, py::arg("j"), py::arg("omega"), py::arg("eps"),
        py::arg("sign") = DephasingSign::Decaying);
  m.def("average", &average);
  m.def("propagate", &propagate, py::arg("l"), py::arg("x"));
  m.def("switched_channel", &switched_channel, py::arg("line"), py::arg("x"));
  m.def(
      "eb_length", [](const Liouvillian& l, double x_hi) { return optional_length(eb_length(l, x_hi)); },
      py::arg("l"), py::arg("x_hi"));
  m.def(
      "eb_length", [](const SwitchedLine& l, double x_hi) { return optional_length(eb_length(l, x_hi)); },
      py::arg("line"), py::arg("x_hi"));
  m.def(
      "concurrence_profile",
      [](const Liouvillian& l, double x_max, int steps) { return profile_rows(concurrence_profile(l, x_max, steps)); },
      py::arg("l"), py::arg("x_max"), py::arg("steps"));
  m.def(
      "concurrence_profile",
      [](const SwitchedLine& l, double x_max, int steps) {
        return profile_rows(concurrence_profile(l, x_max, steps));
      },
      py::arg("line"), py::arg("x_max"), py::arg("steps"));
  m.def("trotter_gap", &trotter_gap, py::arg("line"), py::arg("x"));

  m.def("hwp", &hwp, py::arg("xi"));
  m.def("alpha_for_eta", &alpha_for_eta, py::arg("eta"));
  m.def(
      "dif_map",
      [](double alpha, const std::string& preset) { return dif_map(alpha, preset_elements(preset_from_string(preset))); },
      py::arg("alpha"), py::arg("preset") = "ideal");
  m.def(
      "run_point",
      [](const std::string& map, const std::string& preset, double theta, double phi, double w) {
        const OpticalPoint p =
            run_point(make_setup(map_kind_from_string(map), 0.3, 0.3, preset_from_string(preset), theta, phi, w));
        return py::make_tuple(p.concurrence, p.success_prob);
      },
      py::arg("map"), py::arg("preset") = "ideal", py::arg("theta") = std::numbers::pi / 4,
      py::arg("phi") = std::numbers::pi / 4, py::arg("W") = 0.96, "(concurrence, success_prob)");
  m.def(
      "sweep",
      [](const std::string& map, const std::string& preset, const std::string& vary, double lo, double hi, int steps,
         double w) {
        const OpticalSetup s = make_setup(map_kind_from_string(map), 0.3, 0.3, preset_from_string(preset),
                                          std::numbers::pi / 4, std::numbers::pi / 4, w);
        if (vary != "theta" && vary != "phi") throw Error(ErrorCode::ParseError, "vary must be theta or phi");
        const auto axis = vary == "phi" ? SweepAxis::Phi : SweepAxis::Theta;
        py::list out;
        for (const auto& r : sweep(s, axis, lo, hi, steps)) {
          out.append(py::make_tuple(r.angle, r.concurrence, r.success_prob));
        }
        return out;
      },
      py::arg("map"), py::arg("preset") = "ideal", py::arg("vary") = "theta", py::arg("lo") = -std::numbers::pi / 2,
      py::arg("hi") = std::numbers::pi / 2, py::arg("steps") = 181, py::arg("W") = 0.96,
      "[(angle, concurrence, success_prob), ...]");
}
