#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isoflow/errors.hpp"
#include "isoflow/flow.hpp"
#include "isoflow/foliation.hpp"
#include "isoflow/json_io.hpp"
#include "isoflow/verify.hpp"

namespace py = pybind11;
using namespace isoflow;

namespace {

using ModelPtr = std::shared_ptr<SolvableModel>;

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

CoefficientTable parse_table(const std::string& name) {
  if (name == "corrected") return CoefficientTable::corrected;
  if (name == "reference") return CoefficientTable::reference;
  if (name == "reference_unit") return CoefficientTable::reference_unit;
  throw InputError("unknown coefficient table '" + name + "'");
}

NormalSelector parse_normal(const FoliationConfig& cfg, const std::string& label) {
  for (const NormalSelector& s : normal_generators(cfg)) {
    if (s.label() == label) return s;
  }
  throw InputError("no normal generator '" + label + "'");
}

py::dict block_operator(const BlockOperator& op) {
  py::list blocks;
  for (const Block& b : op.blocks) {
    py::dict d;
    d["label"] = b.label;
    d["offset"] = b.offset;
    d["size"] = b.size;
    if (b.pair_norm != 0) d["pair_norm"] = b.pair_norm;
    blocks.append(d);
  }
  py::dict out;
  out["matrix"] = op.matrix;
  out["basis"] = op.basis;
  out["blocks"] = blocks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_isoflow, m) {
  m.doc() = "Isoparametric foliations of solvable models: closed forms, oracle checks and flows";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<SolvableModel, ModelPtr>(m, "Model")
      .def_property_readonly("id", [](const SolvableModel& s) { return s.lie().id(); })
      .def_property_readonly("dimension", &SolvableModel::dimension)
      .def_property_readonly("rank", &SolvableModel::rank)
      .def_property_readonly("roots", [](const SolvableModel& s) { return s.datum().roots; })
      .def_property_readonly("multiplicities", [](const SolvableModel& s) { return s.datum().mult; })
      .def_property_readonly("root_norms",
                             [](const SolvableModel& s) {
                               std::vector<double> out;
                               for (int r = 0; r < s.datum().size(); ++r) out.push_back(s.datum().norm(r));
                               return out;
                             })
      .def("bracket", &SolvableModel::bracket)
      .def("matrix", &SolvableModel::matrix)
      .def("to_dict", [](const SolvableModel& s) { return to_python(to_json(s)); });

  m.def("load_model", [](const std::string& id) { return std::make_shared<SolvableModel>(load_model(id)); },
        py::arg("id"));

  py::class_<FoliationConfig>(m, "Config")
      .def_property_readonly("k", &FoliationConfig::k)
      .def_property_readonly("m0", &FoliationConfig::m0)
      .def_property_readonly("offsets", [](const FoliationConfig& c) { return c.offsets; })
      .def_property_readonly("has_doubled_root", &FoliationConfig::has_doubled_root)
      .def_property_readonly("normals",
                             [](const FoliationConfig& c) {
                               std::vector<std::string> out;
                               for (const auto& s : normal_generators(c)) out.push_back(s.label());
                               return out;
                             })
      .def("section_point", &FoliationConfig::section_point)
      .def("with_offsets", &FoliationConfig::with_offsets, py::arg("offsets"))
      .def("to_dict", [](const FoliationConfig& c) { return to_python(to_json(c)); });

  m.def(
      "make_config",
      [](const std::string& model, int k, int b_dim, std::vector<double> offsets, std::vector<int> roots,
         std::vector<int> xi_index) {
        ConfigOptions o;
        o.k = k;
        o.b_dim = b_dim;
        o.offsets = std::move(offsets);
        o.chosen = std::move(roots);
        o.xi_index = std::move(xi_index);
        return make_config(std::make_shared<const SolvableModel>(load_model(model)), o);
      },
      py::arg("model") = "su21", py::arg("k") = 1, py::arg("b_dim") = 0, py::arg("offsets") = std::vector<double>{},
      py::arg("roots") = std::vector<int>{}, py::arg("xi_index") = std::vector<int>{});
  m.def("config_from_json", [](const std::string& text) { return config_from_json(parse_json(text)); },
        py::arg("text"));

  m.def("block_structure", [](const FoliationConfig& c) {
    py::list out;
    for (const Block& b : block_structure(c)) out.append(py::make_tuple(b.label, b.size));
    return out;
  });
  m.def(
      "shape_operator",
      [](const FoliationConfig& c, const std::string& normal, const std::string& table) {
        return block_operator(shape_operator(c, parse_normal(c, normal), parse_table(table)));
      },
      py::arg("config"), py::arg("normal"), py::arg("table") = "corrected");
  m.def(
      "normal_jacobi",
      [](const FoliationConfig& c, const std::string& normal, const std::string& table) {
        return block_operator(normal_jacobi(c, parse_normal(c, normal), parse_table(table)));
      },
      py::arg("config"), py::arg("normal"), py::arg("table") = "corrected");
  m.def(
      "commutator",
      [](const FoliationConfig& c, const std::string& normal, const std::string& table) {
        return block_operator(commutator_closed_form(c, parse_normal(c, normal), parse_table(table)));
      },
      py::arg("config"), py::arg("normal"), py::arg("table") = "corrected");
  m.def(
      "oracle_deviation",
      [](const FoliationConfig& c, const std::string& normal, const std::string& table) {
        const NormalSelector s = parse_normal(c, normal);
        const CoefficientTable t = parse_table(table);
        py::dict d;
        d["shape_operator"] = compare_shape_operator(c, s, t).max_deviation;
        d["normal_jacobi"] = compare_normal_jacobi(c, s, t).max_deviation;
        d["commutator"] = compare_commutator(c, s, t).max_deviation;
        return d;
      },
      py::arg("config"), py::arg("normal"), py::arg("table") = "corrected");
  m.def("adaptedness", [](const FoliationConfig& c) { return to_python(to_json(adaptedness(c))); });
  m.def("coefficients", [](const FoliationConfig& c) { return to_python(to_json(c.coefficients())); });
  m.def("classify", [](const FoliationConfig& c) { return to_python(to_json(classify(c))); });

  m.def(
      "integrate",
      [](const FoliationConfig& c, double horizon, double step, int stride, std::optional<Vec> u0) {
        const MeanCurvatureCoefficients coeffs = c.coefficients();
        const FlowTrajectory traj = integrate(coeffs, u0 ? *u0 : c.section_point(), horizon, {step, stride});
        Mat states(static_cast<Eigen::Index>(traj.states.size()), coeffs.dimension());
        for (std::size_t i = 0; i < traj.states.size(); ++i) states.row(static_cast<Eigen::Index>(i)) = traj.states[i];
        py::dict d;
        d["t"] = traj.times;
        d["u"] = states;
        d["speed"] = traj.speed;
        d["dist_to_ref"] = traj.dist_to_ref;
        d["residual"] = traj.residual;
        return d;
      },
      py::arg("config"), py::arg("horizon") = 10.0, py::arg("step") = 1e-3, py::arg("stride") = 1,
      py::arg("u0") = std::nullopt);
  m.def(
      "closed_form",
      [](const FoliationConfig& c, const Vec& u0, double t) { return closed_form(c.coefficients(), u0, t); },
      py::arg("config"), py::arg("u0"), py::arg("t"));
  m.def("find_minimal_leaf", [](const FoliationConfig& c) { return find_minimal_leaf(c.coefficients()); });

  m.def(
      "verify",
      [](const FoliationConfig& c) { return to_python(to_json(verify_config(c))); }, py::arg("config"));
}
