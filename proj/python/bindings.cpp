#include "cartan/builders.hpp"
#include "cartan/contraction.hpp"
#include "cartan/errors.hpp"
#include "cartan/formulas.hpp"
#include "cartan/intlinalg.hpp"
#include "cartan/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cartan;

namespace {

py::object to_py(const Integer& n) {
  const std::string text = to_decimal(n);
  return py::reinterpret_steal<py::object>(PyLong_FromString(text.c_str(), nullptr, 10));
}

Integer from_py(const py::handle& h) { return parse_integer(py::str(h).cast<std::string>()); }

py::list to_py(const std::vector<Integer>& v) {
  py::list out;
  for (const auto& n : v) out.append(to_py(n));
  return out;
}

py::list to_py(const IntMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
    rows.append(row);
  }
  return rows;
}

IntMatrix matrix_from_py(const py::sequence& rows) {
  std::vector<std::vector<Integer>> out;
  for (const auto& r : rows) {
    std::vector<Integer> row;
    for (const auto& x : r.cast<py::sequence>()) row.push_back(from_py(x));
    out.push_back(std::move(row));
  }
  for (const auto& r : out)
    if (r.size() != out.front().size()) throw py::value_error("ragged matrix");
  return IntMatrix::from_rows(out);
}

CurveFamily family_from(const std::string& name, std::optional<std::int64_t> s_p) {
  static const std::map<std::string, CartanType> selectors = {{"ns", CartanType::NonSplit},
                                                              {"ns+", CartanType::NonSplitPlus},
                                                              {"s", CartanType::Split},
                                                              {"s+", CartanType::SplitPlus}};
  if (auto it = selectors.find(name); it != selectors.end())
    return s_p ? CurveFamily::fine(it->second, *s_p) : CurveFamily::coarse(it->second);
  if (auto f = CurveFamily::from_name(name)) return *f;
  throw py::value_error("unknown family '" + name + "'");
}

py::object group_to_py(const AbelianGroup& g) {
  py::dict d;
  d["invariant_factors"] = to_py(g.invariant_factors());
  d["free_rank"] = g.free_rank();
  d["notation"] = g.to_string();
  return std::move(d);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Special fibers of Cartan modular curves, their minimal models and component groups";

  py::register_exception<Error>(m, "CartanError", PyExc_ValueError);

  py::class_<SpecialFiber>(m, "Fiber")
      .def_property_readonly("family", [](const SpecialFiber& f) { return f.family().name(); })
      .def_property_readonly("prime", &SpecialFiber::prime)
      .def_property_readonly("labels",
                             [](const SpecialFiber& f) {
                               std::vector<std::string> out;
                               for (const auto& c : f.components()) out.push_back(c.label);
                               return out;
                             })
      .def_property_readonly("multiplicities",
                             [](const SpecialFiber& f) {
                               py::dict d;
                               for (const auto& c : f.components()) d[py::str(c.label)] = to_py(c.multiplicity);
                               return d;
                             })
      .def("__len__", &SpecialFiber::size)
      .def("intersection",
           [](const SpecialFiber& f, const std::string& a, const std::string& b) {
             if (a == b) return to_py(f.self_intersection(f.at_label(a).id));
             return to_py(f.intersection(f.at_label(a).id, f.at_label(b).id));
           })
      .def("intersection_matrix",
           [](const SpecialFiber& f) {
             const IntersectionMatrix im = intersection_matrix(f);
             std::vector<std::string> basis;
             for (ComponentId id : im.basis) basis.push_back(f.at(id).label);
             return py::make_tuple(basis, to_py(im.entries));
           })
      .def("is_ncd", &is_ncd)
      .def("to_json", [](const SpecialFiber& f) { return io::dump(io::fiber_to_json(f)); })
      .def("to_dot", [](const SpecialFiber& f) { return io::fiber_to_dot(f); })
      .def_static("from_json", [](const std::string& text) { return io::fiber_from_json(io::Json::parse(text)); })
      .def("__eq__", [](const SpecialFiber& a, const SpecialFiber& b) { return a == b; })
      .def("__repr__", [](const SpecialFiber& f) {
        return "<Fiber " + f.family().name() + " p=" + std::to_string(f.prime()) + ", " +
               std::to_string(f.size()) + " components>";
      });

  m.def("build_fiber", [](const std::string& family, std::int64_t p, std::optional<std::int64_t> s_p) {
    return build_fiber(family_from(family, s_p), p);
  }, py::arg("family"), py::arg("p"), py::arg("s_p") = py::none());

  m.def("contract", [](const SpecialFiber& f, const std::string& target) {
    if (target != "minimal" && target != "ncd") throw py::value_error("target must be 'minimal' or 'ncd'");
    const ContractionTrace t = target == "minimal" ? contract_to_minimal(f) : contract_to_minimal_ncd(f);
    return py::make_tuple(t.final_fiber, t.contracted_labels());
  }, py::arg("fiber"), py::arg("target") = "minimal");

  m.def("component_group", [](const SpecialFiber& f) { return group_to_py(component_group(f)); });

  m.def("expected_component_group", [](const std::string& family, std::int64_t p) -> py::object {
    const auto g = expected_component_group(family_from(family, std::nullopt), p);
    return g ? group_to_py(*g) : py::none();
  });

  m.def("smith_normal_form", [](const py::sequence& rows, bool transforms) {
    const SmithDecomposition snf = smith_normal_form(matrix_from_py(rows), {.compute_transforms = transforms});
    py::dict d;
    d["divisors"] = to_py(snf.divisors());
    d["rank"] = snf.rank();
    if (snf.left) d["left"] = to_py(*snf.left);
    if (snf.right) d["right"] = to_py(*snf.right);
    return d;
  }, py::arg("matrix"), py::arg("transforms") = false);

  m.def("verify", [](const std::string& family, std::int64_t p) {
    const VerificationReport r = verify(family_from(family, std::nullopt), p);
    py::list checks;
    for (const auto& c : r.checks) {
      py::dict d;
      d["check"] = c.check;
      d["computed"] = c.computed;
      d["expected"] = c.expected;
      d["pass"] = c.pass;
      checks.append(d);
    }
    return py::make_tuple(r.passed(), checks);
  });
}
