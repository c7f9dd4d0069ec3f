#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "recurshift/claims.hpp"
#include "recurshift/cli.hpp"
#include "recurshift/config.hpp"
#include "recurshift/errors.hpp"
#include "recurshift/language.hpp"
#include "recurshift/metric.hpp"
#include "recurshift/omega.hpp"
#include "recurshift/point.hpp"
#include "recurshift/recurrence.hpp"
#include "recurshift/serialize.hpp"

namespace py = pybind11;

// Index <-> Python int, through the decimal form.
namespace pybind11::detail {
template <>
struct type_caster<__int128> {
  PYBIND11_TYPE_CASTER(__int128, const_name("int"));

  bool load(handle src, bool) {
    if (!src || !PyLong_Check(src.ptr())) return false;
    try {
      value = recurshift::parse_index(py::str(src).cast<std::string>());
    } catch (const recurshift::Error&) {
      return false;
    }
    return true;
  }

  static handle cast(__int128 v, return_value_policy, handle) {
    return PyLong_FromString(recurshift::to_string(v).c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace rs = recurshift;

namespace {

std::string dump(const rs::Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_recurshift, m) {
  m.doc() = "Native core of recurshift";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<rs::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<rs::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<rs::CapExceeded>(m, "CapExceeded", PyExc_MemoryError);

  m.def("materialize_cap", &rs::materialize_cap);
  m.def("omega_length", &rs::omega_length, py::arg("n"));
  m.def("omega_word", [](int n) { return rs::omega_word(n).to_string(); }, py::arg("n"));
  m.def("xi_at", &rs::xi_at, py::arg("i"));
  m.def("xi_segment", [](rs::Index a, rs::Index b) { return rs::xi_segment(a, b).to_string(); }, py::arg("a"),
        py::arg("b"));
  m.def(
      "point_at", [](const std::string& p, rs::Index i) { return rs::point_at(rs::PointDescriptor::parse(p), i); },
      py::arg("point"), py::arg("i"));
  m.def(
      "reflect", [](const std::string& p) { return rs::reflect(rs::PointDescriptor::parse(p)).to_string(); },
      py::arg("point"));

  m.def(
      "factors",
      [](std::size_t length) {
        const auto [set, h] = rs::factors_stabilized(length);
        std::vector<std::string> out;
        for (const auto& w : set.words) out.push_back(w.to_string());
        return py::make_tuple(out, h);
      },
      py::arg("length"));
  m.def("factor_complexity", [](std::size_t length) { return rs::factor_complexity(length); }, py::arg("length"));
  m.def(
      "occurrences_json",
      [](const std::string& w, rs::Index a, rs::Index b) {
        return dump(rs::to_json(rs::occurrences(rs::Word::from_string(w), {a, b})));
      },
      py::arg("word"), py::arg("first"), py::arg("last"));
  m.def("find_m", &rs::find_m, py::arg("k"), py::arg("horizon"));
  m.def(
      "classify_json",
      [](const std::string& p, int window, rs::Index horizon) {
        py::gil_scoped_release release;
        return dump(rs::to_json(rs::classify_point(rs::PointDescriptor::parse(p), window, horizon)));
      },
      py::arg("point"), py::arg("window"), py::arg("horizon"));
  m.def(
      "distance",
      [](const std::string& x, const std::string& y, rs::Index resolution) {
        const auto d = rs::distance(rs::PerturbedPoint::parse(x), rs::PerturbedPoint::parse(y), resolution);
        return py::make_tuple(d.value.to_string(), d.certified);
      },
      py::arg("x"), py::arg("y"), py::arg("resolution") = 64);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = rs::cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
