// Python bindings. Meshes cross the boundary as numpy arrays shaped
// (n2, n1, ...) so that arr[j, i] is grid sample (i, j).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cli.hpp"
#include "ias/gallery.hpp"
#include "ias/io.hpp"
#include "ias/ribaucour.hpp"
#include "ias/verify.hpp"

namespace py = pybind11;
using namespace ias;

namespace {

template <typename Fn>
py::array_t<double> grid_array(const SurfaceMesh& m, int width, Fn&& fill) {
  std::vector<py::ssize_t> shape = {m.n2(), m.n1()};
  if (width > 1) shape.push_back(width);
  py::array_t<double> out(shape);
  double* p = out.mutable_data();
  for (const auto& s : m.samples) {
    fill(s, p);
    p += width;
  }
  return out;
}

py::array_t<double> vec_field(const SurfaceMesh& m, Vec3 Sample::*field) {
  return grid_array(m, 3, [field](const Sample& s, double* p) {
    for (int k = 0; k < 3; ++k) p[k] = (s.*field)[k];
  });
}

py::array_t<double> scalar_field(const SurfaceMesh& m, double Sample::*field) {
  return grid_array(m, 1, [field](const Sample& s, double* p) { *p = s.*field; });
}

py::dict check_dict(const verify::Check& c) {
  py::dict d;
  d["name"] = c.name;
  d["max"] = c.max;
  d["mean"] = c.mean;
  d["n"] = c.n;
  d["tol"] = c.tol;
  d["pass"] = c.pass;
  d["skipped"] = c.skipped;
  d["worst"] = c.worst;
  return d;
}

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::rectangle: return "rectangle";
    case DomainKind::annulus: return "annulus";
    default: return "asymptotic";
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Improper affine maps: construction, transforms and verification";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());

  py::class_<SurfaceMesh>(m, "Mesh")
      .def_property_readonly("eps", [](const SurfaceMesh& s) { return s.eps; })
      .def_property_readonly("shape", [](const SurfaceMesh& s) { return py::make_tuple(s.n2(), s.n1()); })
      .def_property_readonly("kind", [](const SurfaceMesh& s) { return kind_name(s.domain.kind); })
      .def_property_readonly("vertical_period", [](const SurfaceMesh& s) { return s.vertical_period; })
      .def_property_readonly("positions", [](const SurfaceMesh& s) { return vec_field(s, &Sample::psi); })
      .def_property_readonly("conormals", [](const SurfaceMesh& s) { return vec_field(s, &Sample::N); })
      .def_property_readonly("h_degeneracy", [](const SurfaceMesh& s) { return scalar_field(s, &Sample::h_degeneracy); })
      .def_property_readonly("params", [](const SurfaceMesh& s) {
        return grid_array(s, 2, [](const Sample& x, double* p) {
          p[0] = x.p1;
          p[1] = x.p2;
        });
      })
      .def_property_readonly("singular", [](const SurfaceMesh& s) {
        py::array_t<bool> out({s.n2(), s.n1()});
        bool* p = out.mutable_data();
        for (const auto& x : s.samples) *p++ = x.singular;
        return out;
      })
      .def("to_csv", &io::to_csv)
      .def("to_ply", [](const SurfaceMesh& s) { return py::bytes(io::to_ply(s)); })
      .def("to_obj", [](const SurfaceMesh& s) { return io::to_obj(s, weier::extract_singular_curves(s)); })
      .def(
          "export",
          [](const SurfaceMesh& s, const std::filesystem::path& path, std::optional<std::string> format) {
            return io::export_mesh(s, format ? io::parse_format(*format) : io::format_of(path), path);
          },
          py::arg("path"), py::arg("format") = py::none())
      .def_static("from_csv", &io::from_csv, py::arg("text"))
      .def_static("load", &io::load_mesh, py::arg("path"));

  m.def("examples", [] {
    std::vector<std::string> names;
    for (const auto& e : gallery::examples()) names.push_back(e.name);
    return names;
  });

  m.def(
      "gallery",
      [](const std::string& name, const gallery::Params& params, int n1, int n2) {
        py::gil_scoped_release release;
        return weier::eval_surface(gallery::get_example(name, params, n1, n2));
      },
      py::arg("name"), py::arg("params") = gallery::Params{}, py::arg("n1") = 64, py::arg("n2") = 64,
      "Mesh of a standard example; parameter values are text, e.g. {'r': '2', 'a': '3+1j'}.");

  m.def(
      "detect_period",
      [](const std::string& name, const gallery::Params& params) {
        return weier::detect_period(gallery::get_example(name, params));
      },
      py::arg("name"), py::arg("params") = gallery::Params{});

  m.def(
      "singular_curves",
      [](const SurfaceMesh& s) {
        py::list out;
        for (const auto& c : weier::extract_singular_curves(s)) {
          py::array_t<double> pts({static_cast<py::ssize_t>(c.points.size()), py::ssize_t{2}});
          double* p = pts.mutable_data();
          for (const auto& q : c.points) {
            *p++ = q.p1;
            *p++ = q.p2;
          }
          out.append(py::make_tuple(pts, c.closed));
        }
        return out;
      },
      py::arg("mesh"), "List of (points in parameter space, closed) pairs.");

  m.def(
      "verify",
      [](const SurfaceMesh& s, std::optional<double> hessian_tol, std::optional<double> structure_tol) {
        verify::VerificationReport rep;
        {
          py::gil_scoped_release release;
          rep = verify::verify_mesh(s, hessian_tol, structure_tol);
        }
        py::list checks;
        for (const auto& c : rep.checks) checks.append(check_dict(c));
        return py::make_tuple(rep.passed(), checks);
      },
      py::arg("mesh"), py::arg("hessian_tol") = py::none(), py::arg("structure_tol") = py::none(),
      "(passed, list of check dicts).");

  m.def(
      "transform",
      [](double a, int n, int mm, const std::string& k, int n1, int n2) {
        using namespace ribaucour;
        const auto p = HelicoidalClosedForm::from_nm(a, n, mm, parse_ceps(k, 1));
        const auto pair = helicoidal_transform(p, default_domain(p, n, mm, n1, n2));
        auto base = weier::eval_surface(pair.base);
        auto tr = weier::eval_surface(pair.transformed);
        const auto d = analyze_transform(base, tr, p, std::pair{n, mm});
        py::dict diag;
        diag["zeros"] = d.punctures.zeros.size();
        diag["poles"] = d.punctures.poles.size();
        diag["expected_ends"] = d.expected_ends;
        diag["zeros_counted"] = d.zeros_counted;
        diag["poles_counted"] = d.poles_counted;
        diag["nodal_hausdorff"] = d.nodal_hausdorff;
        diag["nodal_tolerance"] = d.nodal_tolerance;
        diag["translation"] = d.translation;
        diag["translation_std"] = d.translation_std;
        diag["product_identity"] = d.product.max_residual;
        diag["g_imag"] = d.g.max_imag;
        diag["g_component_gap"] = d.g.max_component_gap;
        return py::make_tuple(std::move(base), std::move(tr), diag);
      },
      py::arg("a"), py::arg("n"), py::arg("m"), py::arg("k") = "1", py::arg("n1") = 128, py::arg("n2") = 128,
      "Helicoidal data with b = n/m and its transform: (base, transformed, diagnostics).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv = {"ias"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in process: (exit code, stdout, stderr).");
}
