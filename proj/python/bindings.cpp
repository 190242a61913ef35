#include "cosserat/dynamics.hpp"
#include "cosserat/kinematics.hpp"
#include "cosserat/reduced.hpp"
#include "cosserat/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cosserat;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict state_dict(const ReducedState& s) {
  py::dict d;
  std::vector<double> z(static_cast<std::size_t>(s.grid.n));
  for (int i = 0; i < s.grid.n; ++i) z[static_cast<std::size_t>(i)] = s.grid.z(i);
  d["t"] = s.t;
  d["z"] = to_array(z);
  d["phi"] = to_array(s.phi);
  d["psi"] = to_array(s.psi);
  d["phi_t"] = to_array(s.phi_t);
  d["psi_t"] = to_array(s.psi_t);
  return d;
}

py::dict report_dict(const verify::CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["error"] = r.error;
  d["max_abs_error"] = r.max_abs_error;
  d["max_rel_error"] = r.max_rel_error;
  d["tolerance"] = r.tolerance;
  d["passed"] = r.passed;
  d["metadata"] = r.metadata;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Micropolar kinematics, energies, longitudinal solitons and reduced dynamics";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<reduced::NotHyperbolicError>(m, "NotHyperbolicError", PyExc_ValueError);
  py::register_exception<reduced::NoSolitonError>(m, "NoSolitonError", PyExc_ValueError);
  py::register_exception<dynamics::CflError>(m, "CflError", PyExc_ValueError);
  py::register_exception<dynamics::BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);

  py::class_<MaterialParams>(m, "MaterialParams")
      .def(py::init<>())
      .def(py::init([](py::kwargs kw) {
        MaterialParams p;
        for (auto item : kw) p.at(py::cast<std::string>(item.first)) = py::cast<double>(item.second);
        return p;
      }))
      .def_readwrite("mu", &MaterialParams::mu)
      .def_readwrite("lambda_", &MaterialParams::lambda)
      .def_readwrite("mu_c", &MaterialParams::mu_c)
      .def_readwrite("kappa1", &MaterialParams::kappa1)
      .def_readwrite("kappa2", &MaterialParams::kappa2)
      .def_readwrite("kappa3", &MaterialParams::kappa3)
      .def_readwrite("chi1", &MaterialParams::chi1)
      .def_readwrite("chi3", &MaterialParams::chi3)
      .def_readwrite("rho", &MaterialParams::rho)
      .def_readwrite("rho_rot", &MaterialParams::rho_rot)
      .def("validate", &MaterialParams::validate)
      .def("__getitem__", [](const MaterialParams& p, const std::string& k) { return p.at(k); })
      .def("__setitem__",
           [](MaterialParams& p, const std::string& k, double v) { p.at(k) = v; })
      .def("__eq__", [](const MaterialParams& a, const MaterialParams& b) { return a == b; });

  // kinematics
  m.def("axial_to_skew", &kinematics::axial_to_skew);
  m.def("skew_to_axial", &kinematics::skew_to_axial, py::arg("a"), py::arg("tolerance") = 1e-12);
  m.def("rotation_exp", &kinematics::rotation_exp);
  m.def("rotation_variation", [](const Vec3& a) {
    const Rank3 d = kinematics::rotation_variation(a);
    py::array_t<double> out({3, 3, 3});
    auto r = out.mutable_unchecked<3>();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r(i, j, k) = d(i, j, k);
    return out;
  }, "out[i, j, k] = dR_ij / da_k");
  m.def("polar_decompose", [](const Mat3& f) {
    const kinematics::PolarParts pp = kinematics::polar_decompose(f);
    return py::make_tuple(pp.rotation, pp.stretch);
  });

  // reduced system
  py::class_<reduced::CouplingMatrix>(m, "CouplingMatrix")
      .def_readonly("m11", &reduced::CouplingMatrix::m11)
      .def_readonly("m12", &reduced::CouplingMatrix::m12)
      .def_readonly("m21", &reduced::CouplingMatrix::m21)
      .def_readonly("m22", &reduced::CouplingMatrix::m22)
      .def("trace", &reduced::CouplingMatrix::trace)
      .def("det", &reduced::CouplingMatrix::det);
  m.def("coupling_matrix", &reduced::coupling_matrix);
  m.def("eigenvalues", [](const MaterialParams& p) {
    const auto ev = reduced::hyperbolicity_check(reduced::coupling_matrix(p));
    return py::make_tuple(ev.slow, ev.fast);
  });
  m.def("wave_number", [](double v, const MaterialParams& p, const std::string& branch) {
    return reduced::wave_number(v, p, reduced::parse_branch(branch));
  }, py::arg("v"), py::arg("params"), py::arg("branch") = "kink");
  m.def("solve_velocity", &reduced::solve_velocity);
  m.def("dispersion_residual", &reduced::dispersion_residual);
  m.def("admissible_speed_windows", [](const MaterialParams& p) {
    std::vector<std::pair<double, double>> out;
    for (const auto& w : reduced::admissible_speed_windows(p)) out.emplace_back(w.lo, w.hi);
    return out;
  });

  py::class_<reduced::SolitonSolution>(m, "SolitonSolution")
      .def_readonly("k", &reduced::SolitonSolution::k)
      .def_readonly("v", &reduced::SolitonSolution::v)
      .def_readonly("delta", &reduced::SolitonSolution::delta)
      .def_readonly("amplitude_psi", &reduced::SolitonSolution::amplitude_psi)
      .def("center", &reduced::SolitonSolution::center);
  m.def("make_soliton", [](double v, const MaterialParams& p, const std::string& branch,
                           double delta) {
    return reduced::make_soliton(v, p, reduced::parse_branch(branch), delta);
  }, py::arg("v"), py::arg("params"), py::arg("branch") = "kink", py::arg("delta") = 0.0);
  m.def("soliton_fields", [](const reduced::SolitonSolution& s, py::array_t<double> z, double t) {
    auto zr = z.unchecked<1>();
    py::array_t<double> phi(zr.shape(0)), psi(zr.shape(0));
    auto pr = phi.mutable_unchecked<1>();
    auto sr = psi.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < zr.shape(0); ++i) {
      pr(i) = reduced::soliton_phi(zr(i), t, s);
      sr(i) = reduced::soliton_psi(zr(i), t, s);
    }
    return py::make_tuple(phi, psi);
  }, py::arg("solution"), py::arg("z"), py::arg("t") = 0.0);

  // dynamics
  m.def("cfl_limit", [](const MaterialParams& p, double dz) { return dynamics::cfl_limit(p, dz); });
  m.def("simulate_soliton",
        [](const MaterialParams& p, double v, const std::string& branch, int n, double z_min,
           double z_max, const std::string& bc, double t_end, int stride) {
          if (bc != "periodic" && bc != "dirichlet")
            throw DomainError("bc must be 'dirichlet' or 'periodic'");
          dynamics::SimConfig c;
          c.material = p;
          c.grid = Grid1{n, z_min, z_max,
                         bc == "periodic" ? BoundaryMode::periodic : BoundaryMode::dirichlet};
          c.t_end = t_end;
          c.output_stride = stride;
          c.initial = dynamics::SolitonSpec{v, 0.0, reduced::parse_branch(branch)};
          dynamics::Trajectory tr;
          {
            py::gil_scoped_release release;
            tr = dynamics::integrate(c);
          }
          py::list snaps;
          for (const auto& s : tr.snapshots) snaps.append(state_dict(s));
          std::vector<double> t, e, l2p, l2s;
          for (const auto& d : tr.diagnostics) {
            t.push_back(d.t);
            e.push_back(d.energy);
            l2p.push_back(d.l2_phi);
            l2s.push_back(d.l2_psi);
          }
          py::dict out;
          out["snapshots"] = snaps;
          out["t"] = to_array(t);
          out["energy"] = to_array(e);
          out["l2_phi"] = to_array(l2p);
          out["l2_psi"] = to_array(l2s);
          out["dt"] = tr.dt;
          out["steps"] = tr.steps;
          out["center"] = dynamics::soliton_center(tr.snapshots.back());
          out["analytic_center"] =
              dynamics::analytic_center(tr.snapshots.back(), *tr.reference);
          return out;
        },
        py::arg("params"), py::arg("v") = 0.5, py::arg("branch") = "kink", py::arg("n") = 1024,
        py::arg("z_min") = -20.0, py::arg("z_max") = 20.0, py::arg("bc") = "dirichlet",
        py::arg("t_end") = 10.0, py::arg("stride") = 100);

  // verification
  m.def("run_checks", [](std::uint64_t seed) {
    py::list out;
    for (const auto& r : verify::run_all(seed)) out.append(report_dict(r));
    return out;
  }, py::arg("seed") = 1);
}
