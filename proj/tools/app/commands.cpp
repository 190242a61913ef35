#include "app.hpp"

#include "cosserat/reduced.hpp"
#include "cosserat/verify.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

namespace cosserat::app {

namespace {

void print_windows(std::ostream& os, const std::vector<reduced::SpeedWindow>& windows) {
  os << "# admissible_speed_windows=";
  if (windows.empty()) os << "none";
  for (std::size_t i = 0; i < windows.size(); ++i)
    os << (i ? ";" : "") << '[' << format_double(windows[i].lo) << ','
       << format_double(windows[i].hi) << ']';
  os << '\n';
}

void report_no_soliton(std::ostream& err, const reduced::NoSolitonError& e) {
  err << "error: " << e.what() << '\n';
  print_windows(err, e.windows());
}

}  // namespace

int cmd_soliton(const Settings& s, bool derivatives, std::ostream& out, std::ostream& err) {
  const MaterialParams p = s.material();
  p.validate();
  const double v = s.number("soliton.v");
  const reduced::Branch branch = reduced::parse_branch(s.str("soliton.branch"));
  reduced::SolitonSolution sol;
  try {
    sol = reduced::make_soliton(v, p, branch, s.number("soliton.delta"));
  } catch (const reduced::NoSolitonError& e) {
    report_no_soliton(err, e);
    return 2;
  }
  const double k_plus = reduced::wave_number(v, p, reduced::Branch::kink);

  out << "# v=" << format_double(v) << '\n';
  out << "# branch=" << reduced::to_string(branch) << '\n';
  out << "# k=" << format_double(sol.k) << '\n';
  out << "# k_plus=" << format_double(k_plus) << '\n';
  out << "# k_minus=" << format_double(-k_plus) << '\n';
  out << "# amplitude_psi=" << format_double(sol.amplitude_psi) << '\n';
  out << "# amplitude_ratio_psi_phi=" << format_double(sol.amplitude_psi / 4.0) << '\n';
  print_windows(out, reduced::admissible_speed_windows(p));

  const long n = s.integer("grid.n");
  if (n < 2) throw ConfigError("grid.n must be >= 2");
  const double z_min = s.number("grid.z_min");
  const double z_max = s.number("grid.z_max");
  const double dz = (z_max - z_min) / static_cast<double>(n - 1);
  out << "t,z,phi,psi";
  if (derivatives) out << ",phi_z,phi_t,psi_z,psi_t";
  out << '\n';
  for (double t : s.number_list("times")) {
    for (long i = 0; i < n; ++i) {
      const double z = z_min + static_cast<double>(i) * dz;
      const reduced::SolitonJet j = reduced::soliton_jet(z, t, sol);
      out << format_double(t) << ',' << format_double(z) << ',' << format_double(j.phi) << ','
          << format_double(j.psi);
      if (derivatives)
        out << ',' << format_double(j.phi_z) << ',' << format_double(j.phi_t) << ','
            << format_double(j.psi_z) << ',' << format_double(j.psi_t);
      out << '\n';
    }
  }
  return 0;
}

int cmd_simulate(const Settings& s, const SimulateOptions& opt, std::ostream& out,
                 std::ostream& err) {
  dynamics::SimConfig config;
  try {
    config = sim_config(s);
  } catch (const reduced::NoSolitonError& e) {
    report_no_soliton(err, e);
    return 2;
  }
  const std::filesystem::path dir = output_dir(s);
  std::filesystem::create_directories(dir);

  std::vector<std::filesystem::path> inputs = opt.inputs;
  if (s.str("init") == "file") inputs.emplace_back(s.str("init.file"));
  {
    std::ofstream mf(dir / "manifest.txt");
    write_manifest(mf, make_manifest(s, "simulate", inputs));
  }

  std::ofstream snap(dir / "snapshots.csv");
  std::ofstream diag(dir / "diagnostics.csv");
  if (!snap || !diag) throw ConfigError("cannot write into " + dir.string());
  diag << kDiagnosticsHeader << '\n';
  bool first = true;
  auto observer = [&](const ReducedState& st, const dynamics::DiagnosticsRow& row) {
    write_snapshot_block(snap, st, first);
    first = false;
    write_diagnostics_row(diag, row);
  };
  const bool plane_wave = std::holds_alternative<dynamics::PlaneWaveSpec>(config.initial);
  const dynamics::Trajectory traj = dynamics::integrate(config, observer, plane_wave);

  const auto& d = traj.diagnostics;
  out << "output_dir=" << dir.string() << '\n';
  out << "snapshots=" << d.size() << '\n';
  out << "steps=" << traj.steps << '\n';
  out << "dt=" << format_double(traj.dt) << '\n';
  out << "t_final=" << format_double(d.back().t) << '\n';
  const double e0 = d.front().energy;
  double drift = 0.0;
  for (const auto& row : d)
    drift = std::max(drift, std::abs(row.energy - e0) / std::max(std::abs(e0), 1e-300));
  out << "energy_relative_drift=" << format_double(drift) << '\n';

  int status = 0;
  if (traj.reference) {
    out << "l2_phi=" << format_double(d.back().l2_phi) << '\n';
    out << "l2_psi=" << format_double(d.back().l2_psi) << '\n';
    if (!s.is_auto("check.l2_max") && s.str("check.l2_max") != "off") {
      const double bound = s.number("check.l2_max");
      if (!(d.back().l2_phi <= bound && d.back().l2_psi <= bound)) {
        err << "error: final L2 error exceeds check.l2_max=" << format_double(bound) << '\n';
        status = 1;
      }
    }
  }
  if (plane_wave) {
    const auto& spec = std::get<dynamics::PlaneWaveSpec>(config.initial);
    const auto ev = reduced::hyperbolicity_check(reduced::coupling_matrix(config.material));
    const double expected = std::sqrt(spec.mode == dynamics::WaveMode::slow ? ev.slow : ev.fast);
    out << "eigen_speed=" << format_double(expected) << '\n';
    if (traj.snapshots.size() >= 2) {
      const double measured = dynamics::plane_wave_speed(traj.snapshots, config.material,
                                                         spec.mode, spec.wavelengths);
      out << "measured_speed=" << format_double(measured) << '\n';
      out << "speed_relative_error=" << format_double(std::abs(measured - expected) / expected)
          << '\n';
    }
  }
  return status;
}

int cmd_dispersion(const Settings& s, std::ostream& out, std::ostream& err) {
  (void)err;
  const MaterialParams p = s.material();
  p.validate();
  const auto ev = reduced::hyperbolicity_check(reduced::coupling_matrix(p));
  const double v_min = s.number("sweep.v_min");
  const double v_max = s.is_auto("sweep.v_max") ? 1.5 * std::sqrt(ev.fast) : s.number("sweep.v_max");
  const long count = s.integer("sweep.count");
  if (count < 1) throw ConfigError("sweep.count must be >= 1");
  if (!(v_max >= v_min) || v_min < 0.0) throw ConfigError("need 0 <= sweep.v_min <= sweep.v_max");

  print_windows(out, reduced::admissible_speed_windows(p, v_max));
  out << "mu_c,v,k2,k_plus,k_minus,valid,residual\n";
  auto row = [&](const MaterialParams& q, double v) {
    double k2 = std::numeric_limits<double>::quiet_NaN();
    try {
      k2 = reduced::wave_number_squared(v, q);
    } catch (const DomainError&) {
    }
    const bool valid = std::isfinite(k2) && k2 >= 0.0;
    const double k = valid ? std::sqrt(k2) : std::numeric_limits<double>::quiet_NaN();
    const double res =
        valid ? reduced::dispersion_residual_relative(k, v, q) : std::numeric_limits<double>::quiet_NaN();
    out << format_double(q.mu_c) << ',' << format_double(v) << ',' << format_double(k2) << ','
        << format_double(k) << ',' << format_double(valid ? 0.0 - k : k) << ',' << (valid ? 1 : 0)
        << ',' << format_double(res) << '\n';
  };
  for (long i = 0; i < count; ++i) {
    const double v = count == 1 ? v_min
                                : v_min + (v_max - v_min) * static_cast<double>(i) /
                                              static_cast<double>(count - 1);
    row(p, v);
  }
  // Linear limit: mu_c = 0 gives k = 0 at the plane-wave eigen-speeds.
  MaterialParams linear = p;
  linear.mu_c = 0.0;
  row(linear, std::sqrt(ev.slow));
  row(linear, std::sqrt(ev.fast));
  return 0;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  verify::Fault fault;
  fault.param = opt.fault_param;
  fault.factor = opt.fault_factor;
  fault.flip_m21 = opt.flip_m21;
  if (!fault.param.empty()) (void)MaterialParams{}.at(fault.param);
  const auto reports = verify::run_all(opt.seed, fault);
  int passed = 0;
  for (const auto& r : reports) {
    out << verify::to_json_line(r) << '\n';
    passed += r.passed ? 1 : 0;
  }
  err << passed << '/' << reports.size() << " checks passed\n";
  return verify::all_passed(reports) ? 0 : 1;
}

int cmd_export_torus(const Settings& s, const TorusOptions& opt, std::ostream& out,
                     std::ostream& err) {
  if (opt.stride < 1) throw ConfigError("stride must be >= 1");
  std::vector<double> z, phi, psi;
  if (opt.snapshot) {
    const auto blocks = read_snapshots(*opt.snapshot);
    if (blocks.empty()) throw ConfigError("snapshot file has no blocks");
    const int nb = static_cast<int>(blocks.size());
    const int idx = opt.block < 0 ? nb + opt.block : opt.block;
    if (idx < 0 || idx >= nb) throw ConfigError("block index out of range");
    z = blocks[idx].z;
    phi = blocks[idx].phi;
    psi = blocks[idx].psi;
  } else {
    const MaterialParams p = s.material();
    p.validate();
    reduced::SolitonSolution sol;
    try {
      sol = reduced::make_soliton(s.number("soliton.v"), p,
                                  reduced::parse_branch(s.str("soliton.branch")),
                                  s.number("soliton.delta"));
    } catch (const reduced::NoSolitonError& e) {
      report_no_soliton(err, e);
      return 2;
    }
    const Grid1 g{static_cast<int>(s.integer("grid.n")), s.number("grid.z_min"),
                  s.number("grid.z_max"), BoundaryMode::dirichlet};
    g.validate();
    const double t = s.number_list("times").front();
    for (int i = 0; i < g.n; ++i) {
      z.push_back(g.z(i));
      phi.push_back(reduced::soliton_phi(g.z(i), t, sol));
      psi.push_back(reduced::soliton_psi(g.z(i), t, sol));
    }
  }
  out << "z,phi,psi,position\n";
  for (std::size_t i = 0; i < z.size(); i += static_cast<std::size_t>(opt.stride))
    out << format_double(z[i]) << ',' << format_double(phi[i]) << ',' << format_double(psi[i])
        << ',' << format_double(z[i] + psi[i]) << '\n';
  return 0;
}

}  // namespace cosserat::app
