// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "cosserat/dynamics.hpp"
#include "cosserat/energy.hpp"
#include "cosserat/reduced.hpp"
#include "cosserat/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cosserat;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void run(const char* id, const char* title, double time_limit_s, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = time_limit_s <= 0.0 || secs < time_limit_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("%s %s %s: %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
              in_time ? "" : ", over the time limit");
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Random physically admissible parameters with a hyperbolic coupling matrix
/// and at least one soliton speed window.
MaterialParams random_material(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    MaterialParams p;
    p.mu = 0.5 + 1.5 * u(rng);
    p.lambda = 2.0 * u(rng);
    p.mu_c = 0.2 + 1.8 * u(rng);
    p.kappa1 = 0.1 + 1.4 * u(rng);
    p.kappa2 = 0.1 + 1.4 * u(rng);
    p.kappa3 = 0.1 + 1.4 * u(rng);
    p.chi1 = 0.5 * u(rng);
    p.chi3 = 0.5 * u(rng);
    p.rho = 0.5 + 1.5 * u(rng);
    p.rho_rot = 0.5 + 1.5 * u(rng);
    try {
      p.validate();
      reduced::hyperbolicity_check(reduced::coupling_matrix(p));
    } catch (const Error&) {
      continue;
    }
    if (!reduced::admissible_speed_windows(p).empty()) return p;
  }
}

struct RunResult {
  int n = 0;
  double dz = 0.0;
  double l2 = 0.0;
  double drift = 0.0;
  double center_offset = 0.0;
  double seconds = 0.0;
};

/// Kink on a twisted-periodic ring of length 30/k, integrated for ten
/// crossing times L / v.
RunResult propagate(int n) {
  const MaterialParams p;
  const double v = 0.5;
  const auto s = reduced::make_soliton(v, p, reduced::Branch::kink);
  const double length = 30.0 / s.k;
  dynamics::SimConfig c;
  c.material = p;
  c.grid = {n, -0.5 * length, 0.5 * length, BoundaryMode::periodic};
  c.t_end = 10.0 * length / v;
  c.initial = dynamics::SolitonSpec{v, 0.0, reduced::Branch::kink};
  c.output_stride = 500;
  const auto t0 = std::chrono::steady_clock::now();
  RunResult r;
  r.n = n;
  r.dz = c.grid.dz();
  double worst_center = 0.0;
  const auto tr = dynamics::integrate(
      c,
      [&](const ReducedState& st, const dynamics::DiagnosticsRow&) {
        const double off = dynamics::center_offset(st.grid, dynamics::soliton_center(st),
                                                   dynamics::analytic_center(st, s));
        if (std::abs(off) > std::abs(worst_center)) worst_center = off;
      },
      false);
  const double e0 = tr.diagnostics.front().energy;
  for (const auto& d : tr.diagnostics) r.drift = std::max(r.drift, std::abs(d.energy - e0) / e0);
  r.l2 = std::hypot(tr.diagnostics.back().l2_phi, tr.diagnostics.back().l2_psi);
  r.center_offset = worst_center;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

int main() {
  const MaterialParams defaults;

  run("C1", "closed-form soliton residual", 1.0, [] {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    bool ok = true;
    int sets = 0;
    for (; sets < 8; ++sets) {
      const MaterialParams p = random_material(rng);
      const auto w = reduced::admissible_speed_windows(p).front();
      std::uniform_real_distribution<double> pick(w.lo + 0.1 * (w.hi - w.lo), w.lo + 0.9 * (w.hi - w.lo));
      const double v = pick(rng);
      for (auto b : {reduced::Branch::kink, reduced::Branch::antikink}) {
        const auto rep = verify::check_soliton_residual(p, v, b);
        worst = std::max(worst, rep.error);
        ok = ok && rep.passed && rep.error < 1e-10;
      }
    }
    return Outcome{ok, std::to_string(sets) + " parameter sets x 2 branches, max residual " +
                           sci(worst) + " (< 1e-10)"};
  });

  run("C2", "dispersion consistency", 1.0, [&] {
    const auto rep = verify::check_dispersion(defaults, 1000, 1);
    MaterialParams linear = defaults;
    linear.mu_c = 0.0;
    const bool k_zero = reduced::wave_number(0.5, linear, reduced::Branch::kink) == 0.0;
    return Outcome{rep.passed && k_zero, "1000 speeds, max relative residual " + sci(rep.error) +
                                             " (< 1e-12); mu_c=0: k=0 and v^2 = eig(M)"};
  });

  std::vector<RunResult> runs;
  run("C3", "soliton propagation convergence", 0.0, [&] {
    for (int n : {512, 1024, 2048}) runs.push_back(propagate(n));
    bool ok = true;
    std::ostringstream os;
    os << "L2";
    for (const auto& r : runs) os << " n=" << r.n << ":" << sci(r.l2);
    os << "; orders";
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      const double order = std::log2(runs[i].l2 / runs[i + 1].l2);
      ok = ok && order >= 1.8 && order <= 2.2;
      os << ' ' << sci(order);
    }
    os << " (2 +- 0.2); max centre offset";
    for (const auto& r : runs) {
      ok = ok && std::abs(r.center_offset) <= 2.0 * r.dz;
      os << ' ' << sci(r.center_offset / r.dz);
    }
    os << " dz (<= 2); n=2048 took " << sci(runs.back().seconds) << " s (< 60)";
    ok = ok && runs.back().seconds < 60.0;
    return Outcome{ok, os.str()};
  });

  run("C4", "energy conservation", 0.0, [&] {
    if (runs.size() != 3) return Outcome{false, "criterion-3 runs missing"};
    double worst = 0.0;
    for (const auto& r : runs) worst = std::max(worst, r.drift);
    return Outcome{worst < 1e-4, "max relative drift " + sci(worst) + " (< 1e-4)"};
  });

  run("C5", "variational check of the displacement equation", 30.0, [] {
    const auto rep = verify::check_displacement_eom_isolated(7, 1);
    std::ostringstream os;
    os << "7^3 grid, mu/lambda/mu_c/chi1/chi3 isolated and combined, max relative error "
       << sci(rep.error) << " (< 1e-6)";
    return Outcome{rep.passed, os.str()};
  });

  run("C6", "rotation variation", 1.0, [] {
    const auto rep = verify::check_rotation_variation(1000, 1);
    return Outcome{rep.passed, "1000 random axial vectors, max deviation " + sci(rep.error) +
                                   " (< 1e-7)"};
  });

  run("C7", "linearization slopes", 0.0, [] {
    const auto rep = verify::check_linearization_chain(1);
    std::ostringstream os;
    for (const auto& [k, v] : rep.metadata)
      if (k.rfind("slope.", 0) == 0) os << k.substr(6) << '=' << v << ' ';
    os << "max |slope - expected| " << sci(rep.error) << " (<= 0.2)";
    return Outcome{rep.passed, os.str()};
  });

  run("C8", "ansatz reduction and kappa2 independence", 0.0, [&] {
    bool ok = true;
    std::ostringstream os;
    for (auto pr : {verify::Profile::constant_linear, verify::Profile::gaussian, verify::Profile::soliton}) {
      const auto rep = verify::check_ansatz_reduction(defaults, pr, 256);
      ok = ok && rep.passed;
      os << verify::to_string(pr) << ' ' << sci(rep.error) << ", ";
    }
    // kappa2 must not change anything the reduced model or the displacement
    // equation produces.
    MaterialParams a = defaults, b = defaults;
    b.kappa2 = 7.0 * a.kappa2 + 1.0;
    dynamics::SimConfig c;
    c.grid = {256, -20, 20, BoundaryMode::dirichlet};
    c.t_end = 2.0;
    c.output_stride = 25;
    c.material = a;
    const auto ta = dynamics::integrate(c);
    c.material = b;
    const auto tb = dynamics::integrate(c);
    bool same = ta.snapshots.size() == tb.snapshots.size();
    for (std::size_t i = 0; same && i < ta.snapshots.size(); ++i)
      same = ta.snapshots[i].phi == tb.snapshots[i].phi && ta.snapshots[i].psi == tb.snapshots[i].psi &&
             ta.snapshots[i].phi_t == tb.snapshots[i].phi_t &&
             ta.snapshots[i].psi_t == tb.snapshots[i].psi_t &&
             ta.diagnostics[i].energy == tb.diagnostics[i].energy;

    Grid3 g;
    g.counts = {5, 5, 64};
    g.spacing = {0.2, 0.2, 0.2};
    energy::FieldGrid3 f = energy::FieldGrid3::zeros(g);
    const auto s = reduced::make_soliton(0.5, defaults, reduced::Branch::kink, -3.0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 64; ++k) {
          const double z = g.point(i, j, k)[2];
          f.u[g.index(i, j, k)] = Vec3(0, 0, reduced::soliton_psi(z, 0, s));
          f.a[g.index(i, j, k)] = Vec3(0, 0, reduced::soliton_phi(z, 0, s));
        }
    const auto ra = energy::displacement_eom_rhs(f, a);
    const auto rb = energy::displacement_eom_rhs(f, b);
    const bool same3d = ra.values == rb.values;
    ok = ok && same && same3d;
    os << "orthogonal components < 1e-10; kappa2 " << a.kappa2 << " -> " << b.kappa2
       << ": reduced run " << (same ? "bit-identical" : "DIFFERS") << ", 3D rhs "
       << (same3d ? "bit-identical" : "DIFFERS");
    return Outcome{ok, os.str()};
  });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
