#include "cosserat/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cosserat {

void Grid1::validate() const {
  if (n < kMinPoints)
    throw DomainError("1D grid needs at least " + std::to_string(kMinPoints) + " points");
  if (!(z_max > z_min)) throw DomainError("1D grid needs z_max > z_min");
}

double Grid1::dz() const {
  return mode == BoundaryMode::periodic ? length() / n : length() / (n - 1);
}

ReducedState ReducedState::zeros(const Grid1& grid) {
  grid.validate();
  const std::vector<double> z(static_cast<std::size_t>(grid.n), 0.0);
  return {grid, {}, z, z, z, z, 0.0};
}

void ReducedState::validate() const {
  grid.validate();
  const auto n = static_cast<std::size_t>(grid.n);
  if (phi.size() != n || psi.size() != n || phi_t.size() != n || psi_t.size() != n)
    throw DomainError("ReducedState: array sizes do not match the grid");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(phi) || !finite(psi) || !finite(phi_t) || !finite(psi_t))
    throw DomainError("ReducedState: non-finite field value");
}

namespace reduced {

CouplingMatrix coupling_matrix(const MaterialParams& p) {
  if (!(p.rho > 0.0) || !(p.rho_rot > 0.0))
    throw DomainError("coupling_matrix: rho and rho_rot must be positive");
  const double chi = 3.0 * p.chi1 - p.chi3;
  return {(p.kappa1 + 6.0 * p.kappa3) / (3.0 * p.rho_rot), chi / (6.0 * p.rho_rot),
          2.0 * chi / (3.0 * p.rho), (p.lambda + 2.0 * p.mu) / p.rho};
}

ReducedParams ReducedParams::from(const MaterialParams& p) {
  return {p, coupling_matrix(p), p.mu_c / p.rho_rot};
}

Eigenvalues eigenvalues(const CouplingMatrix& m) {
  const double diff = m.m11 - m.m22;
  const double disc = std::sqrt(std::max(0.0, diff * diff + 4.0 * m.m12 * m.m21));
  const double tr = m.trace();
  // Larger root directly, smaller one via det / larger to avoid cancellation.
  const double big = 0.5 * (tr + (tr >= 0.0 ? disc : -disc));
  const double small = big != 0.0 ? m.det() / big : 0.0;
  return {std::min(big, small), std::max(big, small)};
}

Eigenvalues hyperbolicity_check(const CouplingMatrix& m) {
  const Eigenvalues ev = eigenvalues(m);
  if (!(ev.slow > 0.0) || !(ev.fast > 0.0)) {
    std::ostringstream msg;
    msg << "coupling matrix is not hyperbolic: eigenvalues " << ev.slow << ", " << ev.fast;
    throw NotHyperbolicError(msg.str());
  }
  return ev;
}

std::array<double, 2> eigenvector(const CouplingMatrix& m, double eigenvalue) {
  // Rows of (M - lambda 1) give two candidate null vectors; take the better one.
  std::array<double, 2> a{m.m12, eigenvalue - m.m11};
  std::array<double, 2> b{eigenvalue - m.m22, m.m21};
  const double na = std::hypot(a[0], a[1]);
  const double nb = std::hypot(b[0], b[1]);
  if (na == 0.0 && nb == 0.0) return {1.0, 0.0};
  const auto& best = na >= nb ? a : b;
  const double norm = std::max(na, nb);
  return {best[0] / norm, best[1] / norm};
}

double dispersion_residual(double k, double v, const MaterialParams& p) {
  const CouplingMatrix m = coupling_matrix(p);
  const double v2 = v * v;
  return k * k * (v2 * v2 - m.trace() * v2 + m.det()) - (m.v_elas2() - v2) * p.mu_c / p.rho_rot;
}

double dispersion_residual_relative(double k, double v, const MaterialParams& p) {
  const CouplingMatrix m = coupling_matrix(p);
  const double v2 = v * v;
  const double lhs = k * k * (v2 * v2 - m.trace() * v2 + m.det());
  const double rhs = (m.v_elas2() - v2) * p.mu_c / p.rho_rot;
  const double scale = std::abs(lhs) + std::abs(rhs);
  return scale == 0.0 ? 0.0 : (lhs - rhs) / scale;
}

std::string to_string(Branch b) { return b == Branch::kink ? "kink" : "antikink"; }

Branch parse_branch(const std::string& s) {
  if (s == "kink" || s == "+" || s == "plus") return Branch::kink;
  if (s == "antikink" || s == "-" || s == "minus") return Branch::antikink;
  throw DomainError("unknown soliton branch '" + s + "' (expected kink or antikink)");
}

double wave_number_squared(double v, const MaterialParams& p) {
  if (p.mu_c == 0.0) return 0.0;
  const CouplingMatrix m = coupling_matrix(p);
  const double v2 = v * v;
  const double denom = v2 * v2 - m.trace() * v2 + m.det();
  if (denom == 0.0)
    throw DomainError("wave number undefined: v^2 is an eigenvalue of the coupling matrix");
  return (m.v_elas2() - v2) / denom * (p.mu_c / p.rho_rot);
}

std::vector<SpeedWindow> admissible_speed_windows(const MaterialParams& p, double v_max,
                                                  int samples) {
  if (v_max <= 0.0) v_max = 1.5 * std::sqrt(std::max(eigenvalues(coupling_matrix(p)).fast, 0.0));
  if (!(v_max > 0.0) || samples < 2) return {};

  auto positive = [&](double v) {
    try {
      return wave_number_squared(v, p) > 0.0;
    } catch (const DomainError&) {
      return false;
    }
  };
  // Boundary between a and b where positive() flips; 60 bisections reach
  // double resolution for any sensible v_max.
  auto refine = [&](double a, double b) {
    const bool pa = positive(a);
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (a + b);
      (positive(mid) == pa ? a : b) = mid;
    }
    return pa ? a : b;
  };

  std::vector<SpeedWindow> windows;
  const double step = v_max / samples;
  bool inside = positive(0.0);
  double start = 0.0;
  double prev = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double v = step * i;
    const bool now = positive(v);
    if (now != inside) {
      const double edge = refine(prev, v);
      if (inside) windows.push_back({start, edge});
      else start = edge;
      inside = now;
    }
    prev = v;
  }
  if (inside) windows.push_back({start, v_max});
  return windows;
}

double wave_number(double v, const MaterialParams& p, Branch branch) {
  if (p.mu_c == 0.0) return 0.0;
  const double k2 = wave_number_squared(v, p);
  if (k2 < 0.0) {
    std::ostringstream msg;
    msg << "no soliton at v = " << v << ": k^2 = " << k2 << " < 0";
    throw NoSolitonError(msg.str(), admissible_speed_windows(p));
  }
  const double k = std::sqrt(k2);
  return branch == Branch::kink ? k : -k;
}

std::vector<double> solve_velocity(double k, const MaterialParams& p) {
  const CouplingMatrix m = coupling_matrix(p);
  const double m2 = p.mu_c / p.rho_rot;
  const double k2 = k * k;
  if (k2 == 0.0) {
    if (m2 == 0.0) throw DomainError("solve_velocity: k = 0 and mu_c = 0 leave v undetermined");
    return {m.v_elas2()};
  }
  const double a = k2;
  const double b = -(k2 * m.trace() - m2);
  const double c = k2 * m.det() - m2 * m.v_elas2();
  // The discriminant equals (k^2 (M22 - M11) + m^2)^2 + 4 k^4 M12 M21 >= 0.
  const double dd = k2 * (m.m22 - m.m11) + m2;
  const double disc = std::sqrt(dd * dd + 4.0 * k2 * k2 * m.m12 * m.m21);
  const double q = -0.5 * (b + (b >= 0.0 ? disc : -disc));
  std::vector<double> roots;
  if (q != 0.0) {
    roots.push_back(q / a);
    roots.push_back(c / q);
  } else {
    roots.push_back(0.0);
    roots.push_back(0.0);
  }
  std::erase_if(roots, [](double x) { return !(x >= 0.0); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

SolitonSolution make_soliton(double v, const MaterialParams& p, Branch branch, double delta) {
  const CouplingMatrix m = coupling_matrix(p);
  const double gap = m.v_elas2() - v * v;
  if (gap == 0.0) throw DomainError("make_soliton: v^2 equals v_elas^2");
  SolitonSolution s;
  s.k = wave_number(v, p, branch);
  s.v = v;
  s.delta = delta;
  s.branch = branch;
  s.amplitude_psi = -4.0 * m.m21 / gap;
  return s;
}

namespace {

// 4 arctan(e^x), evaluated through the smaller exponential on each side.
double four_arctan_exp(double x) {
  if (x > 0.0) return 2.0 * std::numbers::pi - 4.0 * std::atan(std::exp(-x));
  return 4.0 * std::atan(std::exp(x));
}

}  // namespace

double soliton_phi(double z, double t, const SolitonSolution& s) {
  return four_arctan_exp(s.k * (z - s.v * t) + s.delta);
}

double soliton_psi(double z, double t, const SolitonSolution& s) {
  const double arg = z - s.v * t;
  return 0.25 * s.amplitude_psi * four_arctan_exp(s.k * arg + s.delta) + s.c1 + s.c2 * arg;
}

SolitonJet soliton_jet(double z, double t, const SolitonSolution& s) {
  const double arg = z - s.v * t;
  const double xi = s.k * arg + s.delta;
  const double sech = 1.0 / std::cosh(xi);
  const double th = std::tanh(xi);
  const double ratio = 0.25 * s.amplitude_psi;

  SolitonJet j{};
  j.phi = four_arctan_exp(xi);
  j.phi_z = 2.0 * s.k * sech;
  j.phi_zz = -2.0 * s.k * s.k * sech * th;
  j.phi_t = -s.v * j.phi_z;
  j.phi_tt = s.v * s.v * j.phi_zz;
  j.psi = ratio * j.phi + s.c1 + s.c2 * arg;
  j.psi_z = ratio * j.phi_z + s.c2;
  j.psi_zz = ratio * j.phi_zz;
  j.psi_t = ratio * j.phi_t - s.v * s.c2;
  j.psi_tt = ratio * j.phi_tt;
  j.sin_phi = std::sin(j.phi);
  return j;
}

void reduced_rhs(const ReducedState& state, const MaterialParams& p, Accelerations& out) {
  const CouplingMatrix m = coupling_matrix(p);
  const double m2 = p.mu_c / p.rho_rot;
  const int n = state.grid.n;
  const double inv_dz2 = 1.0 / (state.grid.dz() * state.grid.dz());
  const auto& phi = state.phi;
  const auto& psi = state.psi;
  auto& a_phi = out.phi_tt;
  auto& a_psi = out.psi_tt;
  if (static_cast<int>(phi.size()) != n || static_cast<int>(a_phi.size()) != n ||
      static_cast<int>(a_psi.size()) != n)
    throw DomainError("reduced_rhs: array sizes do not match the grid");

  auto point = [&](int i, double phi_l, double phi_r, double psi_l, double psi_r) {
    const double phi_zz = (phi_l - 2.0 * phi[i] + phi_r) * inv_dz2;
    const double psi_zz = (psi_l - 2.0 * psi[i] + psi_r) * inv_dz2;
    a_phi[i] = m.m11 * phi_zz + m.m12 * psi_zz - m2 * std::sin(phi[i]);
    a_psi[i] = m.m21 * phi_zz + m.m22 * psi_zz;
  };

  for (int i = 1; i < n - 1; ++i) point(i, phi[i - 1], phi[i + 1], psi[i - 1], psi[i + 1]);

  if (state.grid.mode == BoundaryMode::periodic) {
    const BoundaryValues& b = state.boundary;
    point(0, phi[n - 1] - b.phi_jump, phi[1], psi[n - 1] - b.psi_jump, psi[1]);
    point(n - 1, phi[n - 2], phi[0] + b.phi_jump, psi[n - 2], psi[0] + b.psi_jump);
  } else {
    a_phi[0] = a_psi[0] = 0.0;
    a_phi[n - 1] = a_psi[n - 1] = 0.0;
  }
}

Accelerations reduced_rhs(const ReducedState& state, const MaterialParams& p) {
  state.validate();
  Accelerations out{std::vector<double>(state.phi.size()), std::vector<double>(state.phi.size())};
  reduced_rhs(state, p, out);
  return out;
}

double rescale_z(const MaterialParams& p, double v) {
  const CouplingMatrix m = coupling_matrix(p);
  const double gap = v * v - m.v_elas2();
  if (gap == 0.0) throw DomainError("rescale_z: v^2 equals v_elas^2");
  const double speed2 = m.v_rot2() + m.m12 * m.m21 / gap;
  if (!(speed2 > 0.0))
    throw DomainError("rescale_z: effective speed^2 is not positive, reduction invalid at this v");
  return std::sqrt(speed2);
}

double reduced_energy_density(double phi, double phi_z, double phi_t, double psi_z,
                              double psi_t, const MaterialParams& p) {
  return 2.0 * p.rho_rot * phi_t * phi_t +
         (2.0 / 3.0) * (p.kappa1 + 6.0 * p.kappa3) * phi_z * phi_z +
         0.5 * p.rho * psi_t * psi_t + 0.5 * (p.lambda + 2.0 * p.mu) * psi_z * psi_z +
         (2.0 / 3.0) * (3.0 * p.chi1 - p.chi3) * phi_z * psi_z +
         4.0 * p.mu_c * (1.0 - std::cos(phi));
}

double reduced_energy(const ReducedState& state, const MaterialParams& p) {
  state.validate();
  const int n = state.grid.n;
  const double dz = state.grid.dz();
  const bool periodic = state.grid.mode == BoundaryMode::periodic;

  double nodes = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = (!periodic && (i == 0 || i == n - 1)) ? 0.5 : 1.0;
    nodes += w * reduced_energy_density(state.phi[i], 0.0, state.phi_t[i], 0.0, state.psi_t[i], p);
  }

  double edges = 0.0;
  auto edge = [&](double dphi, double dpsi) {
    const double phi_z = dphi / dz;
    const double psi_z = dpsi / dz;
    // Gradient-only part of the density.
    edges += reduced_energy_density(0.0, phi_z, 0.0, psi_z, 0.0, p);
  };
  for (int i = 0; i + 1 < n; ++i)
    edge(state.phi[i + 1] - state.phi[i], state.psi[i + 1] - state.psi[i]);
  if (periodic)
    edge(state.phi[0] + state.boundary.phi_jump - state.phi[n - 1],
         state.psi[0] + state.boundary.psi_jump - state.psi[n - 1]);

  return dz * (nodes + edges);
}

}  // namespace reduced
}  // namespace cosserat
