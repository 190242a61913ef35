#include "cosserat/verify.hpp"

#include "cosserat/dynamics.hpp"
#include "cosserat/energy.hpp"
#include "cosserat/grid.hpp"
#include "cosserat/kinematics.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace cosserat::verify {

namespace {

using energy::FieldGrid3;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

CheckReport finish(CheckReport r) {
  r.passed = std::isfinite(r.error) && r.error <= r.tolerance;
  return r;
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-8);
  return v.normalized();
}

Mat3 random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = d(rng);
  return m;
}

// Sum of two plane sine modes per component.
struct SmoothField {
  std::array<std::array<Vec3, 2>, 3> wave;
  std::array<std::array<double, 2>, 3> phase;
  std::array<std::array<double, 2>, 3> amp;

  SmoothField(std::mt19937_64& rng, double amplitude) {
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> a(0.5, 1.0);
    for (int c = 0; c < 3; ++c)
      for (int m = 0; m < 2; ++m) {
        wave[c][m] = Vec3(w(rng), w(rng), w(rng));
        phase[c][m] = ph(rng);
        amp[c][m] = amplitude * a(rng);
      }
  }

  Vec3 operator()(const Vec3& x) const {
    Vec3 out = Vec3::Zero();
    for (int c = 0; c < 3; ++c)
      for (int m = 0; m < 2; ++m) out[c] += amp[c][m] * std::sin(wave[c][m].dot(x) + phase[c][m]);
    return out;
  }
};

FieldGrid3 random_fields(int n, double h, std::uint64_t seed) {
  Grid3 grid;
  grid.counts = {n, n, n};
  grid.spacing = {h, h, h};
  grid.origin = Vec3::Zero();
  std::mt19937_64 rng(seed);
  const SmoothField u(rng, 0.1);
  const SmoothField a(rng, 0.8);
  FieldGrid3 f = FieldGrid3::zeros(grid);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::size_t idx = grid.index(i, j, k);
        f.u[idx] = u(grid.point(i, j, k));
        f.a[idx] = a(grid.point(i, j, k));
      }
  return f;
}

double interior_potential(const FieldGrid3& f, const MaterialParams& p) {
  const auto terms = energy::density_terms(f, p, energy::Model::linearized);
  const auto& c = f.grid.counts;
  double sum = 0.0;
  for (int i = 1; i < c[0] - 1; ++i)
    for (int j = 1; j < c[1] - 1; ++j)
      for (int k = 1; k < c[2] - 1; ++k) sum += terms[f.grid.index(i, j, k)].potential();
  return sum;
}

MaterialParams zero_material() {
  MaterialParams p;
  for (std::string_view key : kMaterialKeys) p.at(key) = 0.0;
  p.rho = 1.0;
  p.rho_rot = 1.0;
  return p;
}

}  // namespace

std::string to_json_line(const CheckReport& r) {
  auto num = [](double x) -> nlohmann::json {
    if (std::isnan(x)) return nullptr;
    return x;
  };
  nlohmann::json j;
  j["name"] = r.name;
  j["error"] = num(r.error);
  j["max_abs_error"] = num(r.max_abs_error);
  j["max_rel_error"] = num(r.max_rel_error);
  j["tolerance"] = num(r.tolerance);
  j["passed"] = r.passed;
  j["metadata"] = r.metadata;
  return j.dump();
}

CheckReport from_json_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed report line: ") + e.what());
  }
  auto num = [&](const char* key) {
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  CheckReport r;
  try {
    r.name = j.at("name").get<std::string>();
    r.error = num("error");
    r.max_abs_error = num("max_abs_error");
    r.max_rel_error = num("max_rel_error");
    r.tolerance = num("tolerance");
    r.passed = j.at("passed").get<bool>();
    r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed report line: ") + e.what());
  }
  return r;
}

MaterialParams Fault::apply(const MaterialParams& p) const {
  MaterialParams out = p;
  if (!param.empty()) out.at(param) *= factor;
  return out;
}

CheckReport check_rotation_variation(int samples, std::uint64_t seed) {
  if (samples < 0) throw DomainError("samples must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  std::vector<Vec3> points;
  for (double len : {1e-9, 1e-6, 5e-5, 9.9e-5, 1.01e-4, 1e-3, 2.0 * std::numbers::pi - 1e-3,
                     2.0 * std::numbers::pi - 1e-7})
    points.push_back(len * random_unit(rng));
  for (int s = 0; s < samples; ++s) {
    double len = 0.0;
    while (len == 0.0) len = angle(rng);
    points.push_back(len * random_unit(rng));
  }

  double max_abs = 0.0;
  double max_rel = 0.0;
  for (const Vec3& a : points) {
    const Rank3 d = kinematics::rotation_variation(a);
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(a[k]));
      Vec3 ap = a, am = a;
      ap[k] += h;
      am[k] -= h;
      const Mat3 fd = (kinematics::rotation_exp(ap) - kinematics::rotation_exp(am)) / (2.0 * h);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double err = std::abs(fd(i, j) - d(i, j, k));
          max_abs = std::max(max_abs, err);
          max_rel = std::max(max_rel, err / std::max(1.0, std::abs(fd(i, j))));
        }
    }
  }
  CheckReport r;
  r.name = "rotation_variation";
  r.error = max_abs;
  r.max_abs_error = max_abs;
  r.max_rel_error = max_rel;
  r.tolerance = 1e-7;
  r.metadata = {{"samples", std::to_string(points.size())}, {"seed", std::to_string(seed)}};
  return finish(r);
}

CheckReport check_linearization_chain(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Mat3 g0 = random_matrix(rng);
  const Vec3 a0 = random_unit(rng);
  const Mat3 k0 = random_matrix(rng);
  const MaterialParams p;
  const Mat3 id = Mat3::Identity();

  struct Family {
    const char* name;
    double expected;
    std::vector<double> residuals;
  };
  std::vector<Family> fam = {
      {"tr", 2.0, {}},          {"sym", 2.0, {}},     {"cosserat_stretch", 2.0, {}},
      {"stretch_u", 2.0, {}},   {"polar", 2.0, {}},   {"interaction", 2.0, {}},
      {"elastic", 3.0, {}},     {"coupling", 3.0, {}},
  };
  const std::vector<double> eps = {1e-1, 1e-2, 1e-3};
  for (double e : eps) {
    const Mat3 g = e * g0;
    const Mat3 f = id + g;
    const Vec3 a = e * a0;
    const Mat3 abar = kinematics::axial_to_skew(a);
    const Mat3 r = kinematics::rotation_exp(a);
    const Mat3 ubar = r.transpose() * f - id;
    const kinematics::PolarParts pol = kinematics::polar_decompose(f);

    fam[0].residuals.push_back(std::abs(ubar.trace() - g.trace()));
    fam[1].residuals.push_back((sym(ubar) - sym(g)).norm());
    fam[2].residuals.push_back((ubar - (g - abar)).norm());
    fam[3].residuals.push_back((pol.stretch - (id + sym(g))).norm());
    fam[4].residuals.push_back((pol.rotation - (id + skew(g))).norm());
    const double full_int = energy::v_interaction(k0, ubar, p, energy::InteractionForm::full) -
                            3.0 * p.chi1 * k0.trace();
    const double lin_int = energy::v_interaction(k0, g, p, energy::InteractionForm::linearized);
    fam[5].residuals.push_back(std::abs(full_int - lin_int));
    fam[6].residuals.push_back(
        std::abs(energy::v_elastic(f, r, p) - energy::v_elastic_linear(g - abar, p)));
    const double lin_coup = p.mu_c * (skew(g) - abar).squaredNorm();
    fam[7].residuals.push_back(std::abs(energy::v_coupling_full(f, r, p) - lin_coup));
  }

  CheckReport rep;
  rep.name = "linearization_chain";
  rep.tolerance = 0.2;
  for (const Family& fm : fam) {
    const double slope = loglog_slope(eps, fm.residuals);
    const double dev = std::isfinite(slope) ? std::abs(slope - fm.expected)
                                            : std::numeric_limits<double>::infinity();
    rep.error = std::max(rep.error, dev);
    rep.metadata[std::string("slope.") + fm.name] = fmt(slope);
  }
  rep.max_abs_error = rep.error;
  rep.max_rel_error = rep.error;
  rep.metadata["seed"] = std::to_string(seed);
  return finish(rep);
}

CheckReport check_displacement_eom(const MaterialParams& p, int n, std::uint64_t seed,
                                   const Fault& fault) {
  if (n < 7) throw DomainError("check_displacement_eom needs n >= 7");
  FieldGrid3 f = random_fields(n, 0.25, seed);
  const VectorField rhs = energy::displacement_eom_rhs(f, fault.apply(p));

  double max_abs = 0.0;
  double scale = 0.0;
  for (int i = 2; i < n - 2; ++i)
    for (int j = 2; j < n - 2; ++j)
      for (int k = 2; k < n - 2; ++k) {
        const std::size_t idx = f.grid.index(i, j, k);
        for (int c = 0; c < 3; ++c) {
          const double u0 = f.u[idx][c];
          const double h = 1e-6 * std::max(1.0, std::abs(u0));
          f.u[idx][c] = u0 + h;
          const double ep = interior_potential(f, p);
          f.u[idx][c] = u0 - h;
          const double em = interior_potential(f, p);
          f.u[idx][c] = u0;
          const double grad = (ep - em) / (2.0 * h);
          max_abs = std::max(max_abs, std::abs(grad + rhs(i, j, k)[c]));
          scale = std::max(scale, std::abs(rhs(i, j, k)[c]));
        }
      }
  CheckReport r;
  r.name = "displacement_eom";
  r.max_abs_error = max_abs;
  r.max_rel_error = scale > 0.0 ? max_abs / scale : max_abs;
  r.error = r.max_rel_error;
  r.tolerance = 1e-6;
  r.metadata = {{"n", std::to_string(n)}, {"seed", std::to_string(seed)},
                {"rhs_scale", fmt(scale)}};
  return finish(r);
}

CheckReport check_displacement_eom_isolated(int n, std::uint64_t seed, const Fault& fault) {
  CheckReport agg;
  agg.name = "displacement_eom_isolated";
  agg.tolerance = 1e-6;
  auto run = [&](const std::string& label, const MaterialParams& p) {
    const CheckReport r = check_displacement_eom(p, n, seed, fault);
    agg.error = std::max(agg.error, r.error);
    agg.max_abs_error = std::max(agg.max_abs_error, r.max_abs_error);
    agg.max_rel_error = std::max(agg.max_rel_error, r.max_rel_error);
    agg.metadata["rel." + label] = fmt(r.max_rel_error);
  };
  for (const char* key : {"mu", "lambda", "mu_c", "chi1", "chi3"}) {
    MaterialParams p = zero_material();
    p.at(key) = MaterialParams{}.at(key);
    run(key, p);
  }
  run("all", MaterialParams{});
  agg.metadata["n"] = std::to_string(n);
  agg.metadata["seed"] = std::to_string(seed);
  return finish(agg);
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::constant_linear:
      return "constant_linear";
    case Profile::gaussian:
      return "gaussian";
    case Profile::soliton:
      return "soliton";
  }
  return "unknown";
}

namespace {

struct ProfileJet {
  double phi, phi_z, phi_zz, psi, psi_zz;
};

struct AnsatzErrors {
  double orthogonal = 0.0;  // max |rhs_1|, |rhs_2|
  double curvature = 0.0;   // relative
  double elastic = 0.0;     // relative
  double curvature_abs = 0.0;
  double elastic_abs = 0.0;
};

AnsatzErrors ansatz_errors(const MaterialParams& p, const MaterialParams& p_ref, int n,
                           double z_min, double z_max,
                           const std::function<ProfileJet(double)>& profile) {
  const double dz = (z_max - z_min) / (n - 1);
  Grid3 grid;
  grid.counts = {5, 5, n};
  grid.spacing = {dz, dz, dz};
  grid.origin = Vec3(0.0, 0.0, z_min);
  FieldGrid3 f = FieldGrid3::zeros(grid);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < n; ++k) {
        const ProfileJet pj = profile(z_min + k * dz);
        const std::size_t idx = grid.index(i, j, k);
        f.u[idx] = Vec3(0.0, 0.0, pj.psi);
        f.a[idx] = Vec3(0.0, 0.0, pj.phi);
      }
  const VectorField rhs = energy::displacement_eom_rhs(f, p);
  const MatrixField curv = kinematics::dislocation_curvature(f.rotations());

  AnsatzErrors e;
  double curv_scale = 0.0;
  double rhs_scale = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < n; ++k)
        e.orthogonal = std::max({e.orthogonal, std::abs(rhs(i, j, k)[0]), std::abs(rhs(i, j, k)[1])});
  const double coupling = (2.0 / 3.0) * (3.0 * p_ref.chi1 - p_ref.chi3);
  for (int k = 2; k < n - 2; ++k) {
    const ProfileJet pj = profile(z_min + k * dz);
    Mat3 expected_k = Mat3::Zero();
    expected_k(0, 0) = expected_k(1, 1) = pj.phi_z;
    e.curvature_abs = std::max(e.curvature_abs, (curv(2, 2, k) - expected_k).cwiseAbs().maxCoeff());
    curv_scale = std::max(curv_scale, std::abs(pj.phi_z));
    const double elastic_term = (p_ref.lambda + 2.0 * p_ref.mu) * pj.psi_zz;
    const double coupling_term = coupling * pj.phi_zz;
    e.elastic_abs =
        std::max(e.elastic_abs, std::abs(rhs(2, 2, k)[2] - (elastic_term + coupling_term)));
    // The two terms nearly cancel for the soliton profile; scale by their sizes.
    rhs_scale = std::max(rhs_scale, std::abs(elastic_term) + std::abs(coupling_term));
  }
  e.curvature = curv_scale > 0.0 ? e.curvature_abs / curv_scale : e.curvature_abs;
  e.elastic = rhs_scale > 0.0 ? e.elastic_abs / rhs_scale : e.elastic_abs;
  return e;
}

}  // namespace

CheckReport check_ansatz_reduction(const MaterialParams& p, Profile profile, int n,
                                   const Fault& fault) {
  if (n < 16) throw DomainError("check_ansatz_reduction needs n >= 16");
  const MaterialParams p_ref = fault.apply(p);
  std::function<ProfileJet(double)> jet;
  double z_min = -10.0;
  double z_max = 10.0;
  switch (profile) {
    case Profile::constant_linear:
      jet = [](double z) { return ProfileJet{0.3, 0.0, 0.0, 0.01 * z + 0.2, 0.0}; };
      break;
    case Profile::gaussian:
      jet = [](double z) {
        const double g = 0.8 * std::exp(-z * z / 4.0);
        const double s2 = 1.5 * 1.5;
        const double y = z - 1.0;
        const double h = 0.3 * std::exp(-y * y / (2.0 * s2));
        return ProfileJet{g, -0.5 * z * g, (0.25 * z * z - 0.5) * g, h,
                          (y * y / (s2 * s2) - 1.0 / s2) * h};
      };
      break;
    case Profile::soliton: {
      const reduced::SolitonSolution s = reduced::make_soliton(0.5, p, reduced::Branch::kink);
      const double width = s.k != 0.0 ? 8.0 / std::abs(s.k) : 10.0;
      z_min = -width;
      z_max = width;
      jet = [s](double z) {
        const reduced::SolitonJet j = reduced::soliton_jet(z, 0.0, s);
        return ProfileJet{j.phi, j.phi_z, j.phi_zz, j.psi, j.psi_zz};
      };
      break;
    }
  }
  const AnsatzErrors coarse = ansatz_errors(p, p_ref, n, z_min, z_max, jet);
  const AnsatzErrors fine = ansatz_errors(p, p_ref, 2 * n - 1, z_min, z_max, jet);

  // Errors at round-off level carry no order information.
  constexpr double kRoundOff = 1e-11;
  auto order = [](double c, double f) {
    if (c <= kRoundOff && f <= kRoundOff) return std::numeric_limits<double>::infinity();
    return std::log2(c / f);
  };
  const double order_k = order(coarse.curvature_abs, fine.curvature_abs);
  const double order_e = order(coarse.elastic_abs, fine.elastic_abs);
  const double min_order = std::min(order_k, order_e);

  CheckReport r;
  r.name = "ansatz_reduction." + to_string(profile);
  r.max_abs_error = std::max({fine.orthogonal, fine.curvature_abs, fine.elastic_abs});
  r.max_rel_error = std::max(fine.curvature, fine.elastic);
  r.tolerance = 2e-3;
  const bool orthogonal_ok = std::max(coarse.orthogonal, fine.orthogonal) < 1e-10;
  const bool order_ok = min_order >= 1.8;
  r.error = (orthogonal_ok && order_ok) ? r.max_rel_error : std::numeric_limits<double>::infinity();
  r.metadata = {{"n_coarse", std::to_string(n)},
                {"n_fine", std::to_string(2 * n - 1)},
                {"orthogonal_max", fmt(std::max(coarse.orthogonal, fine.orthogonal))},
                {"curvature_rel", fmt(fine.curvature)},
                {"elastic_rel", fmt(fine.elastic)},
                {"order_curvature", fmt(order_k)},
                {"order_elastic", fmt(order_e)}};
  return finish(r);
}

CheckReport check_soliton_residual(const MaterialParams& p, double v, reduced::Branch branch,
                                   const Fault& fault) {
  const reduced::SolitonSolution s = reduced::make_soliton(v, fault.apply(p), branch);
  reduced::SolitonSolution sol = s;
  if (fault.flip_m21) sol.amplitude_psi = -sol.amplitude_psi;

  const reduced::CouplingMatrix m = reduced::coupling_matrix(p);
  const double m2 = p.mu_c / p.rho_rot;
  const double width = sol.k != 0.0 ? 20.0 / std::abs(sol.k) : 10.0;

  // Closed form: exact derivatives at 401 points across the kink, two times.
  double max_abs = 0.0;
  double scale = 0.0;
  for (double t : {0.0, 1.3}) {
    const double c = sol.k != 0.0 ? sol.center(t) : 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double z = c - width + i * (2.0 * width / 400.0);
      const reduced::SolitonJet j = reduced::soliton_jet(z, t, sol);
      const double rphi = j.phi_tt - (m.m11 * j.phi_zz + m.m12 * j.psi_zz - m2 * j.sin_phi);
      const double rpsi = j.psi_tt - (m.m21 * j.phi_zz + m.m22 * j.psi_zz);
      max_abs = std::max({max_abs, std::abs(rphi), std::abs(rpsi)});
      scale = std::max({scale, std::abs(j.phi_tt), std::abs(j.psi_tt)});
    }
  }

  CheckReport r;
  r.name = "soliton_residual." + reduced::to_string(branch);
  r.max_abs_error = max_abs;
  r.max_rel_error = scale > 0.0 ? max_abs / scale : max_abs;
  r.error = max_abs;
  r.tolerance = 1e-10;
  r.metadata = {{"v", fmt(v)}, {"k", fmt(sol.k)}, {"amplitude_psi", fmt(sol.amplitude_psi)}};

  // Stencil residual on a pinned grid, n = 400 and 800 cells.
  if (sol.k != 0.0) {
    std::vector<double> errs;
    for (int n : {401, 801}) {
      const double c = sol.center(0.0);
      const Grid1 g{n, c - width, c + width, BoundaryMode::dirichlet};
      const ReducedState st = dynamics::init_from_soliton(g, sol);
      const reduced::Accelerations acc = reduced::reduced_rhs(st, p);
      double e = 0.0;
      for (int i = 1; i < n - 1; ++i) {
        const reduced::SolitonJet j = reduced::soliton_jet(g.z(i), 0.0, sol);
        e = std::max({e, std::abs(acc.phi_tt[i] - j.phi_tt), std::abs(acc.psi_tt[i] - j.psi_tt)});
      }
      errs.push_back(e);
    }
    const double fd_order = std::log2(errs[0] / errs[1]);
    r.metadata["fd_error_coarse"] = fmt(errs[0]);
    r.metadata["fd_error_fine"] = fmt(errs[1]);
    r.metadata["fd_order"] = fmt(fd_order);
    if (!(fd_order >= 1.8 && fd_order <= 2.2)) r.error = std::numeric_limits<double>::infinity();
  } else {
    r.metadata["fd_order"] = "n/a (k = 0)";
  }
  return finish(r);
}

CheckReport check_dispersion(const MaterialParams& p, int samples, std::uint64_t seed,
                             const Fault& fault) {
  const MaterialParams pf = fault.apply(p);
  CheckReport r;
  r.name = "dispersion";
  r.tolerance = 1e-12;

  const auto windows = reduced::admissible_speed_windows(pf);
  double total = 0.0;
  for (const auto& w : windows) total += w.hi - w.lo;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int used = 0;
  if (total > 0.0) {
    for (int s = 0; s < samples; ++s) {
      double pick = u01(rng) * total;
      const reduced::SpeedWindow* win = &windows.back();
      for (const auto& w : windows) {
        if (pick <= w.hi - w.lo) {
          win = &w;
          break;
        }
        pick -= w.hi - w.lo;
      }
      const double margin = 1e-6 * (win->hi - win->lo);
      const double v = win->lo + margin + u01(rng) * (win->hi - win->lo - 2.0 * margin);
      double k2 = 0.0;
      try {
        k2 = reduced::wave_number_squared(v, pf);
      } catch (const DomainError&) {
        continue;
      }
      if (!(k2 > 0.0)) continue;
      const reduced::Branch b = (s % 2 == 0) ? reduced::Branch::kink : reduced::Branch::antikink;
      const double k = reduced::wave_number(v, pf, b);
      const double rel = std::abs(reduced::dispersion_residual_relative(k, v, p));
      r.max_rel_error = std::max(r.max_rel_error, rel);
      r.max_abs_error = std::max(r.max_abs_error, std::abs(reduced::dispersion_residual(k, v, p)));
      ++used;
    }
  }

  // mu_c = 0: k = 0, and for k != 0 the speeds are the eigen-speeds of M.
  MaterialParams linear = p;
  linear.mu_c = 0.0;
  const double k0 = reduced::wave_number(0.5, linear, reduced::Branch::kink);
  const reduced::Eigenvalues ev = reduced::eigenvalues(reduced::coupling_matrix(fault.apply(linear)));
  const auto roots = reduced::solve_velocity(1.0, linear);
  double eig_err = std::abs(k0);
  if (roots.size() != 2) {
    eig_err = std::numeric_limits<double>::infinity();
  } else {
    eig_err = std::max({eig_err, std::abs(roots[0] - ev.slow) / ev.fast,
                        std::abs(roots[1] - ev.fast) / ev.fast});
  }
  r.error = std::max(r.max_rel_error, eig_err);
  if (used == 0) r.error = std::numeric_limits<double>::infinity();
  r.metadata = {{"samples", std::to_string(used)},
                {"windows", std::to_string(windows.size())},
                {"mu_c0_eigen_error", fmt(eig_err)},
                {"seed", std::to_string(seed)}};
  return finish(r);
}

CheckReport check_eom_forms(const MaterialParams& p, int n, std::uint64_t seed) {
  const FieldGrid3 f = random_fields(n, 0.25, seed);
  const VectorField a = energy::displacement_eom_rhs(f, p);
  const VectorField b = energy::displacement_eom_rhs_divergence_form(f, p);
  double max_abs = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    max_abs = std::max(max_abs, (a.values[i] - b.values[i]).cwiseAbs().maxCoeff());
    scale = std::max(scale, a.values[i].cwiseAbs().maxCoeff());
  }
  CheckReport r;
  r.name = "eom_forms";
  r.max_abs_error = max_abs;
  r.max_rel_error = scale > 0.0 ? max_abs / scale : max_abs;
  r.error = r.max_rel_error;
  r.tolerance = 1e-10;
  r.metadata = {{"n", std::to_string(n)}, {"seed", std::to_string(seed)}};
  return finish(r);
}

std::vector<CheckReport> run_all(std::uint64_t seed, const Fault& fault) {
  const MaterialParams p;
  std::vector<CheckReport> out;
  out.push_back(check_rotation_variation(1000, seed));
  out.push_back(check_linearization_chain(seed));
  out.push_back(check_displacement_eom(p, 7, seed, fault));
  out.push_back(check_displacement_eom_isolated(7, seed, fault));
  out.push_back(check_eom_forms(p, 9, seed));
  for (Profile pr : {Profile::constant_linear, Profile::gaussian, Profile::soliton})
    out.push_back(check_ansatz_reduction(p, pr, 256, fault));
  out.push_back(check_soliton_residual(p, 0.5, reduced::Branch::kink, fault));
  out.push_back(check_soliton_residual(p, 0.5, reduced::Branch::antikink, fault));
  out.push_back(check_dispersion(p, 1000, seed, fault));
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.passed; });
}

}  // namespace cosserat::verify
