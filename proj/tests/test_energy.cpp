#include "doctest.h"
#include "oracles.hpp"

#include <Eigen/Dense>

#include "cosserat/energy.hpp"
#include "cosserat/kinematics.hpp"
#include "cosserat/reduced.hpp"

#include <numbers>

using namespace cosserat;
using namespace cosserat::energy;

namespace {

constexpr double kPi = std::numbers::pi;

MaterialParams only(const char* key, double value) {
  MaterialParams p;
  for (auto k : kMaterialKeys) p.at(k) = 0.0;
  p.rho = p.rho_rot = 1.0;
  p.at(key) = value;
  return p;
}

Mat3 diag(double a, double b, double c) { return Vec3(a, b, c).asDiagonal(); }

/// 3D fields u = (0, 0, psi(z)), a = (0, 0, phi(z)) with rates, on a
/// (5, 5, n) lattice spanning [z_min, z_max] in z.
FieldGrid3 longitudinal(int n, double z_min, double z_max, const reduced::SolitonSolution& s) {
  Grid3 g;
  const double dz = (z_max - z_min) / (n - 1);
  g.counts = {5, 5, n};
  g.spacing = {dz, dz, dz};
  g.origin = Vec3(0, 0, z_min);
  FieldGrid3 f = FieldGrid3::zeros(g);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < n; ++k) {
        const auto jet = reduced::soliton_jet(g.point(i, j, k)[2], 0.0, s);
        const std::size_t idx = g.index(i, j, k);
        f.u[idx] = Vec3(0, 0, jet.psi);
        f.a[idx] = Vec3(0, 0, jet.phi);
        f.u_dot[idx] = Vec3(0, 0, jet.psi_t);
        f.a_dot[idx] = Vec3(0, 0, jet.phi_t);
      }
  return f;
}

ReducedState reduced_samples(int n, double z_min, double z_max, const reduced::SolitonSolution& s) {
  ReducedState st = ReducedState::zeros(Grid1{n, z_min, z_max, BoundaryMode::dirichlet});
  for (int i = 0; i < n; ++i) {
    const auto jet = reduced::soliton_jet(st.grid.z(i), 0.0, s);
    st.phi[i] = jet.phi;
    st.psi[i] = jet.psi;
    st.phi_t[i] = jet.phi_t;
    st.psi_t[i] = jet.psi_t;
  }
  return st;
}

}  // namespace

TEST_SUITE("densities") {
  TEST_CASE("elastic") {
    const MaterialParams p;
    CHECK(v_elastic(Mat3::Identity(), Mat3::Identity(), p) == 0.0);
    const Mat3 r = kinematics::rotation_exp(Vec3(0.2, 0.9, -0.4));
    CHECK(std::abs(v_elastic(r, r, p)) < 1e-28);
    for (double e : {1e-3, 0.1, 0.5}) {
      CHECK(v_elastic(diag(1 + e, 1, 1), Mat3::Identity(), p) ==
            doctest::Approx(1.5 * e * e).epsilon(1e-14));
    }
  }

  TEST_CASE("curvature") {
    MaterialParams p;
    p.kappa1 = 1.3;
    p.kappa2 = 0.7;
    p.kappa3 = 0.4;
    CHECK(v_curvature(Mat3::Zero(), p) == 0.0);
    const double q = 0.8;
    CHECK(v_curvature(diag(q, q, 0), p) ==
          doctest::Approx(p.kappa1 * (2.0 / 3.0) * q * q + p.kappa3 * 4 * q * q).epsilon(1e-15));
    const Mat3 k = oracle::skew_of(Vec3(0, 0, 1));  // |K|^2 = 2
    CHECK(v_curvature(k, p) == doctest::Approx(2 * p.kappa2).epsilon(1e-15));
  }

  TEST_CASE("interaction") {
    MaterialParams p;
    p.chi1 = 0.3;
    p.chi3 = 0.7;
    std::mt19937_64 rng(2);
    const Mat3 e = oracle::random_mat(rng);
    CHECK(v_interaction(Mat3::Zero(), e, p, InteractionForm::linearized) == 0.0);
    CHECK(v_interaction(Mat3::Zero(), e, p, InteractionForm::full) == 0.0);
    const double q = 0.6, w = -1.7;
    CHECK(v_interaction(diag(q, q, 0), diag(0, 0, w), p, InteractionForm::linearized) ==
          doctest::Approx(2 * p.chi1 * q * w - (2.0 / 3.0) * p.chi3 * q * w).epsilon(1e-14));
    // Full form carries tr(R^T F) = tr(E) + 3.
    CHECK(v_interaction(diag(q, q, 0), diag(0, 0, w), p, InteractionForm::full) ==
          doctest::Approx(2 * p.chi1 * q * (w + 3) - (2.0 / 3.0) * p.chi3 * q * w).epsilon(1e-14));
    MaterialParams none = p;
    none.chi1 = none.chi3 = 0.0;
    const Mat3 k = oracle::random_mat(rng);
    CHECK(v_interaction(k, e, none, InteractionForm::full) == 0.0);
    CHECK(v_interaction(k, e, none, InteractionForm::linearized) == 0.0);
  }

  TEST_CASE("full coupling") {
    MaterialParams p;
    p.mu_c = 0.7;
    std::mt19937_64 rng(4);
    const Mat3 f = oracle::random_rotation(rng) * (Mat3::Identity() + 0.2 * oracle::random_mat(rng));
    CHECK(v_coupling_full(f, kinematics::polar_decompose(f).rotation, p) < 1e-26);
    CHECK(v_coupling_full(Mat3::Identity(), oracle::rotation_about_z(kPi), p) ==
          doctest::Approx(8 * p.mu_c).epsilon(1e-15));
    CHECK_THROWS_AS(v_coupling_full(diag(1, 1, -1), Mat3::Identity(), p), DomainError);
  }

  TEST_CASE("small gradients: full coupling approaches mu_c |skew grad u|^2") {
    const MaterialParams p;
    std::mt19937_64 rng(6);
    const Mat3 g0 = oracle::random_mat(rng);
    for (double eps : {1e-2, 1e-3}) {
      const Mat3 g = eps * g0;
      const double full = v_coupling_full(Mat3::Identity() + g, Mat3::Identity(), p);
      const double lin = p.mu_c * skew(g).squaredNorm();
      CHECK(std::abs(full - lin) < 10 * eps * lin);
    }
  }

  TEST_CASE("model-2 coupling against the closed form and its phi variation") {
    MaterialParams p;
    p.mu_c = 1.7;
    for (double phi : {0.0, 0.4, 1.5, kPi, 4.0}) {
      const double v = v_coupling_model2(Mat3::Zero(), oracle::rotation_about_z(phi), p);
      CHECK(v == doctest::Approx(4 * p.mu_c * (1 - std::cos(phi))).epsilon(1e-14).scale(1e-14));
      const double h = 1e-6;
      const double fd = (v_coupling_model2(Mat3::Zero(), oracle::rotation_about_z(phi + h), p) -
                         v_coupling_model2(Mat3::Zero(), oracle::rotation_about_z(phi - h), p)) /
                        (2 * h);
      CHECK(std::abs(fd - 4 * p.mu_c * std::sin(phi)) < 1e-8);
    }
    // R - 1 enters as a whole, not only its skew part.
    const Mat3 r = oracle::rotation_about_z(0.9);
    const Mat3 g = skew(r - Mat3::Identity());
    CHECK(v_coupling_model2(g, r, p) ==
          doctest::Approx(p.mu_c * (sym(r - Mat3::Identity())).squaredNorm()).epsilon(1e-14));
  }

  TEST_CASE("kinetic terms") {
    MaterialParams p;
    p.rho = 2.5;
    p.rho_rot = 0.3;
    CHECK(kinetic_translational(Vec3(1, -2, 2), p) == doctest::Approx(1.25 * 9).epsilon(1e-15));
    // Rotation about a fixed axis: tr(R_dot^T R_dot) = 2 |a_dot|^2.
    CHECK(kinetic_rotational(Vec3(0, 0, 1.1), Vec3(0, 0, 0.7), p) ==
          doctest::Approx(p.rho_rot * 2 * 0.49).epsilon(1e-14));
    std::mt19937_64 rng(8);
    for (int s = 0; s < 50; ++s) {
      const Vec3 a = oracle::random_vec(rng, -3, 3);
      const Vec3 w = oracle::random_vec(rng, -1, 1);
      const double h = 1e-5;
      const Mat3 rdot =
          (oracle::expm(oracle::skew_of(a + h * w)) - oracle::expm(oracle::skew_of(a - h * w))) / (2 * h);
      CHECK(kinetic_rotational(a, w, p) ==
            doctest::Approx(p.rho_rot * rdot.squaredNorm()).epsilon(1e-8));
    }
  }
}

TEST_SUITE("density properties") {
  TEST_CASE("frame indifference") {
    const MaterialParams p;
    std::mt19937_64 rng(10);
    for (int s = 0; s < 500; ++s) {
      const Mat3 f = Mat3::Identity() + 0.3 * oracle::random_mat(rng);
      const Mat3 r = oracle::random_rotation(rng);
      const Mat3 q = oracle::random_rotation(rng);
      CHECK(std::abs(v_elastic(q * f, q * r, p) - v_elastic(f, r, p)) < 1e-12);
      CHECK(std::abs(v_coupling_full(q * f, q * r, p) - v_coupling_full(f, r, p)) < 1e-12);
    }
  }

  TEST_CASE("nonnegativity") {
    const MaterialParams p;
    std::mt19937_64 rng(12);
    for (int s = 0; s < 1000; ++s) {
      const Mat3 m = 2.0 * oracle::random_mat(rng);
      const Mat3 r = oracle::random_rotation(rng);
      Mat3 f = Mat3::Identity() + 0.5 * oracle::random_mat(rng);
      CHECK(v_elastic(m, r, p) >= 0.0);
      CHECK(v_elastic_linear(m, p) >= 0.0);
      CHECK(v_curvature(m, p) >= 0.0);
      CHECK(v_coupling_model2(m, r, p) >= 0.0);
      if (f.determinant() > 0) CHECK(v_coupling_full(f, r, p) >= 0.0);
    }
  }
}

TEST_SUITE("integrals") {
  TEST_CASE("zero fields") {
    Grid3 g;
    g.counts = {5, 6, 7};
    g.spacing = {0.1, 0.2, 0.3};
    const FieldGrid3 f = FieldGrid3::zeros(g);
    const MaterialParams p;
    for (Model m : {Model::full, Model::linearized})
      for (Functional fn : {Functional::potential, Functional::potential_minus_kinetic, Functional::total})
        CHECK(total_energy(f, p, m, fn) == 0.0);
    for (const Vec3& r : displacement_eom_rhs(f, p).values) CHECK(r.norm() == 0.0);
  }

  TEST_CASE("uniform rotation: only the coupling term contributes") {
    Grid3 g;
    g.counts = {5, 6, 7};
    g.spacing = {0.1, 0.2, 0.3};
    FieldGrid3 f = FieldGrid3::zeros(g);
    const Vec3 a(0.3, -0.5, 0.8);
    std::fill(f.a.begin(), f.a.end(), a);
    const MaterialParams p;
    const double volume = 0.4 * 1.0 * 1.8;
    const double e = total_energy(f, p, Model::linearized, Functional::total);
    CHECK(e == doctest::Approx(volume * 4 * p.mu_c * (1 - std::cos(a.norm()))).epsilon(1e-13));
    for (const DensityTerms& t : density_terms(f, p, Model::linearized)) {
      CHECK(t.elastic == 0.0);
      CHECK(std::abs(t.curvature) < 1e-28);
      CHECK(std::abs(t.interaction) < 1e-14);
      CHECK(t.kinetic == 0.0);
    }
  }

  TEST_CASE("invalid field arrays are rejected") {
    Grid3 g;
    FieldGrid3 f = FieldGrid3::zeros(g);
    f.a.pop_back();
    CHECK_THROWS_AS(total_energy(f, MaterialParams{}, Model::full), DomainError);
  }

  TEST_CASE("longitudinal fields integrate to the reduced energy") {
    const MaterialParams p;
    const auto s = reduced::make_soliton(0.5, p, reduced::Branch::kink);
    const double half = 10.0 / s.k;
    auto mismatch = [&](int n) {
      const FieldGrid3 f = longitudinal(n, -half, half, s);
      const double area = 16 * f.grid.spacing[0] * f.grid.spacing[1];
      const double e3 = total_energy(f, p, Model::linearized, Functional::total) / area;
      const double e1 = reduced::reduced_energy(reduced_samples(n, -half, half, s), p);
      return std::abs(e3 - e1) / std::abs(e1);
    };
    const double coarse = mismatch(201);
    const double fine = mismatch(401);
    CHECK(fine < 2e-3);
    CHECK(std::log2(coarse / fine) > 1.8);
  }
}

TEST_SUITE("displacement equation") {
  TEST_CASE("quadratic displacement with no rotation: classical elasticity") {
    MaterialParams p;
    p.mu = 1.3;
    p.lambda = 0.7;
    p.mu_c = 0.4;
    std::mt19937_64 rng(14);
    std::array<Mat3, 3> q{};
    std::array<Vec3, 3> b{};
    for (int i = 0; i < 3; ++i) {
      q[i] = oracle::random_mat(rng);
      b[i] = oracle::random_vec(rng, -1, 1);
    }
    Grid3 g;
    g.counts = {6, 5, 7};
    g.spacing = {0.3, 0.2, 0.25};
    g.origin = Vec3(-0.4, 0.1, 0.2);
    FieldGrid3 f = FieldGrid3::zeros(g);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 7; ++k) {
          const Vec3 x = g.point(i, j, k);
          Vec3 u;
          for (int c = 0; c < 3; ++c) u[c] = x.dot(q[c] * x) + b[c].dot(x);
          f.u[g.index(i, j, k)] = u;
        }
    // Lap u_i = 2 tr Q_i, (grad div u)_i = sum_j (Q_j + Q_j^T)_ji.
    Vec3 lap, grad_div;
    for (int i = 0; i < 3; ++i) {
      lap[i] = 2 * q[i].trace();
      grad_div[i] = 0.0;
      for (int j = 0; j < 3; ++j) grad_div[i] += q[j](j, i) + q[j](i, j);
    }
    const Vec3 expected = (p.mu + p.mu_c) * lap + (p.mu + p.lambda - p.mu_c) * grad_div;
    const VectorField rhs = displacement_eom_rhs(f, p);
    const VectorField rhs2 = displacement_eom_rhs_divergence_form(f, p);
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
      CHECK((rhs.values[i] - expected).cwiseAbs().maxCoeff() < 1e-11);
      CHECK((rhs2.values[i] - expected).cwiseAbs().maxCoeff() < 1e-11);
    }
  }

  TEST_CASE("longitudinal fields: third component matches the reduced psi equation") {
    const MaterialParams p;
    const auto s = reduced::make_soliton(0.5, p, reduced::Branch::kink);
    const double half = 8.0 / s.k;
    auto mismatch = [&](int n) {
      const FieldGrid3 f = longitudinal(n, -half, half, s);
      const VectorField rhs = displacement_eom_rhs(f, p);
      const ReducedState st = reduced_samples(n, -half, half, s);
      const reduced::Accelerations acc = reduced::reduced_rhs(st, p);
      const auto m = reduced::coupling_matrix(p);
      double err = 0.0, scale = 0.0, ortho = 0.0;
      for (int k = 2; k < n - 2; ++k) {
        const Vec3 r = rhs(2, 2, k) / p.rho;
        const auto jet = reduced::soliton_jet(st.grid.z(k), 0.0, s);
        err = std::max(err, std::abs(r[2] - acc.psi_tt[k]));
        scale = std::max(scale, std::abs(m.m21 * jet.phi_zz) + std::abs(m.m22 * jet.psi_zz));
        ortho = std::max(ortho, std::max(std::abs(r[0]), std::abs(r[1])));
      }
      CHECK(ortho < 1e-10);
      return err / scale;
    };
    const double coarse = mismatch(129);
    const double fine = mismatch(257);
    CHECK(fine < 5e-3);
    CHECK(std::log2(coarse / fine) > 1.8);
  }
}
