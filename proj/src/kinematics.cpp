#include "cosserat/kinematics.hpp"

#include "cosserat/params.hpp"

#include <Eigen/LU>

#include <cmath>
#include <string>

namespace cosserat::kinematics {

namespace {

// sin a / a and (1 - cos a) / a^2
struct RodriguesCoefficients {
  double sinc;
  double cosc;
};

RodriguesCoefficients rodrigues(double angle) {
  if (angle < kSmallAngle) {
    const double a2 = angle * angle;
    return {1.0 - a2 / 6.0 + a2 * a2 / 120.0, 0.5 - a2 / 24.0 + a2 * a2 / 720.0};
  }
  const double half = std::sin(0.5 * angle) / angle;
  return {std::sin(angle) / angle, 2.0 * half * half};
}

}  // namespace

CartanParts cartan_decompose(const Mat3& m) {
  return {dev(sym(m)), skew(m), m.trace()};
}

Mat3 axial_to_skew(const Vec3& a) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = 0.0;
      for (int k = 0; k < 3; ++k) v += levi_civita(i, k, j) * a(k);
      out(i, j) = v;
    }
  return out;
}

Vec3 skew_to_axial(const Mat3& a, double tolerance) {
  const double asym = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (asym > tolerance * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw DomainError("skew_to_axial: matrix is not antisymmetric");
  return {0.5 * (a(2, 1) - a(1, 2)), 0.5 * (a(0, 2) - a(2, 0)), 0.5 * (a(1, 0) - a(0, 1))};
}

Mat3 rotation_exp(const Vec3& a) {
  const auto [sinc, cosc] = rodrigues(a.norm());
  const Mat3 skew_a = axial_to_skew(a);
  return Mat3::Identity() + sinc * skew_a + cosc * (skew_a * skew_a);
}

Rank3 rotation_variation(const Vec3& a) {
  const double angle = a.norm();
  const double a2 = angle * angle;
  const auto [sinc, cosc] = rodrigues(angle);

  // (a cos a - sin a) / a^3 and (2(cos a - 1) + a sin a) / a^4
  double c1 = 0.0;
  double c3 = 0.0;
  if (angle < kSmallAngle) {
    c1 = -1.0 / 3.0 + a2 / 30.0 - a2 * a2 / 840.0;
    c3 = -1.0 / 12.0 + a2 / 180.0 - a2 * a2 / 6720.0;
  } else {
    const double s = std::sin(angle);
    const double c = std::cos(angle);
    const double half = std::sin(0.5 * angle);
    c1 = (angle * c - s) / (a2 * angle);
    c3 = (-4.0 * half * half + angle * s) / (a2 * a2);
  }

  auto delta = [](int i, int j) { return i == j ? 1.0 : 0.0; };

  Rank3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double first = 0.0;
        for (int l = 0; l < 3; ++l) first += a(k) * a(l) * levi_civita(i, l, j);
        out(i, j, k) = c1 * first + sinc * levi_civita(i, k, j) +
                       c3 * a(k) * (a(i) * a(j) - a2 * delta(i, j)) +
                       cosc * (a(i) * delta(j, k) + a(j) * delta(i, k) -
                               2.0 * a(k) * delta(i, j));
      }
  return out;
}

PolarParts polar_decompose(const Mat3& f) {
  const double det = f.determinant();
  if (!(det > 0.0) || !std::isfinite(det))
    throw DomainError("polar_decompose: det F must be positive (singular or reflection)");

  constexpr double kTolerance = 1e-14;
  constexpr int kMaxIterations = 100;

  Mat3 x = f;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const Mat3 inv_t = x.inverse().transpose();
    // Frobenius-norm scaling while far from convergence; plain iteration after.
    double gamma = 1.0;
    const double change_estimate = (x - inv_t).norm() / x.norm();
    if (change_estimate > 1e-2) gamma = std::sqrt(inv_t.norm() / x.norm());
    const Mat3 next = 0.5 * (gamma * x + inv_t / gamma);
    const double update = (next - x).norm() / next.norm();
    x = next;
    if (update <= kTolerance) {
      return {x, sym(x.transpose() * f), it};
    }
  }
  // Rounding can stall the relative update just above 1e-14; accept a result
  // that is orthogonal to working precision.
  if ((x.transpose() * x - Mat3::Identity()).norm() < 1e-13)
    return {x, sym(x.transpose() * f), kMaxIterations};
  throw DomainError("polar_decompose: iteration did not converge");
}

bool is_rotation(const Mat3& r, double tolerance) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() <= tolerance &&
         std::abs(r.determinant() - 1.0) <= tolerance;
}

}  // namespace cosserat::kinematics
