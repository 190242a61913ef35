#pragma once

#include "cosserat/tensor.hpp"

namespace cosserat::kinematics {

/// Below this rotation angle the Rodrigues-type coefficients are evaluated
/// from their Taylor series instead of the closed forms.
inline constexpr double kSmallAngle = 1e-4;

struct CartanParts {
  Mat3 dev_sym;
  Mat3 skew;
  double trace = 0.0;

  Mat3 recompose() const { return dev_sym + skew + (trace / 3.0) * Mat3::Identity(); }
};

/// Split M into its trace-free symmetric, antisymmetric and trace parts.
CartanParts cartan_decompose(const Mat3& m);

/// A_ij = eps_ikj a_k, so a = (0, 0, phi) gives [[0, -phi, 0], [phi, 0, 0], [0, 0, 0]].
Mat3 axial_to_skew(const Vec3& a);

/// Inverse of axial_to_skew. Throws DomainError if |A + A^T| exceeds
/// `tolerance` (scaled by max(1, |A|)).
Vec3 skew_to_axial(const Mat3& a, double tolerance = 1e-12);

/// exp of the skew matrix generated by `a` (Rodrigues formula).
Mat3 rotation_exp(const Vec3& a);

/// Derivative of rotation_exp with respect to the axial vector:
/// out(i, j, k) = dR_ij / da_k.
///
/// Closed form with coefficients (a cos a - sin a)/a^3, sin a / a,
/// (2(cos a - 1) + a sin a)/a^4 and (1 - cos a)/a^2; the coefficients switch
/// to their Taylor series for a < kSmallAngle, so a = 0 returns eps_ikj.
Rank3 rotation_variation(const Vec3& a);

struct PolarParts {
  Mat3 rotation;  ///< orthogonal factor, det +1
  Mat3 stretch;   ///< symmetric positive definite factor, F = rotation * stretch
  int iterations = 0;
};

/// Polar decomposition F = R U by the orthogonalising iteration
/// X <- (X + X^{-T}) / 2, run until the relative update falls below 1e-14.
/// Throws DomainError if det F <= 0.
PolarParts polar_decompose(const Mat3& f);

/// True if |R^T R - 1| and |det R - 1| are both below `tolerance`.
bool is_rotation(const Mat3& r, double tolerance = 1e-10);

}  // namespace cosserat::kinematics
