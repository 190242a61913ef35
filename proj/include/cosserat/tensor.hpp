#pragma once

#include <Eigen/Core>

#include <array>

namespace cosserat {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Levi-Civita symbol on 0-based indices, eps(0,1,2) = +1.
///
/// The whole library uses this one table; the skew map is A_ij = eps_ikj a_k.
constexpr double levi_civita(int i, int j, int k) noexcept {
  return 0.5 * static_cast<double>((i - j) * (j - k) * (k - i));
}

/// Dense 3x3x3 array indexed (i, j, k).
class Rank3 {
 public:
  double& operator()(int i, int j, int k) { return data_[9 * i + 3 * j + k]; }
  double operator()(int i, int j, int k) const { return data_[9 * i + 3 * j + k]; }

  /// Matrix slice with the last index fixed: out(i, j) = (*this)(i, j, k).
  Mat3 slice(int k) const {
    Mat3 out;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out(i, j) = (*this)(i, j, k);
    return out;
  }

  /// Contraction over the last index: out(i, j) = sum_k (*this)(i, j, k) v_k.
  Mat3 contract(const Vec3& v) const {
    Mat3 out = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) out(i, j) += (*this)(i, j, k) * v(k);
    return out;
  }

  const std::array<double, 27>& data() const { return data_; }

 private:
  std::array<double, 27> data_{};
};

inline Mat3 sym(const Mat3& m) { return 0.5 * (m + m.transpose()); }
inline Mat3 skew(const Mat3& m) { return 0.5 * (m - m.transpose()); }
inline Mat3 dev(const Mat3& m) { return m - (m.trace() / 3.0) * Mat3::Identity(); }

/// Frobenius inner product <a, b> = tr(a^T b).
inline double frobenius(const Mat3& a, const Mat3& b) {
  return (a.array() * b.array()).sum();
}

}  // namespace cosserat
