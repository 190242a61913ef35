#pragma once

#include "cosserat/params.hpp"
#include "cosserat/tensor.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

namespace cosserat {

/// Regular Cartesian sample lattice. Point (i, j, k) sits at
/// origin + (i hx, j hy, k hz).
struct Grid3 {
  std::array<int, 3> counts{5, 5, 5};
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  Vec3 origin = Vec3::Zero();

  /// Minimum per-axis count: the one-sided boundary stencils need three
  /// points and the composed second-derivative needs five.
  static constexpr int kMinCount = 5;

  /// Throws DomainError if any count < 5 or any spacing <= 0.
  void validate() const;

  std::size_t size() const {
    return static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * counts[1] + j) * counts[2] + k;
  }
  Vec3 point(int i, int j, int k) const {
    return origin + Vec3(i * spacing[0], j * spacing[1], k * spacing[2]);
  }

  /// Tensor-product trapezoidal weight of point (i, j, k), including the cell
  /// volume.
  double trapezoid_weight(int i, int j, int k) const;
};

template <class T>
struct GridField {
  Grid3 grid;
  std::vector<T> values;

  GridField() = default;
  GridField(const Grid3& g, const T& fill) : grid(g), values(g.size(), fill) {}
  GridField(const Grid3& g, std::vector<T> v) : grid(g), values(std::move(v)) {}

  T& operator()(int i, int j, int k) { return values[grid.index(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return values[grid.index(i, j, k)]; }
};

using ScalarField = GridField<double>;
using VectorField = GridField<Vec3>;
using MatrixField = GridField<Mat3>;

/// Sample `fn` at every grid point.
template <class T>
GridField<T> sample(const Grid3& grid, const std::function<T(const Vec3&)>& fn) {
  grid.validate();
  GridField<T> out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (int i = 0; i < grid.counts[0]; ++i)
    for (int j = 0; j < grid.counts[1]; ++j)
      for (int k = 0; k < grid.counts[2]; ++k) out(i, j, k) = fn(grid.point(i, j, k));
  return out;
}

template <class T, class Fn>
auto map_field(const GridField<T>& in, Fn&& fn) {
  using U = std::decay_t<decltype(fn(in.values.front()))>;
  GridField<U> out;
  out.grid = in.grid;
  out.values.reserve(in.values.size());
  for (const T& v : in.values) out.values.push_back(fn(v));
  return out;
}

namespace stencil {

/// First derivative along `axis`: second-order central differences in the
/// interior, second-order one-sided differences on the two boundary layers.
ScalarField partial(const ScalarField& f, int axis);
VectorField partial(const VectorField& f, int axis);
MatrixField partial(const MatrixField& f, int axis);

/// (grad f)_i = d_i f
VectorField gradient(const ScalarField& f);
/// (grad u)_ij = d_j u_i
MatrixField gradient(const VectorField& u);
/// div u = d_i u_i
ScalarField divergence(const VectorField& u);

}  // namespace stencil

namespace kinematics {

/// (Curl M)_ij = d_k M_il eps_klj, i.e. curl applied to the rows of M.
MatrixField matrix_curl(const MatrixField& m);

/// (Div M)_i = d_j M_ij, divergence applied to the rows of M.
VectorField matrix_div(const MatrixField& m);

/// Pointwise R^T Curl R. Throws DomainError if a sample is not a rotation
/// to 1e-10.
MatrixField dislocation_curvature(const MatrixField& rotations);

}  // namespace kinematics

}  // namespace cosserat
