#include "cosserat/grid.hpp"

#include "cosserat/kinematics.hpp"

#include <string>

namespace cosserat {

void Grid3::validate() const {
  for (int axis = 0; axis < 3; ++axis) {
    if (counts[axis] < kMinCount)
      throw DomainError("grid too small: axis " + std::to_string(axis) + " has " +
                        std::to_string(counts[axis]) + " points, need at least " +
                        std::to_string(kMinCount));
    if (!(spacing[axis] > 0.0))
      throw DomainError("grid spacing must be positive on axis " + std::to_string(axis));
  }
}

double Grid3::trapezoid_weight(int i, int j, int k) const {
  const int idx[3] = {i, j, k};
  double w = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    const bool edge = idx[axis] == 0 || idx[axis] == counts[axis] - 1;
    w *= (edge ? 0.5 : 1.0) * spacing[axis];
  }
  return w;
}

namespace stencil {

namespace {

template <class T>
GridField<T> partial_impl(const GridField<T>& f, int axis) {
  const Grid3& g = f.grid;
  g.validate();
  const int n = g.counts[axis];
  const double inv2h = 0.5 / g.spacing[axis];
  GridField<T> out;
  out.grid = g;
  out.values.resize(f.values.size());

  for (int i = 0; i < g.counts[0]; ++i)
    for (int j = 0; j < g.counts[1]; ++j)
      for (int k = 0; k < g.counts[2]; ++k) {
        int idx[3] = {i, j, k};
        const int m = idx[axis];
        auto at = [&](int shifted) -> const T& {
          idx[axis] = shifted;
          return f(idx[0], idx[1], idx[2]);
        };
        T d;
        if (m == 0) {
          d = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h;
        } else if (m == n - 1) {
          d = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * inv2h;
        } else {
          d = (at(m + 1) - at(m - 1)) * inv2h;
        }
        out(i, j, k) = d;
      }
  return out;
}

}  // namespace

ScalarField partial(const ScalarField& f, int axis) { return partial_impl(f, axis); }
VectorField partial(const VectorField& f, int axis) { return partial_impl(f, axis); }
MatrixField partial(const MatrixField& f, int axis) { return partial_impl(f, axis); }

VectorField gradient(const ScalarField& f) {
  VectorField out(f.grid, Vec3::Zero());
  for (int axis = 0; axis < 3; ++axis) {
    const ScalarField d = partial(f, axis);
    for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p](axis) = d.values[p];
  }
  return out;
}

MatrixField gradient(const VectorField& u) {
  MatrixField out(u.grid, Mat3::Zero());
  for (int axis = 0; axis < 3; ++axis) {
    const VectorField d = partial(u, axis);
    for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p].col(axis) = d.values[p];
  }
  return out;
}

ScalarField divergence(const VectorField& u) {
  ScalarField out(u.grid, 0.0);
  for (int axis = 0; axis < 3; ++axis) {
    const VectorField d = partial(u, axis);
    for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p] += d.values[p](axis);
  }
  return out;
}

}  // namespace stencil

namespace kinematics {

MatrixField matrix_curl(const MatrixField& m) {
  MatrixField out(m.grid, Mat3::Zero());
  for (int axis = 0; axis < 3; ++axis) {
    const MatrixField d = stencil::partial(m, axis);
    for (std::size_t p = 0; p < out.values.size(); ++p) {
      Mat3& c = out.values[p];
      const Mat3& dm = d.values[p];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            const double e = levi_civita(axis, l, j);
            if (e != 0.0) c(i, j) += e * dm(i, l);
          }
    }
  }
  return out;
}

VectorField matrix_div(const MatrixField& m) {
  VectorField out(m.grid, Vec3::Zero());
  for (int axis = 0; axis < 3; ++axis) {
    const MatrixField d = stencil::partial(m, axis);
    for (std::size_t p = 0; p < out.values.size(); ++p) out.values[p] += d.values[p].col(axis);
  }
  return out;
}

MatrixField dislocation_curvature(const MatrixField& rotations) {
  for (const Mat3& r : rotations.values)
    if (!is_rotation(r, 1e-10))
      throw DomainError("dislocation_curvature: sample is not a rotation");
  const MatrixField curl = matrix_curl(rotations);
  MatrixField out(rotations.grid, Mat3::Zero());
  for (std::size_t p = 0; p < out.values.size(); ++p)
    out.values[p] = rotations.values[p].transpose() * curl.values[p];
  return out;
}

}  // namespace kinematics

}  // namespace cosserat
