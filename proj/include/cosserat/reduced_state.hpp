#pragma once

#include "cosserat/params.hpp"

#include <vector>

namespace cosserat {

enum class BoundaryMode {
  /// End nodes pinned to fixed values (the soliton's asymptotic states).
  dirichlet,
  /// Quasi-periodic wrap: f(z + L) = f(z) + jump. A jump of 2 pi in phi
  /// carries a kink around the ring; zero jumps give plain periodicity.
  periodic,
};

/// Uniform 1D grid along the propagation axis.
///
/// Dirichlet grids include both end points, dz = (z_max - z_min) / (n - 1).
/// Periodic grids exclude z_max (it is identified with z_min),
/// dz = (z_max - z_min) / n.
struct Grid1 {
  int n = 0;
  double z_min = 0.0;
  double z_max = 1.0;
  BoundaryMode mode = BoundaryMode::dirichlet;

  static constexpr int kMinPoints = 5;

  void validate() const;
  double length() const { return z_max - z_min; }
  double dz() const;
  double z(int i) const { return z_min + i * dz(); }
};

struct BoundaryValues {
  // Dirichlet values at z_min / z_max.
  double phi_left = 0.0;
  double phi_right = 0.0;
  double psi_left = 0.0;
  double psi_right = 0.0;
  // Quasi-periodic offsets f(z + L) - f(z).
  double phi_jump = 0.0;
  double psi_jump = 0.0;
};

/// Rotation angle phi(z, t) about the propagation axis and axial displacement
/// psi(z, t), with their time derivatives, sampled on a Grid1.
struct ReducedState {
  Grid1 grid;
  BoundaryValues boundary;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<double> phi_t;
  std::vector<double> psi_t;
  double t = 0.0;

  /// Zero fields on `grid` with default boundary values.
  static ReducedState zeros(const Grid1& grid);

  /// Throws DomainError on size mismatch, an invalid grid or non-finite entries.
  void validate() const;
};

}  // namespace cosserat
