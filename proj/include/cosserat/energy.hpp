#pragma once

#include "cosserat/grid.hpp"
#include "cosserat/params.hpp"
#include "cosserat/tensor.hpp"

#include <vector>

namespace cosserat::energy {

/// Displacement and microrotation fields on a 3D lattice.
///
/// `u` is the displacement, `a` the axial vector of the microrotation
/// (R = exp(A), A_ij = eps_ikj a_k); the dotted fields are their rates.
struct FieldGrid3 {
  Grid3 grid;
  std::vector<Vec3> u;
  std::vector<Vec3> a;
  std::vector<Vec3> u_dot;
  std::vector<Vec3> a_dot;

  /// All four arrays zero-filled to grid.size().
  static FieldGrid3 zeros(const Grid3& grid);

  /// Throws DomainError if the grid is invalid or an array has the wrong size.
  void validate() const;

  VectorField displacement() const { return {grid, u}; }
  MatrixField rotations() const;
};

/// mu |sym(R^T F) - 1|^2 + lambda/2 tr(sym(R^T F) - 1)^2
double v_elastic(const Mat3& f, const Mat3& r, const MaterialParams& p);

/// Small-displacement form mu |sym G|^2 + lambda/2 tr(G)^2 with G = grad u.
double v_elastic_linear(const Mat3& grad_u, const MaterialParams& p);

/// kappa1 |dev sym K|^2 + kappa2 |skew K|^2 + kappa3 tr(K)^2, K = R^T Curl R.
double v_curvature(const Mat3& k, const MaterialParams& p);

enum class InteractionForm {
  /// chi1 tr(K) tr(R^T F) + chi3 <dev sym K, dev sym E>, with E = R^T F - 1.
  /// tr(R^T F) is recovered as tr(E) + 3.
  full,
  /// chi1 tr(K) tr(G) + chi3 <dev sym K, dev sym G>, with G = grad u.
  linearized,
};

double v_interaction(const Mat3& k, const Mat3& e, const MaterialParams& p,
                     InteractionForm form);

/// mu_c |R^T polar(F) - 1|^2. Throws DomainError if det F <= 0.
double v_coupling_full(const Mat3& f, const Mat3& r, const MaterialParams& p);

/// mu_c |skew(grad u) - (R - 1)|^2. Note the second argument is R - 1, not
/// its skew part.
double v_coupling_model2(const Mat3& grad_u, const Mat3& r, const MaterialParams& p);

/// rho/2 |u_dot|^2
double kinetic_translational(const Vec3& u_dot, const MaterialParams& p);

/// rho_rot tr(R_dot^T R_dot), with R_dot = (dR/da) a_dot.
double kinetic_rotational(const Vec3& a, const Vec3& a_dot, const MaterialParams& p);

enum class Model {
  /// Finite-strain energies: V_elastic(F, R), V_curvature, full interaction,
  /// V_coupling through the polar factor of F.
  full,
  /// Small displacements, arbitrary rotations: linear elasticity, the exact
  /// curvature energy, linearised interaction, mu_c |skew grad u - (R - 1)|^2.
  linearized,
};

enum class Functional {
  potential,                ///< V only
  potential_minus_kinetic,  ///< V - T
  total,                    ///< V + T (conserved by the dynamics)
};

struct DensityTerms {
  double elastic = 0.0;
  double curvature = 0.0;
  double interaction = 0.0;
  double coupling = 0.0;
  double kinetic = 0.0;

  double potential() const { return elastic + curvature + interaction + coupling; }
};

/// Per-point energy density terms. Gradients come from the second-order
/// first-derivative stencils of the grid.
std::vector<DensityTerms> density_terms(const FieldGrid3& f, const MaterialParams& p,
                                        Model model);

/// Trapezoidal volume integral of the selected functional.
double total_energy(const FieldGrid3& f, const MaterialParams& p, Model model,
                    Functional functional = Functional::potential);

/// Right-hand side of rho u_tt = ... for the small-displacement model:
///
///   (mu + mu_c) Lap u + (mu + lambda - mu_c) grad div u + chi1 grad tr K
///   + chi3 Div dev sym K - 2 mu_c Div skew R,   K = R^T Curl R.
///
/// Lap and grad div are built by composing the first-derivative stencil, which
/// makes the interior operator the exact negative adjoint of the discrete
/// energy gradient (see verify::check_displacement_eom).
VectorField displacement_eom_rhs(const FieldGrid3& f, const MaterialParams& p);

/// The same right-hand side assembled in divergence form,
///
///   Div[2 mu sym G + lambda tr(G) 1 + 2 mu_c skew(G - (R - 1))]
///   + chi1 grad tr K + chi3 Div dev sym K,   G = grad u.
VectorField displacement_eom_rhs_divergence_form(const FieldGrid3& f, const MaterialParams& p);

}  // namespace cosserat::energy
