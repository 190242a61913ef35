#pragma once

#include "cosserat/params.hpp"
#include "cosserat/reduced_state.hpp"

#include <array>
#include <string>
#include <vector>

namespace cosserat::reduced {

/// Coefficients of the longitudinal system
///   (phi_tt, psi_tt) = M (phi_zz, psi_zz) - (mu_c / rho_rot) (sin phi, 0).
struct CouplingMatrix {
  double m11 = 0.0;  ///< (kappa1 + 6 kappa3) / (3 rho_rot) = v_rot^2
  double m12 = 0.0;  ///< (3 chi1 - chi3) / (6 rho_rot)
  double m21 = 0.0;  ///< 2 (3 chi1 - chi3) / (3 rho)
  double m22 = 0.0;  ///< (lambda + 2 mu) / rho = v_elas^2

  double trace() const { return m11 + m22; }
  double det() const { return m11 * m22 - m12 * m21; }
  double v_rot2() const { return m11; }
  double v_elas2() const { return m22; }
};

CouplingMatrix coupling_matrix(const MaterialParams& p);

struct ReducedParams {
  MaterialParams material;
  CouplingMatrix m;
  double m2 = 0.0;  ///< mu_c / rho_rot

  static ReducedParams from(const MaterialParams& p);
};

/// Thrown when the coupling matrix has a non-positive eigenvalue.
class NotHyperbolicError : public Error {
 public:
  using Error::Error;
};

struct Eigenvalues {
  double slow = 0.0;
  double fast = 0.0;
};

/// Eigenvalues of M (always real since m12 m21 >= 0), without sign checks.
Eigenvalues eigenvalues(const CouplingMatrix& m);

/// Eigenvalues of M; throws NotHyperbolicError if either is <= 0.
Eigenvalues hyperbolicity_check(const CouplingMatrix& m);

/// Right eigenvector of M for `eigenvalue`, normalised to unit length.
std::array<double, 2> eigenvector(const CouplingMatrix& m, double eigenvalue);

/// k^2 (v^4 - tr M v^2 + det M) - (v_elas^2 - v^2) mu_c / rho_rot
double dispersion_residual(double k, double v, const MaterialParams& p);

/// dispersion_residual divided by the sum of the magnitudes of its two terms
/// (0 when both vanish).
double dispersion_residual_relative(double k, double v, const MaterialParams& p);

enum class Branch { kink, antikink };

std::string to_string(Branch b);
Branch parse_branch(const std::string& s);

/// Right-hand side of the squared wave number,
///   k^2 = (v_elas^2 - v^2) / (v^4 - tr M v^2 + det M) * mu_c / rho_rot.
/// mu_c = 0 gives 0 for every v. Otherwise throws DomainError when the
/// denominator vanishes.
double wave_number_squared(double v, const MaterialParams& p);

struct SpeedWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Maximal speed intervals in [0, v_max] on which k^2 > 0, located by scanning
/// for sign changes of k^2(v) and bisecting each change. v_max <= 0 selects
/// 1.5 sqrt(fast eigenvalue).
std::vector<SpeedWindow> admissible_speed_windows(const MaterialParams& p, double v_max = 0.0,
                                                  int samples = 4096);

/// Raised when k^2 < 0 at the requested speed.
class NoSolitonError : public Error {
 public:
  NoSolitonError(const std::string& what, std::vector<SpeedWindow> windows)
      : Error(what), windows_(std::move(windows)) {}
  const std::vector<SpeedWindow>& windows() const { return windows_; }

 private:
  std::vector<SpeedWindow> windows_;
};

/// k = +sqrt(k^2) for a kink, -sqrt(k^2) for an antikink. mu_c = 0 gives
/// k = 0. Throws NoSolitonError (with the admissible windows) if k^2 < 0.
double wave_number(double v, const MaterialParams& p, Branch branch);

/// Nonnegative real roots v^2 of
///   k^2 v^4 - (k^2 tr M - m^2) v^2 + (k^2 det M - m^2 v_elas^2) = 0,
/// ascending. Throws DomainError when k = 0 and mu_c = 0 (every v solves it).
std::vector<double> solve_velocity(double k, const MaterialParams& p);

/// phi = 4 arctan exp(k (z - v t) + delta),
/// psi = amplitude_psi arctan exp(k (z - v t) + delta) + c1 + c2 (z - v t),
/// with amplitude_psi = -4 M21 / (v_elas^2 - v^2).
struct SolitonSolution {
  double k = 0.0;
  double v = 0.0;
  double delta = 0.0;
  Branch branch = Branch::kink;
  double amplitude_psi = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  /// Position of the phi = pi crossing at time t on the infinite line.
  double center(double t) const { return v * t - delta / k; }
};

/// Builds the closed-form pair for speed v. Throws DomainError if
/// v^2 = v_elas^2 and NoSolitonError if k^2 < 0.
SolitonSolution make_soliton(double v, const MaterialParams& p, Branch branch,
                             double delta = 0.0);

double soliton_phi(double z, double t, const SolitonSolution& s);
double soliton_psi(double z, double t, const SolitonSolution& s);

/// Field values with hand-differentiated derivatives.
struct SolitonJet {
  double phi, phi_z, phi_zz, phi_t, phi_tt;
  double psi, psi_z, psi_zz, psi_t, psi_tt;
  double sin_phi;
};

SolitonJet soliton_jet(double z, double t, const SolitonSolution& s);

struct Accelerations {
  std::vector<double> phi_tt;
  std::vector<double> psi_tt;
};

/// phi_tt = M11 phi_zz + M12 psi_zz - (mu_c / rho_rot) sin phi,
/// psi_tt = M21 phi_zz + M22 psi_zz, with the three-point second difference.
/// Dirichlet end nodes get zero acceleration.
Accelerations reduced_rhs(const ReducedState& state, const MaterialParams& p);

/// Same, writing into preallocated output (sizes must match the state).
void reduced_rhs(const ReducedState& state, const MaterialParams& p, Accelerations& out);

/// Spatial scale sqrt(v_rot^2 + M12 M21 / (v^2 - v_elas^2)) turning the phi
/// equation into phi_tt - phi_zhat zhat + m^2 sin phi = 0. Throws DomainError
/// if v^2 = v_elas^2 or the effective speed^2 is not positive.
double rescale_z(const MaterialParams& p, double v);

/// Energy density
///   2 rho_rot phi_t^2 + (2/3)(kappa1 + 6 kappa3) phi_z^2 + (rho/2) psi_t^2
///   + ((lambda + 2 mu)/2) psi_z^2 + (2/3)(3 chi1 - chi3) phi_z psi_z
///   + 4 mu_c (1 - cos phi),
/// conserved by the reduced system.
double reduced_energy_density(double phi, double phi_z, double phi_t, double psi_z,
                              double psi_t, const MaterialParams& p);

/// Integral of reduced_energy_density over the grid. Time derivatives and the
/// cos term use the trapezoidal rule on nodes; gradient terms use cell
/// differences (midpoint rule), which is the exact invariant of the
/// semi-discrete system.
double reduced_energy(const ReducedState& state, const MaterialParams& p);

}  // namespace cosserat::reduced
