#pragma once

#include "cosserat/params.hpp"
#include "cosserat/reduced.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cosserat::verify {

/// Outcome of one numerical check. `error` is the quantity compared against
/// `tolerance`; passed == (error <= tolerance).
struct CheckReport {
  std::string name;
  double error = 0.0;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

/// One JSON object per line, keys name, error, max_abs_error, max_rel_error,
/// tolerance, passed, metadata. Doubles round-trip exactly; NaN is written
/// as null.
std::string to_json_line(const CheckReport& r);
CheckReport from_json_line(const std::string& line);

/// Deliberate corruption of the construction side of a check, used to show
/// that the checks can fail. `param` (a material key, empty for none) is
/// scaled by `factor`; flip_m21 negates the psi amplitude of the soliton.
struct Fault {
  std::string param;
  double factor = 1.0;
  bool flip_m21 = false;

  bool active() const { return !param.empty() || flip_m21; }
  MaterialParams apply(const MaterialParams& p) const;
};

/// dR/da from kinematics against central differences of rotation_exp, over
/// `samples` random axial vectors with |a| in (0, 2 pi) plus fixed samples
/// near 0 and near 2 pi. Tolerance 1e-7 absolute.
CheckReport check_rotation_variation(int samples = 1000, std::uint64_t seed = 1);

/// Log-log slopes of the small-strain residuals over eps in {1e-1, 1e-2, 1e-3}:
/// O(eps^2) for tr, sym and full R^T F - 1, the stretch U, the polar factor,
/// the interaction energy; O(eps^3) for the elastic and coupling energies.
/// error = max |slope - expected|, tolerance 0.2.
CheckReport check_linearization_chain(std::uint64_t seed = 1);

/// Central-difference gradient of the discretised small-displacement
/// potential with respect to interior displacement values against
/// -cell_volume * displacement_eom_rhs, on an n^3 grid with smooth random
/// fields. Relative tolerance 1e-6. The energy is summed with unit weights
/// over points 1..n-2 of each axis and u is perturbed at points 2..n-3; on
/// that set the discrete gradient and the stencil operator coincide exactly.
CheckReport check_displacement_eom(const MaterialParams& p, int n = 7, std::uint64_t seed = 1,
                                   const Fault& fault = {});

/// Term-isolated displacement checks: mu, lambda, mu_c, chi1, chi3 alone and
/// all together. Aggregated into one report.
CheckReport check_displacement_eom_isolated(int n = 7, std::uint64_t seed = 1,
                                            const Fault& fault = {});

enum class Profile { constant_linear, gaussian, soliton };

std::string to_string(Profile p);

/// Builds 3D fields u = (0, 0, psi(z)), a = (0, 0, phi(z)) and compares
///  * components 1 and 2 of displacement_eom_rhs with 0 (tolerance 1e-10),
///  * the dislocation curvature with diag(phi_z, phi_z, 0),
///  * component 3 with (lambda + 2 mu) psi_zz + (2/3)(3 chi1 - chi3) phi_zz
///    evaluated from exact derivatives,
/// on interior z nodes at n and 2n points. Passes if the orthogonal
/// components vanish, the relative error at 2n is below 2e-3 and the
/// observed order is at least 1.8 (or both errors are at round-off).
CheckReport check_ansatz_reduction(const MaterialParams& p, Profile profile, int n = 128,
                                   const Fault& fault = {});

/// Inserts the closed-form soliton into the reduced equations.
///  * exact derivatives: pointwise residual < 1e-10 (the reported error),
///  * stencil derivatives: observed order of the residual at n, 2n recorded
///    in the metadata ("fd_order") and required to lie in [1.8, 2.2].
/// The soliton is built from fault.apply(p); the residual uses p.
CheckReport check_soliton_residual(const MaterialParams& p, double v, reduced::Branch branch,
                                   const Fault& fault = {});

/// Relative dispersion residual of wave_number over `samples` random speeds
/// inside the admissible windows (tolerance 1e-12), and solve_velocity with
/// mu_c = 0 returning the eigenvalues of M.
CheckReport check_dispersion(const MaterialParams& p, int samples = 1000,
                             std::uint64_t seed = 1, const Fault& fault = {});

/// Pointwise agreement (1e-10 relative) of the two assembled forms of the
/// displacement equation on random smooth fields.
CheckReport check_eom_forms(const MaterialParams& p, int n = 9, std::uint64_t seed = 1);

/// Every check at default material parameters.
std::vector<CheckReport> run_all(std::uint64_t seed = 1, const Fault& fault = {});

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace cosserat::verify
