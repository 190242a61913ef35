#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cosserat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid, non-orthogonal
/// rotation, reflection in a deformation gradient, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Constitutive constants of the micropolar medium.
///
/// Units are whatever the caller chooses consistently; `mu`, `lambda`, `mu_c`
/// are moduli, `kappa*` and `chi*` are force-like curvature/coupling moduli,
/// `rho` is the mass density and `rho_rot` the rotational inertia density.
struct MaterialParams {
  double mu = 1.0;
  double lambda = 1.0;
  double mu_c = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 0.5;
  double kappa3 = 0.25;
  double chi1 = 0.2;
  double chi3 = 0.1;
  double rho = 1.0;
  double rho_rot = 1.0;

  /// Throws DomainError unless mu > 0, 3 lambda + 2 mu > 0, mu_c >= 0,
  /// kappa_i >= 0, rho > 0 and rho_rot > 0. The energy evaluators do not call
  /// this (term-isolation checks zero out moduli on purpose); the dynamics
  /// and the CLI do.
  void validate() const;

  /// Access by the configuration key name ("mu", "lambda", "mu_c", "kappa1",
  /// ..., "rho_rot"). Throws DomainError on an unknown name.
  double& at(std::string_view name);
  double at(std::string_view name) const;

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

inline constexpr std::string_view kMaterialKeys[] = {
    "mu", "lambda", "mu_c", "kappa1", "kappa2",
    "kappa3", "chi1", "chi3", "rho", "rho_rot"};

}  // namespace cosserat
