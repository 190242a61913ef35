#include "cosserat/params.hpp"

#include <cmath>
#include <string>

namespace cosserat {

namespace {

double& material_field(MaterialParams& p, std::string_view name) {
  if (name == "mu") return p.mu;
  if (name == "lambda") return p.lambda;
  if (name == "mu_c") return p.mu_c;
  if (name == "kappa1") return p.kappa1;
  if (name == "kappa2") return p.kappa2;
  if (name == "kappa3") return p.kappa3;
  if (name == "chi1") return p.chi1;
  if (name == "chi3") return p.chi3;
  if (name == "rho") return p.rho;
  if (name == "rho_rot") return p.rho_rot;
  throw DomainError("unknown material parameter '" + std::string(name) + "'");
}

}  // namespace

void MaterialParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("invalid material parameters: ") + what);
  };
  require(mu > 0.0, "mu must be > 0");
  require(3.0 * lambda + 2.0 * mu > 0.0, "3 lambda + 2 mu must be > 0");
  require(mu_c >= 0.0, "mu_c must be >= 0");
  require(kappa1 >= 0.0 && kappa2 >= 0.0 && kappa3 >= 0.0, "kappa_i must be >= 0");
  require(rho > 0.0, "rho must be > 0");
  require(rho_rot > 0.0, "rho_rot must be > 0");
  require(std::isfinite(chi1) && std::isfinite(chi3), "chi_i must be finite");
}

double& MaterialParams::at(std::string_view name) { return material_field(*this, name); }

double MaterialParams::at(std::string_view name) const {
  return material_field(const_cast<MaterialParams&>(*this), name);
}

}  // namespace cosserat
