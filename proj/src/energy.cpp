#include "cosserat/energy.hpp"

#include "cosserat/kinematics.hpp"

#include <string>

namespace cosserat::energy {

FieldGrid3 FieldGrid3::zeros(const Grid3& grid) {
  grid.validate();
  const std::vector<Vec3> z(grid.size(), Vec3::Zero());
  return {grid, z, z, z, z};
}

void FieldGrid3::validate() const {
  grid.validate();
  const std::size_t n = grid.size();
  if (u.size() != n || a.size() != n || u_dot.size() != n || a_dot.size() != n)
    throw DomainError("FieldGrid3: array sizes do not match the grid (" + std::to_string(n) +
                      " points)");
}

MatrixField FieldGrid3::rotations() const {
  MatrixField out;
  out.grid = grid;
  out.values.reserve(a.size());
  for (const Vec3& ai : a) out.values.push_back(kinematics::rotation_exp(ai));
  return out;
}

double v_elastic(const Mat3& f, const Mat3& r, const MaterialParams& p) {
  const Mat3 e = sym(r.transpose() * f) - Mat3::Identity();
  const double tr = e.trace();
  return p.mu * e.squaredNorm() + 0.5 * p.lambda * tr * tr;
}

double v_elastic_linear(const Mat3& grad_u, const MaterialParams& p) {
  const double tr = grad_u.trace();
  return p.mu * sym(grad_u).squaredNorm() + 0.5 * p.lambda * tr * tr;
}

double v_curvature(const Mat3& k, const MaterialParams& p) {
  const double tr = k.trace();
  return p.kappa1 * dev(sym(k)).squaredNorm() + p.kappa2 * skew(k).squaredNorm() +
         p.kappa3 * tr * tr;
}

double v_interaction(const Mat3& k, const Mat3& e, const MaterialParams& p,
                     InteractionForm form) {
  const double tr_coupled = form == InteractionForm::full ? e.trace() + 3.0 : e.trace();
  return p.chi1 * k.trace() * tr_coupled + p.chi3 * frobenius(dev(sym(k)), dev(sym(e)));
}

double v_coupling_full(const Mat3& f, const Mat3& r, const MaterialParams& p) {
  const Mat3 polar = kinematics::polar_decompose(f).rotation;
  return p.mu_c * (r.transpose() * polar - Mat3::Identity()).squaredNorm();
}

double v_coupling_model2(const Mat3& grad_u, const Mat3& r, const MaterialParams& p) {
  return p.mu_c * (skew(grad_u) - (r - Mat3::Identity())).squaredNorm();
}

double kinetic_translational(const Vec3& u_dot, const MaterialParams& p) {
  return 0.5 * p.rho * u_dot.squaredNorm();
}

double kinetic_rotational(const Vec3& a, const Vec3& a_dot, const MaterialParams& p) {
  const Mat3 r_dot = kinematics::rotation_variation(a).contract(a_dot);
  return p.rho_rot * (r_dot.transpose() * r_dot).trace();
}

std::vector<DensityTerms> density_terms(const FieldGrid3& f, const MaterialParams& p,
                                        Model model) {
  f.validate();
  const MatrixField rot = f.rotations();
  const MatrixField curvature = kinematics::dislocation_curvature(rot);
  const MatrixField grad_u = stencil::gradient(f.displacement());

  std::vector<DensityTerms> out(f.grid.size());
  for (std::size_t q = 0; q < out.size(); ++q) {
    const Mat3& r = rot.values[q];
    const Mat3& k = curvature.values[q];
    const Mat3& g = grad_u.values[q];
    DensityTerms& d = out[q];
    d.curvature = v_curvature(k, p);
    if (model == Model::full) {
      const Mat3 def = Mat3::Identity() + g;
      d.elastic = v_elastic(def, r, p);
      d.interaction =
          v_interaction(k, r.transpose() * def - Mat3::Identity(), p, InteractionForm::full);
      d.coupling = v_coupling_full(def, r, p);
    } else {
      d.elastic = v_elastic_linear(g, p);
      d.interaction = v_interaction(k, g, p, InteractionForm::linearized);
      d.coupling = v_coupling_model2(g, r, p);
    }
    d.kinetic = kinetic_translational(f.u_dot[q], p) + kinetic_rotational(f.a[q], f.a_dot[q], p);
  }
  return out;
}

double total_energy(const FieldGrid3& f, const MaterialParams& p, Model model,
                    Functional functional) {
  const std::vector<DensityTerms> terms = density_terms(f, p, model);
  const Grid3& g = f.grid;
  double sum = 0.0;
  for (int i = 0; i < g.counts[0]; ++i)
    for (int j = 0; j < g.counts[1]; ++j)
      for (int k = 0; k < g.counts[2]; ++k) {
        const DensityTerms& d = terms[g.index(i, j, k)];
        double value = d.potential();
        if (functional == Functional::potential_minus_kinetic) value -= d.kinetic;
        if (functional == Functional::total) value += d.kinetic;
        sum += g.trapezoid_weight(i, j, k) * value;
      }
  return sum;
}

namespace {

// Fields shared by both assemblies of the displacement equation.
struct EomInputs {
  MatrixField rotations;
  MatrixField curvature;
  MatrixField grad_u;
};

EomInputs eom_inputs(const FieldGrid3& f) {
  f.validate();
  EomInputs in;
  in.rotations = f.rotations();
  in.curvature = kinematics::dislocation_curvature(in.rotations);
  in.grad_u = stencil::gradient(f.displacement());
  return in;
}

// chi1 grad tr K + chi3 Div dev sym K
VectorField curvature_forcing(const MatrixField& curvature, const MaterialParams& p) {
  const ScalarField tr_k = map_field(curvature, [](const Mat3& k) { return k.trace(); });
  const MatrixField dev_sym_k = map_field(curvature, [](const Mat3& k) -> Mat3 { return dev(sym(k)); });
  const VectorField grad_tr = stencil::gradient(tr_k);
  const VectorField div_dev = kinematics::matrix_div(dev_sym_k);
  VectorField out(curvature.grid, Vec3::Zero());
  for (std::size_t q = 0; q < out.values.size(); ++q)
    out.values[q] = p.chi1 * grad_tr.values[q] + p.chi3 * div_dev.values[q];
  return out;
}

}  // namespace

VectorField displacement_eom_rhs(const FieldGrid3& f, const MaterialParams& p) {
  const EomInputs in = eom_inputs(f);
  const Grid3& g = f.grid;

  // Lap u = Div(grad u); grad div u = grad(tr grad u).
  const VectorField lap_u = kinematics::matrix_div(in.grad_u);
  const ScalarField div_u = map_field(in.grad_u, [](const Mat3& m) { return m.trace(); });
  const VectorField grad_div_u = stencil::gradient(div_u);
  const MatrixField skew_r = map_field(in.rotations, [](const Mat3& r) -> Mat3 { return skew(r); });
  const VectorField div_skew_r = kinematics::matrix_div(skew_r);
  const VectorField forcing = curvature_forcing(in.curvature, p);

  VectorField out(g, Vec3::Zero());
  for (std::size_t q = 0; q < out.values.size(); ++q)
    out.values[q] = (p.mu + p.mu_c) * lap_u.values[q] +
                    (p.mu + p.lambda - p.mu_c) * grad_div_u.values[q] + forcing.values[q] -
                    2.0 * p.mu_c * div_skew_r.values[q];
  return out;
}

VectorField displacement_eom_rhs_divergence_form(const FieldGrid3& f, const MaterialParams& p) {
  const EomInputs in = eom_inputs(f);
  MatrixField stress(f.grid, Mat3::Zero());
  for (std::size_t q = 0; q < stress.values.size(); ++q) {
    const Mat3& gu = in.grad_u.values[q];
    const Mat3& r = in.rotations.values[q];
    stress.values[q] = 2.0 * p.mu * sym(gu) + p.lambda * gu.trace() * Mat3::Identity() +
                       2.0 * p.mu_c * skew(gu - (r - Mat3::Identity()));
  }
  VectorField out = kinematics::matrix_div(stress);
  const VectorField forcing = curvature_forcing(in.curvature, p);
  for (std::size_t q = 0; q < out.values.size(); ++q) out.values[q] += forcing.values[q];
  return out;
}

}  // namespace cosserat::energy
