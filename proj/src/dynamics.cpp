#include "cosserat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace cosserat::dynamics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double cfl_limit(const MaterialParams& p, double dz, double safety) {
  const reduced::Eigenvalues ev = reduced::hyperbolicity_check(reduced::coupling_matrix(p));
  return safety * dz / std::sqrt(ev.fast);
}

ReferenceValues reference_at(const ReducedState& state, int i, const reduced::SolitonSolution& s) {
  const Grid1& g = state.grid;
  double z = g.z(i);
  double shift = 0.0;
  if (g.mode == BoundaryMode::periodic && s.k != 0.0) {
    shift = std::round((s.center(state.t) - z) / g.length());
    z += shift * g.length();
  }
  const reduced::SolitonJet j = reduced::soliton_jet(z, state.t, s);
  return {j.phi - shift * state.boundary.phi_jump, j.psi - shift * state.boundary.psi_jump,
          j.phi_t, j.psi_t};
}

ReducedState init_from_soliton(const Grid1& grid, const reduced::SolitonSolution& s) {
  ReducedState state = ReducedState::zeros(grid);
  const double sign = s.k >= 0.0 ? 1.0 : -1.0;
  const double psi_span = 0.5 * std::numbers::pi * s.amplitude_psi;
  BoundaryValues& b = state.boundary;
  if (grid.mode == BoundaryMode::periodic) {
    b.phi_jump = sign * kTwoPi;
    b.psi_jump = sign * psi_span;
  } else if (sign > 0.0) {
    b = {0.0, kTwoPi, s.c1, s.c1 + psi_span, 0.0, 0.0};
  } else {
    b = {kTwoPi, 0.0, s.c1 + psi_span, s.c1, 0.0, 0.0};
  }

  for (int i = 0; i < grid.n; ++i) {
    const ReferenceValues r = reference_at(state, i, s);
    state.phi[i] = r.phi;
    state.psi[i] = r.psi;
    state.phi_t[i] = r.phi_t;
    state.psi_t[i] = r.psi_t;
  }
  if (grid.mode == BoundaryMode::dirichlet) {
    const int last = grid.n - 1;
    state.phi[0] = b.phi_left;
    state.phi[last] = b.phi_right;
    state.psi[0] = b.psi_left;
    state.psi[last] = b.psi_right;
    state.phi_t[0] = state.phi_t[last] = 0.0;
    state.psi_t[0] = state.psi_t[last] = 0.0;
  }
  return state;
}

ReducedState init_plane_wave(const Grid1& grid, const MaterialParams& p, WaveMode mode,
                             double amplitude, int wavelengths) {
  if (grid.mode != BoundaryMode::periodic)
    throw DomainError("init_plane_wave: needs a periodic grid");
  if (wavelengths < 1) throw DomainError("init_plane_wave: wavelengths must be >= 1");
  const reduced::CouplingMatrix m = reduced::coupling_matrix(p);
  const reduced::Eigenvalues ev = reduced::hyperbolicity_check(m);
  const double lambda = mode == WaveMode::slow ? ev.slow : ev.fast;
  const auto e = reduced::eigenvector(m, lambda);
  const double speed = std::sqrt(lambda);
  const double wavenumber = kTwoPi * wavelengths / grid.length();

  ReducedState state = ReducedState::zeros(grid);
  for (int i = 0; i < grid.n; ++i) {
    const double arg = wavenumber * (grid.z(i) - grid.z_min);
    const double c = amplitude * std::sin(arg);
    const double c_t = -speed * amplitude * wavenumber * std::cos(arg);
    state.phi[i] = e[0] * c;
    state.psi[i] = e[1] * c;
    state.phi_t[i] = e[0] * c_t;
    state.psi_t[i] = e[1] * c_t;
  }
  return state;
}

Integrator::Integrator(ReducedState state, MaterialParams p, double dt)
    : state_(std::move(state)), params_(p), dt_(dt) {
  state_.validate();
  if (!(dt_ > 0.0)) throw DomainError("time step must be positive");
  const double limit = cfl_limit(params_, state_.grid.dz());
  if (dt_ > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time step " << dt_ << " exceeds the CFL limit " << limit;
    throw CflError(msg.str());
  }
  const auto n = static_cast<std::size_t>(state_.grid.n);
  acc_.phi_tt.assign(n, 0.0);
  acc_.psi_tt.assign(n, 0.0);
  reduced::reduced_rhs(state_, params_, acc_);
}

void Integrator::advance() {
  const std::size_t n = state_.phi.size();
  const double half = 0.5 * dt_;
  auto& phi = state_.phi;
  auto& psi = state_.psi;
  auto& phi_t = state_.phi_t;
  auto& psi_t = state_.psi_t;
  for (std::size_t i = 0; i < n; ++i) {
    phi_t[i] += half * acc_.phi_tt[i];
    psi_t[i] += half * acc_.psi_tt[i];
    phi[i] += dt_ * phi_t[i];
    psi[i] += dt_ * psi_t[i];
  }
  reduced::reduced_rhs(state_, params_, acc_);
  for (std::size_t i = 0; i < n; ++i) {
    phi_t[i] += half * acc_.phi_tt[i];
    psi_t[i] += half * acc_.psi_tt[i];
  }
  state_.t += dt_;
  check_finite();
}

void Integrator::check_finite() const {
  auto bad = [](const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) {
      return !std::isfinite(x) || std::abs(x) > kBlowUpThreshold;
    });
  };
  if (bad(state_.phi) || bad(state_.psi) || bad(state_.phi_t) || bad(state_.psi_t)) {
    std::ostringstream msg;
    msg << "blow-up detected at t = " << state_.t;
    throw BlowUpError(msg.str());
  }
}

ReducedState step(const ReducedState& state, const MaterialParams& p, double dt) {
  Integrator it(state, p, dt);
  it.advance();
  return it.state();
}

ReducedState initial_state(const SimConfig& config,
                           std::optional<reduced::SolitonSolution>* reference) {
  config.material.validate();
  reduced::hyperbolicity_check(reduced::coupling_matrix(config.material));
  config.grid.validate();
  if (reference) reference->reset();

  return std::visit(
      [&](const auto& init) -> ReducedState {
        using T = std::decay_t<decltype(init)>;
        if constexpr (std::is_same_v<T, SolitonSpec>) {
          const reduced::SolitonSolution s =
              reduced::make_soliton(init.v, config.material, init.branch, init.delta);
          if (s.k == 0.0)
            throw DomainError("soliton initial data needs mu_c > 0 (k = 0 is a constant state)");
          if (reference) *reference = s;
          return init_from_soliton(config.grid, s);
        } else if constexpr (std::is_same_v<T, PlaneWaveSpec>) {
          return init_plane_wave(config.grid, config.material, init.mode, init.amplitude,
                                 init.wavelengths);
        } else {
          ReducedState s = init;
          s.validate();
          return s;
        }
      },
      config.initial);
}

Trajectory integrate(const SimConfig& config, const SnapshotObserver& observer,
                     bool keep_snapshots) {
  if (!(config.t_end >= 0.0)) throw DomainError("t_end must be >= 0");
  if (config.output_stride < 1) throw DomainError("output stride must be >= 1");

  Trajectory traj;
  ReducedState state = initial_state(config, &traj.reference);

  const double limit = cfl_limit(config.material, state.grid.dz());
  double dt = config.dt.value_or(limit);
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds the CFL limit " << limit;
    throw CflError(msg.str());
  }
  long steps = 0;
  if (config.t_end > 0.0) {
    steps = static_cast<long>(std::ceil(config.t_end / dt * (1.0 - 1e-12)));
    steps = std::max(steps, 1L);
    dt = config.t_end / static_cast<double>(steps);
  }
  traj.dt = dt;
  traj.steps = steps;

  const double t0 = state.t;
  auto emit = [&](const ReducedState& s) {
    DiagnosticsRow row;
    row.t = s.t;
    row.energy = reduced::reduced_energy(s, config.material);
    if (traj.reference) {
      const L2Error e = l2_error(s, *traj.reference);
      row.l2_phi = e.phi;
      row.l2_psi = e.psi;
    } else {
      row.l2_phi = row.l2_psi = std::numeric_limits<double>::quiet_NaN();
    }
    traj.diagnostics.push_back(row);
    if (observer) observer(s, row);
    if (keep_snapshots) traj.snapshots.push_back(s);
  };

  if (steps == 0) {
    emit(state);
    return traj;
  }

  Integrator integrator(std::move(state), config.material, dt);
  emit(integrator.state());
  for (long n = 1; n <= steps; ++n) {
    integrator.advance();
    if (n == steps) {
      // Land on t_end exactly rather than on the accumulated sum of dt.
      ReducedState last = integrator.state();
      last.t = t0 + config.t_end;
      emit(last);
    } else if (n % config.output_stride == 0) {
      emit(integrator.state());
    }
  }
  return traj;
}

L2Error l2_error(const ReducedState& state, const reduced::SolitonSolution& s) {
  state.validate();
  double sum_phi = 0.0;
  double sum_psi = 0.0;
  for (int i = 0; i < state.grid.n; ++i) {
    const ReferenceValues r = reference_at(state, i, s);
    const double dphi = state.phi[i] - r.phi;
    const double dpsi = state.psi[i] - r.psi;
    sum_phi += dphi * dphi;
    sum_psi += dpsi * dpsi;
  }
  const double dz = state.grid.dz();
  return {std::sqrt(dz * sum_phi), std::sqrt(dz * sum_psi)};
}

double soliton_center(const ReducedState& state) {
  const Grid1& g = state.grid;
  const int n = g.n;
  const double dz = g.dz();
  double best_slope = 0.0;
  double best = std::numeric_limits<double>::quiet_NaN();

  auto consider = [&](double z0, double f0, double f1) {
    const double j0 = std::floor((f0 - std::numbers::pi) / kTwoPi);
    const double j1 = std::floor((f1 - std::numbers::pi) / kTwoPi);
    if (j0 == j1) return;
    const double level = std::numbers::pi + kTwoPi * std::max(j0, j1);
    const double slope = std::abs(f1 - f0);
    if (slope > best_slope) {
      best_slope = slope;
      best = z0 + dz * (level - f0) / (f1 - f0);
    }
  };
  for (int i = 0; i + 1 < n; ++i) consider(g.z(i), state.phi[i], state.phi[i + 1]);
  if (g.mode == BoundaryMode::periodic) {
    consider(g.z(n - 1), state.phi[n - 1], state.phi[0] + state.boundary.phi_jump);
    if (best >= g.z_max) best -= g.length();
  }
  if (std::isnan(best)) throw DomainError("soliton_center: no phi = pi crossing");
  return best;
}

double analytic_center(const ReducedState& state, const reduced::SolitonSolution& s) {
  double c = s.center(state.t);
  const Grid1& g = state.grid;
  if (g.mode == BoundaryMode::periodic) {
    c = g.z_min + std::fmod(c - g.z_min, g.length());
    if (c < g.z_min) c += g.length();
  }
  return c;
}

double center_offset(const Grid1& grid, double a, double b) {
  double d = a - b;
  if (grid.mode == BoundaryMode::periodic) d -= grid.length() * std::round(d / grid.length());
  return d;
}

double plane_wave_speed(const std::vector<ReducedState>& snapshots, const MaterialParams& p,
                        WaveMode mode, int wavelengths) {
  if (snapshots.size() < 2) throw DomainError("plane_wave_speed: need at least two snapshots");
  const reduced::CouplingMatrix m = reduced::coupling_matrix(p);
  const reduced::Eigenvalues ev = reduced::hyperbolicity_check(m);
  const auto e_slow = reduced::eigenvector(m, ev.slow);
  const auto e_fast = reduced::eigenvector(m, ev.fast);
  // Columns of V are the eigenvectors; the mode amplitude is a row of V^{-1}.
  const double det = e_slow[0] * e_fast[1] - e_fast[0] * e_slow[1];
  if (det == 0.0) throw DomainError("plane_wave_speed: eigenvectors are not independent");
  const double row0 = mode == WaveMode::slow ? e_fast[1] / det : -e_slow[1] / det;
  const double row1 = mode == WaveMode::slow ? -e_fast[0] / det : e_slow[0] / det;

  const Grid1& g = snapshots.front().grid;
  const double wavenumber = kTwoPi * wavelengths / g.length();
  auto phase = [&](const ReducedState& s) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
      const double c = row0 * s.phi[i] + row1 * s.psi[i];
      acc += c * std::polar(1.0, -wavenumber * (g.z(i) - g.z_min));
    }
    return std::arg(acc);
  };

  std::vector<double> times;
  std::vector<double> shifts;
  double previous = phase(snapshots.front());
  double unwrapped = 0.0;
  for (const ReducedState& s : snapshots) {
    const double ph = phase(s);
    double d = ph - previous;
    d -= kTwoPi * std::round(d / kTwoPi);
    unwrapped += d;
    previous = ph;
    times.push_back(s.t);
    shifts.push_back(-unwrapped / wavenumber);
  }

  const double n = static_cast<double>(times.size());
  double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    st += times[i];
    sx += shifts[i];
    stt += times[i] * times[i];
    stx += times[i] * shifts[i];
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw DomainError("plane_wave_speed: snapshots share one time");
  return (n * stx - st * sx) / denom;
}

}  // namespace cosserat::dynamics
