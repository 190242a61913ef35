#pragma once

#include "cosserat/params.hpp"
#include "cosserat/reduced.hpp"
#include "cosserat/reduced_state.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace cosserat::dynamics {

class CflError : public Error {
 public:
  using Error::Error;
};

class BlowUpError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kCflSafety = 0.5;
inline constexpr double kBlowUpThreshold = 1e6;

/// safety * dz / sqrt(fast eigenvalue of M). Throws NotHyperbolicError.
double cfl_limit(const MaterialParams& p, double dz, double safety = kCflSafety);

/// Samples the closed-form pair and its exact time derivatives on `grid`.
///
/// Dirichlet grids are pinned to the asymptotic states (phi: 0 and 2 pi,
/// psi: 0 and amplitude_psi pi / 2, swapped for an antikink). Periodic grids
/// get jumps of +-2 pi and +-amplitude_psi pi / 2 so that the kink can wrap.
ReducedState init_from_soliton(const Grid1& grid, const reduced::SolitonSolution& s);

enum class WaveMode { slow, fast };

/// Travelling sinusoid along an eigenvector of M on a periodic grid:
/// (phi, psi) = amplitude e sin(2 pi wavelengths (z - z_min) / L), with time
/// derivatives chosen so it moves towards +z at speed sqrt(eigenvalue).
ReducedState init_plane_wave(const Grid1& grid, const MaterialParams& p, WaveMode mode,
                             double amplitude, int wavelengths);

/// One velocity-Verlet step (half kick, drift, half kick) of the reduced
/// system. Throws CflError if dt exceeds cfl_limit and BlowUpError on
/// non-finite values or |field| > 1e6.
ReducedState step(const ReducedState& state, const MaterialParams& p, double dt);

/// Stateful stepper that caches the acceleration between steps.
class Integrator {
 public:
  Integrator(ReducedState state, MaterialParams p, double dt);

  void advance();
  const ReducedState& state() const { return state_; }
  double dt() const { return dt_; }

 private:
  void check_finite() const;

  ReducedState state_;
  MaterialParams params_;
  double dt_;
  reduced::Accelerations acc_;
};

struct SolitonSpec {
  double v = 0.5;
  double delta = 0.0;
  reduced::Branch branch = reduced::Branch::kink;
};

struct PlaneWaveSpec {
  WaveMode mode = WaveMode::slow;
  double amplitude = 0.01;
  int wavelengths = 1;
};

using InitialCondition = std::variant<SolitonSpec, PlaneWaveSpec, ReducedState>;

struct SimConfig {
  MaterialParams material;
  Grid1 grid{1024, -20.0, 20.0, BoundaryMode::dirichlet};
  std::optional<double> dt;  ///< empty: use cfl_limit
  double t_end = 0.0;
  InitialCondition initial = SolitonSpec{};
  int output_stride = 100;  ///< steps between snapshots
};

struct DiagnosticsRow {
  double t = 0.0;
  double energy = 0.0;
  double l2_phi = 0.0;  ///< NaN without an analytic reference
  double l2_psi = 0.0;
};

struct Trajectory {
  std::vector<ReducedState> snapshots;
  std::vector<DiagnosticsRow> diagnostics;
  std::optional<reduced::SolitonSolution> reference;
  double dt = 0.0;
  long steps = 0;
};

/// Called for every snapshot as it is produced.
using SnapshotObserver = std::function<void(const ReducedState&, const DiagnosticsRow&)>;

/// Steps from the initial condition to t_end. The step count is
/// ceil(t_end / dt) and dt is shrunk to land exactly on t_end. Snapshots are
/// taken at step 0, every output_stride steps, and at the final step.
/// With keep_snapshots = false only the diagnostics and the observer see them.
Trajectory integrate(const SimConfig& config, const SnapshotObserver& observer = {},
                     bool keep_snapshots = true);

/// Builds the initial state described by the config (without stepping).
ReducedState initial_state(const SimConfig& config,
                           std::optional<reduced::SolitonSolution>* reference = nullptr);

/// Analytic reference value at grid point i and the state's time. On a
/// periodic grid the image of z nearest the soliton center is used and the
/// jump is subtracted accordingly.
struct ReferenceValues {
  double phi, psi, phi_t, psi_t;
};
ReferenceValues reference_at(const ReducedState& state, int i, const reduced::SolitonSolution& s);

struct L2Error {
  double phi = 0.0;
  double psi = 0.0;
};

/// Discrete L2 norms sqrt(dz sum (f - f_ref)^2) against the closed form.
L2Error l2_error(const ReducedState& state, const reduced::SolitonSolution& s);

/// Location of the phi = pi (mod 2 pi) crossing, linearly interpolated.
/// Throws DomainError if there is none.
double soliton_center(const ReducedState& state);

/// Analytic center at the state's time, wrapped into [z_min, z_max) on a
/// periodic grid.
double analytic_center(const ReducedState& state, const reduced::SolitonSolution& s);

/// Signed distance a - b, taking the shorter way around on a periodic grid.
double center_offset(const Grid1& grid, double a, double b);

/// Phase speed of a plane wave over a sequence of snapshots of a linear
/// (mu_c = 0) run: the fundamental Fourier phase of the projection onto the
/// eigenvector of `mode`, unwrapped between consecutive snapshots (each gap
/// must move the wave by less than half a wavelength). Least-squares slope of
/// travelled distance against time.
double plane_wave_speed(const std::vector<ReducedState>& snapshots, const MaterialParams& p,
                        WaveMode mode, int wavelengths);

}  // namespace cosserat::dynamics
