#pragma once

#include <Eigen/Dense>
#include <vector>

#include "phasespace/fock_dynamics.hpp"
#include "phasespace/gaussian_states.hpp"

namespace phasespace {

struct Interval {
  double start = 0.0;
  double end = 0.0;

  bool operator==(const Interval&) const = default;
};

/// Sampled two-mode evolution. States are expressed in the integration frame;
/// tracks refer to the reduced state of mode 1 and have one entry per time.
struct EvolutionRecord {
  std::vector<double> times;
  std::vector<GaussianState> states;
  std::vector<double> fidelity_track;
  std::vector<double> coherence_track;
  std::vector<Interval> backflow_intervals;
};

/// Single-mode thermalization in closed form:
///   sigma(t) = e^{-Gt} sigma(0) + (1 - e^{-Gt}) (2 nbar + 1) hbar I,
///   d(t) = e^{-Gt/2} d(0).
GaussianState thermalize_closed_form(const GaussianState& state, const ThermalBath& bath, double t);

/// Frame in which the drift is expressed. The free rotation at omega acts
/// identically on both modes, commutes with the coupling and the bath, and
/// leaves every recorded quantity unchanged, so the rotating frame drops it.
/// That frame needs m*omega = 1, where the free flow is a plain rotation.
enum class Frame { lab, rotating };

struct DriftDiffusion {
  Eigen::Matrix4d drift;
  Eigen::Matrix4d diffusion;
};

/// Drift A and diffusion D of d' = A d, sigma' = A sigma + sigma A^T + D,
/// ordering (q1, p1, q2, p2); the bath acts on mode 1 only.
DriftDiffusion drift_and_diffusion(const OscillatorParams& params, const ThermalBath& bath,
                                   Frame frame = Frame::lab);

struct IntegratorOptions {
  /// Upper bound on the RK4 step; the effective step also stays below
  /// 0.01/omega and 0.01/Gamma and divides every grid interval evenly.
  double max_step = 0.01;
  Frame frame = Frame::rotating;
  /// Intermediate states with a symplectic eigenvalue below 1 - this abort.
  double physicality_tolerance = 1e-6;
};

/// Integrates the moments with classical fourth-order Runge-Kutta and records
/// mode 1's fidelity to thermal_state(bath.nbar) and its coherence at every
/// grid time. t_grid must start at 0 and increase strictly.
EvolutionRecord evolve_coupled(const GaussianState& initial, const OscillatorParams& params,
                               const ThermalBath& bath, const std::vector<double>& t_grid,
                               const IntegratorOptions& options = {});

/// Maximal runs of consecutive samples where the track drops by more than
/// 1e-9; each run spans from the sample before the first drop to the last
/// lower sample.
std::vector<Interval> backflow_intervals(const std::vector<double>& times,
                                         const std::vector<double>& track);

/// Same as backflow_intervals for rises of more than 1e-9.
std::vector<Interval> increase_intervals(const std::vector<double>& times,
                                         const std::vector<double>& track);

}  // namespace phasespace
