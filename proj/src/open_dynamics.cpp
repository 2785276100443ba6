#include "phasespace/open_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phasespace/errors.hpp"

namespace phasespace {

namespace {

constexpr double kTrackTolerance = 1e-9;

struct Moments {
  Eigen::Vector4d d;
  Eigen::Matrix4d sigma;
};

Moments derivative(const DriftDiffusion& dd, const Moments& m) {
  return {dd.drift * m.d, dd.drift * m.sigma + m.sigma * dd.drift.transpose() + dd.diffusion};
}

Moments axpy(const Moments& base, double h, const Moments& slope) {
  return {base.d + h * slope.d, base.sigma + h * slope.sigma};
}

void rk4_step(const DriftDiffusion& dd, Moments& m, double h) {
  const Moments k1 = derivative(dd, m);
  const Moments k2 = derivative(dd, axpy(m, 0.5 * h, k1));
  const Moments k3 = derivative(dd, axpy(m, 0.5 * h, k2));
  const Moments k4 = derivative(dd, axpy(m, h, k3));
  m.d += h / 6.0 * (k1.d + 2.0 * k2.d + 2.0 * k3.d + k4.d);
  m.sigma += h / 6.0 * (k1.sigma + 2.0 * k2.sigma + 2.0 * k3.sigma + k4.sigma);
  m.sigma = 0.5 * (m.sigma + m.sigma.transpose()).eval();
}

std::vector<Interval> monotone_runs(const std::vector<double>& times,
                                    const std::vector<double>& track, double sign) {
  if (times.size() != track.size()) {
    throw InvalidArgument("interval detection: times and track differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("interval detection: times must increase");
  }
  std::vector<Interval> runs;
  bool open = false;
  for (std::size_t i = 1; i < track.size(); ++i) {
    const bool flagged = sign * (track[i] - track[i - 1]) > kTrackTolerance;
    if (flagged && open) {
      runs.back().end = times[i];
    } else if (flagged) {
      runs.push_back({times[i - 1], times[i]});
    }
    open = flagged;
  }
  return runs;
}

}  // namespace

GaussianState thermalize_closed_form(const GaussianState& state, const ThermalBath& bath, double t) {
  if (state.modes() != 1) throw InvalidArgument("thermalize_closed_form: single-mode state required");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("thermalize_closed_form: t must be >= 0");
  bath.validate();
  const double decay = std::exp(-bath.rate * t);
  const Eigen::MatrixXd sigma =
      decay * state.covariance() +
      (1.0 - decay) * (2.0 * bath.nbar + 1.0) * state.hbar() * Eigen::Matrix2d::Identity();
  return GaussianState(std::sqrt(decay) * state.means(), sigma, state.hbar());
}

DriftDiffusion drift_and_diffusion(const OscillatorParams& params, const ThermalBath& bath,
                                   Frame frame) {
  params.validate();
  bath.validate();
  const double gamma = params.coupling;
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  if (frame == Frame::lab) {
    const double two_alpha2 = 2.0 * params.alpha() * params.alpha();
    const double two_beta2 = 2.0 * params.beta() * params.beta();
    a(0, 1) = two_alpha2;
    a(1, 0) = -two_beta2;
    a(2, 3) = two_alpha2;
    a(3, 2) = -two_beta2;
  } else if (std::abs(params.stiffness() - 1.0) > 1e-12) {
    throw InvalidArgument("drift_and_diffusion: the rotating frame requires mass * omega = 1");
  }
  a(0, 2) = gamma;
  a(1, 3) = gamma;
  a(2, 0) = -gamma;
  a(3, 1) = -gamma;
  a(0, 0) -= 0.5 * bath.rate;
  a(1, 1) -= 0.5 * bath.rate;

  Eigen::Matrix4d diffusion = Eigen::Matrix4d::Zero();
  diffusion(0, 0) = diffusion(1, 1) = bath.rate * (2.0 * bath.nbar + 1.0) * params.hbar;
  return {a, diffusion};
}

EvolutionRecord evolve_coupled(const GaussianState& initial, const OscillatorParams& params,
                               const ThermalBath& bath, const std::vector<double>& t_grid,
                               const IntegratorOptions& options) {
  if (initial.modes() != 2) throw InvalidArgument("evolve_coupled: two-mode state required");
  if (std::abs(initial.hbar() - params.hbar) > 1e-15 * params.hbar) {
    throw InvalidArgument("evolve_coupled: state and oscillator use different hbar");
  }
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw InvalidArgument("evolve_coupled: time grid must start at 0");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1]) || !std::isfinite(t_grid[i])) {
      throw InvalidArgument("evolve_coupled: time grid must increase strictly");
    }
  }
  if (!(options.max_step > 0.0) || !std::isfinite(options.max_step)) {
    throw InvalidArgument("evolve_coupled: step must be positive");
  }
  const DriftDiffusion dd = drift_and_diffusion(params, bath, options.frame);
  double step_limit = std::min({options.max_step, 0.01 / params.omega, 0.01 / bath.rate});
  if (params.coupling != 0.0) step_limit = std::min(step_limit, 0.01 / std::abs(params.coupling));

  const GaussianState asymptote = thermal_state(bath.nbar, params.hbar);
  EvolutionRecord record;
  record.times = t_grid;
  Moments m{initial.means(), initial.covariance()};

  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0) {
      const double span = t_grid[i] - t_grid[i - 1];
      const auto substeps = static_cast<long>(std::ceil(span / step_limit * (1.0 - 1e-12)));
      const double h = span / static_cast<double>(std::max(substeps, 1L));
      if (h > step_limit * (1.0 + 1e-9)) {
        throw InvalidArgument("evolve_coupled: step size exceeds the stability limit");
      }
      for (long s = 0; s < substeps; ++s) rk4_step(dd, m, h);
    }
    try {
      GaussianState state(m.d, m.sigma, params.hbar, options.physicality_tolerance);
      const GaussianState local = reduce_mode(state, Mode::first);
      record.fidelity_track.push_back(fidelity(local, asymptote));
      record.coherence_track.push_back(coherence(local));
      record.states.push_back(std::move(state));
    } catch (const UnphysicalStateError& e) {
      throw UnphysicalStateError("evolve_coupled: unphysical state at t = " +
                                 std::to_string(t_grid[i]) + ": " + e.what());
    }
  }
  record.backflow_intervals = backflow_intervals(record.times, record.fidelity_track);
  return record;
}

std::vector<Interval> backflow_intervals(const std::vector<double>& times,
                                         const std::vector<double>& track) {
  return monotone_runs(times, track, -1.0);
}

std::vector<Interval> increase_intervals(const std::vector<double>& times,
                                         const std::vector<double>& track) {
  return monotone_runs(times, track, 1.0);
}

}  // namespace phasespace
