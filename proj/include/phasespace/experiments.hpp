#pragma once

#include <string>
#include <vector>

#include "phasespace/config.hpp"
#include "phasespace/open_dynamics.hpp"

namespace phasespace {

inline constexpr const char* kToolVersion = "0.1.0";

struct Fig1Row {
  double theta = 0.0;
  double mutual_information = 0.0;
  double negativity_mode1 = 0.0;
  double negativity_mode2 = 0.0;
};

struct Fig1Run {
  int k = 0;
  int l = 0;
  std::vector<Fig1Row> rows;
};

struct Fig3Run {
  double coupling = 0.0;
  /// Sample times in units of 1/Gamma.
  std::vector<double> scaled_times;
  EvolutionRecord record;
  std::vector<double> coherence_normalized;
  /// Backflow intervals in units of 1/Gamma.
  std::vector<Interval> backflow;
  std::vector<Interval> coherence_rises;
};

/// Angles 0, step, 2 step, ... up to theta_max (inclusive within 1e-9 step).
std::vector<double> theta_grid(const ExperimentConfig& config);

/// One row of the mutual-information/negativity sweep at rotation angle theta.
Fig1Row fig1_row(const FockPairState& state, double theta, const QuadratureRule& rule,
                 const ExperimentConfig& config);

/// Sweeps every configured (k, l) pair over theta_grid(). Rows are computed
/// on a thread pool and returned in ascending theta.
std::vector<Fig1Run> run_fig1(const ExperimentConfig& config);

/// Evolution at the configured coupling, followed by the uncoupled run when
/// fig3.include_uncoupled is set.
std::vector<Fig3Run> run_fig3(const ExperimentConfig& config);
Fig3Run run_fig3_single(const ExperimentConfig& config, double coupling);

/// Single value for the query experiments (eigen, fidelity, coherence,
/// negativity), formatted for standard output.
std::string run_query(const ExperimentConfig& config);

std::string format_fig1(const std::vector<Fig1Run>& runs, const ExperimentConfig& config);
std::string format_fig3(const std::vector<Fig3Run>& runs, const ExperimentConfig& config);

}  // namespace phasespace
