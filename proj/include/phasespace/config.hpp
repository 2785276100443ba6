#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phasespace/fock_dynamics.hpp"
#include "phasespace/gaussian_states.hpp"
#include "phasespace/quadrature.hpp"

namespace phasespace {

enum class OutputFormat { csv, json };

/// radial: exact evaluation for the Fock-diagonal reduced states of a pair;
/// grid: trapezoid rule with grid doubling.
enum class NegativityMethod { radial, grid };

/// Single-mode Gaussian input for queries. An empty covariance means the
/// thermal covariance (2 nbar + 1) hbar I.
struct StateSpec {
  std::vector<double> means{0.0, 0.0};
  std::vector<double> covariance;
  double nbar = 0.0;
};

/// Every tunable of the command-line tool. Keys in the text format are the
/// dotted names listed by config_keys().
struct ExperimentConfig {
  std::string experiment = "fig1";

  // physics.*
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;
  double coupling = 0.1;
  double bath_rate = 0.1;
  double bath_nbar = 4.0;
  int k = 1;
  int l = 0;

  // fig1.*
  std::vector<std::pair<int, int>> fig1_pairs{{1, 0}, {2, 1}};

  // fig3.*
  std::vector<double> fig3_means{1.0, 1.0, 1.0, 1.0};
  /// Diagonal covariance of each mode at t = 0 in units of hbar.
  double fig3_variance = 4.0;
  bool fig3_include_uncoupled = true;

  // state1.*, state2.*
  StateSpec state1;
  StateSpec state2{{0.0, 0.0}, {}, 4.0};

  // query.*
  int query_mode = 1;
  double query_theta = 0.0;

  // numeric.*
  double theta_step = 0.015707963267948967;  // pi / 200
  double theta_max = 3.141592653589793;
  int hermite_nodes = 0;  ///< 0 selects default_hermite_nodes(k, l)
  NegativityMethod negativity_method = NegativityMethod::radial;
  int grid_points = 129;
  int grid_max_points = 1025;
  double negativity_tolerance = 1e-4;
  double time_max = 6.0;     ///< in units of 1/Gamma
  double time_step = 0.005;  ///< in units of 1/Gamma
  double max_step = 0.01;
  int threads = 0;  ///< 0 uses the hardware concurrency

  // output.*
  std::string output_path;
  OutputFormat output_format = OutputFormat::csv;

  OscillatorParams oscillator() const;
  ThermalBath bath() const;
  GridConvergence grid_convergence() const;
  /// Throws ConfigError when a value violates a module precondition.
  void validate() const;
};

/// Dotted key names in the order dump_config writes them.
std::vector<std::string> config_keys();

/// Sets one key from its text value. Throws ConfigError for unknown keys and
/// malformed values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);
std::string get_config_value(const ExperimentConfig& config, const std::string& key);

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Later lines override earlier ones.
void apply_config_text(ExperimentConfig& config, const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Applies a "KEY=VALUE" override.
void apply_override(ExperimentConfig& config, const std::string& assignment);

/// Every key with its value; doubles use 17 significant digits so the text
/// parses back to the identical configuration.
std::string dump_config(const ExperimentConfig& config);

GaussianState make_state(const StateSpec& spec, double hbar);

}  // namespace phasespace
