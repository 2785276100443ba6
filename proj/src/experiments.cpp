#include "phasespace/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "phasespace/errors.hpp"
#include "phasespace/info_measures.hpp"
#include "phasespace/wigner_field.hpp"

namespace phasespace {

namespace {

std::string real(double value) { return fmt::format("{:.17g}", value); }

nlohmann::ordered_json metadata(const ExperimentConfig& config) {
  nlohmann::ordered_json resolved;
  for (const auto& key : config_keys()) resolved[key] = get_config_value(config, key);
  nlohmann::ordered_json meta;
  meta["tool_version"] = kToolVersion;
  meta["experiment"] = config.experiment;
  meta["config"] = resolved;
  return meta;
}

nlohmann::ordered_json intervals_json(const std::vector<Interval>& intervals) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& i : intervals) out.push_back({i.start, i.end});
  return out;
}

std::string intervals_text(const std::vector<Interval>& intervals) {
  if (intervals.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt::format("[{},{}]", real(intervals[i].start), real(intervals[i].end));
  }
  return out;
}

QuadratureRule rule_for(const ExperimentConfig& config, int k, int l) {
  return gauss_hermite(config.hermite_nodes > 0 ? config.hermite_nodes
                                                : default_hermite_nodes(k, l));
}

double mode_negativity(const FockPairState& state, double theta, Mode mode,
                       const QuadratureRule& rule, const ExperimentConfig& config) {
  const auto populations = reduced_number_distribution(state, theta, mode, rule);
  if (config.negativity_method == NegativityMethod::radial) {
    return fock_mixture_negativity(populations);
  }
  const WignerField field = fock_mixture_field(populations, state.params());
  const PhaseSpaceGrid grid(2, negativity_extent(state), config.grid_points);
  return negativity(field, grid, config.grid_convergence()).value;
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(context + ": " + e.what());
  } catch (const InsufficientNodesError& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

}  // namespace

std::vector<double> theta_grid(const ExperimentConfig& config) {
  const auto count = static_cast<long>(std::floor(config.theta_max / config.theta_step + 1e-9));
  std::vector<double> thetas;
  thetas.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) thetas.push_back(static_cast<double>(i) * config.theta_step);
  return thetas;
}

Fig1Row fig1_row(const FockPairState& state, double theta, const QuadratureRule& rule,
                 const ExperimentConfig& config) {
  Fig1Row row;
  row.theta = theta;
  row.mutual_information = mutual_information_at_angle(state, theta, rule);
  row.negativity_mode1 = mode_negativity(state, theta, Mode::first, rule, config);
  row.negativity_mode2 = mode_negativity(state, theta, Mode::second, rule, config);
  return row;
}

std::vector<Fig1Run> run_fig1(const ExperimentConfig& config) {
  config.validate();
  const std::vector<double> thetas = theta_grid(config);
  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(thetas.size()));

  std::vector<Fig1Run> runs;
  for (const auto& [k, l] : config.fig1_pairs) {
    const FockPairState state(k, l, config.oscillator());
    QuadratureRule rule;
    try {
      rule = rule_for(config, k, l);
    } catch (...) {
      rethrow_with_context(fmt::format("pair ({},{})", k, l));
    }
    Fig1Run run{k, l, std::vector<Fig1Row>(thetas.size())};
    std::vector<std::exception_ptr> failures(thetas.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < thetas.size(); i = next++) {
        try {
          run.rows[i] = fig1_row(state, thetas[i], rule, config);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& thread : pool) thread.join();
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      if (!failures[i]) continue;
      try {
        std::rethrow_exception(failures[i]);
      } catch (...) {
        rethrow_with_context(fmt::format("pair ({},{}) at theta = {}", k, l, real(thetas[i])));
      }
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

Fig3Run run_fig3_single(const ExperimentConfig& config, double coupling) {
  config.validate();
  OscillatorParams params = config.oscillator();
  params.coupling = coupling;
  const ThermalBath bath = config.bath();

  Eigen::Vector4d means(config.fig3_means[0], config.fig3_means[1], config.fig3_means[2],
                        config.fig3_means[3]);
  const GaussianState initial(means, config.fig3_variance * config.hbar * Eigen::Matrix4d::Identity(),
                              config.hbar);

  Fig3Run run;
  run.coupling = coupling;
  const auto count = static_cast<long>(std::llround(config.time_max / config.time_step));
  std::vector<double> times;
  for (long i = 0; i <= count; ++i) {
    const double scaled = static_cast<double>(i) * config.time_step;
    run.scaled_times.push_back(scaled);
    times.push_back(scaled / bath.rate);
  }

  IntegratorOptions options;
  options.max_step = config.max_step;
  options.frame = std::abs(params.stiffness() - 1.0) <= 1e-12 ? Frame::rotating : Frame::lab;
  run.record = evolve_coupled(initial, params, bath, times, options);

  const double c0 = run.record.coherence_track.front();
  for (double c : run.record.coherence_track) run.coherence_normalized.push_back(c0 == 0.0 ? 0.0 : c / c0);
  run.backflow = backflow_intervals(run.scaled_times, run.record.fidelity_track);
  run.coherence_rises = increase_intervals(run.scaled_times, run.record.coherence_track);
  return run;
}

std::vector<Fig3Run> run_fig3(const ExperimentConfig& config) {
  std::vector<Fig3Run> runs;
  runs.push_back(run_fig3_single(config, config.coupling));
  if (config.fig3_include_uncoupled && config.coupling != 0.0) {
    runs.push_back(run_fig3_single(config, 0.0));
  }
  return runs;
}

std::string run_query(const ExperimentConfig& config) {
  config.validate();
  const std::string& kind = config.experiment;
  if (kind == "eigen") {
    return fmt::format("{}", energy(config.k, config.l, config.oscillator()));
  }
  if (kind == "fidelity") {
    return fmt::format("{}", fidelity(make_state(config.state1, config.hbar),
                                      make_state(config.state2, config.hbar)));
  }
  if (kind == "coherence") {
    return fmt::format("{} bits", coherence(make_state(config.state1, config.hbar)));
  }
  if (kind == "negativity") {
    const FockPairState state(config.k, config.l, config.oscillator());
    const Mode mode = config.query_mode == 1 ? Mode::first : Mode::second;
    try {
      return fmt::format("{}", mode_negativity(state, config.query_theta, mode,
                                               rule_for(config, config.k, config.l), config));
    } catch (...) {
      rethrow_with_context(fmt::format("negativity at theta = {}", real(config.query_theta)));
    }
  }
  throw ConfigError("query: experiment must be eigen, fidelity, coherence or negativity, got '" +
                    kind + "'");
}

std::string format_fig1(const std::vector<Fig1Run>& runs, const ExperimentConfig& config) {
  if (config.output_format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["metadata"] = metadata(config);
    doc["runs"] = nlohmann::ordered_json::array();
    for (const auto& run : runs) {
      nlohmann::ordered_json entry;
      entry["k"] = run.k;
      entry["l"] = run.l;
      nlohmann::ordered_json columns;
      std::vector<double> theta, mi, n1, n2;
      for (const auto& row : run.rows) {
        theta.push_back(row.theta);
        mi.push_back(row.mutual_information);
        n1.push_back(row.negativity_mode1);
        n2.push_back(row.negativity_mode2);
      }
      columns["theta"] = theta;
      columns["mutual_information"] = mi;
      columns["negativity_mode1"] = n1;
      columns["negativity_mode2"] = n2;
      entry["columns"] = columns;
      doc["runs"].push_back(entry);
    }
    return doc.dump(2) + "\n";
  }
  std::string out = fmt::format("# phasespace {} fig1\n", kToolVersion);
  for (const auto& run : runs) {
    out += fmt::format("# pair k={} l={}\n", run.k, run.l);
    out += "theta,mutual_information,negativity_mode1,negativity_mode2\n";
    for (const auto& row : run.rows) {
      out += fmt::format("{},{},{},{}\n", real(row.theta), real(row.mutual_information),
                         real(row.negativity_mode1), real(row.negativity_mode2));
    }
  }
  return out;
}

std::string format_fig3(const std::vector<Fig3Run>& runs, const ExperimentConfig& config) {
  if (config.output_format == OutputFormat::json) {
    nlohmann::ordered_json doc;
    doc["metadata"] = metadata(config);
    doc["runs"] = nlohmann::ordered_json::array();
    for (const auto& run : runs) {
      nlohmann::ordered_json entry;
      entry["gamma"] = run.coupling;
      nlohmann::ordered_json columns;
      columns["t"] = run.scaled_times;
      columns["fidelity"] = run.record.fidelity_track;
      columns["coherence_normalized"] = run.coherence_normalized;
      columns["coherence_raw"] = run.record.coherence_track;
      entry["columns"] = columns;
      entry["backflow_intervals"] = intervals_json(run.backflow);
      entry["coherence_increase_intervals"] = intervals_json(run.coherence_rises);
      doc["runs"].push_back(entry);
    }
    return doc.dump(2) + "\n";
  }
  std::string out = fmt::format("# phasespace {} fig3\n", kToolVersion);
  for (const auto& run : runs) {
    out += fmt::format("# gamma={} bath_rate={} (t in units of 1/bath_rate)\n", real(run.coupling),
                       real(config.bath_rate));
    out += "t,fidelity,coherence_normalized,coherence_raw\n";
    for (std::size_t i = 0; i < run.scaled_times.size(); ++i) {
      out += fmt::format("{},{},{},{}\n", real(run.scaled_times[i]),
                         real(run.record.fidelity_track[i]), real(run.coherence_normalized[i]),
                         real(run.record.coherence_track[i]));
    }
    out += fmt::format("# backflow_intervals: {}\n", intervals_text(run.backflow));
    out += fmt::format("# coherence_increase_intervals: {}\n", intervals_text(run.coherence_rises));
  }
  return out;
}

}  // namespace phasespace
