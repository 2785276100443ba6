#include "phasespace/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "phasespace/errors.hpp"

namespace phasespace {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  if (trim(text).empty()) return parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, separator)) parts.push_back(trim(part));
  if (!text.empty() && text.back() == separator) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string value = trim(text);
  double result = 0.0;
  const auto [end, error] = std::from_chars(value.data(), value.data() + value.size(), result);
  if (error != std::errc() || end != value.data() + value.size() || value.empty() ||
      !std::isfinite(result)) {
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  }
  return result;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string value = trim(text);
  int result = 0;
  const auto [end, error] = std::from_chars(value.data(), value.data() + value.size(), result);
  if (error != std::errc() || end != value.data() + value.size() || value.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return result;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string value = trim(text);
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_double(key, part));
  return values;
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

struct Entry {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

Entry real(std::string key, double ExperimentConfig::*field) {
  return {key,
          [key, field](ExperimentConfig& c, const std::string& v) { c.*field = parse_double(key, v); },
          [field](const ExperimentConfig& c) { return format_double(c.*field); }};
}

Entry integer(std::string key, int ExperimentConfig::*field) {
  return {key,
          [key, field](ExperimentConfig& c, const std::string& v) { c.*field = parse_int(key, v); },
          [field](const ExperimentConfig& c) { return std::to_string(c.*field); }};
}

std::vector<Entry> state_entries(const std::string& prefix, StateSpec ExperimentConfig::*field) {
  return {
      {prefix + ".d",
       [prefix, field](ExperimentConfig& c, const std::string& v) {
         (c.*field).means = parse_list(prefix + ".d", v);
       },
       [field](const ExperimentConfig& c) { return format_list((c.*field).means); }},
      {prefix + ".sigma",
       [prefix, field](ExperimentConfig& c, const std::string& v) {
         (c.*field).covariance = parse_list(prefix + ".sigma", v);
       },
       [field](const ExperimentConfig& c) { return format_list((c.*field).covariance); }},
      {prefix + ".nbar",
       [prefix, field](ExperimentConfig& c, const std::string& v) {
         (c.*field).nbar = parse_double(prefix + ".nbar", v);
       },
       [field](const ExperimentConfig& c) { return format_double((c.*field).nbar); }},
  };
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back({"experiment",
                 [](ExperimentConfig& c, const std::string& v) { c.experiment = trim(v); },
                 [](const ExperimentConfig& c) { return c.experiment; }});
    e.push_back(real("physics.hbar", &ExperimentConfig::hbar));
    e.push_back(real("physics.mass", &ExperimentConfig::mass));
    e.push_back(real("physics.omega", &ExperimentConfig::omega));
    e.push_back(real("physics.gamma", &ExperimentConfig::coupling));
    e.push_back(real("physics.bath_rate", &ExperimentConfig::bath_rate));
    e.push_back(real("physics.bath_nbar", &ExperimentConfig::bath_nbar));
    e.push_back(integer("physics.k", &ExperimentConfig::k));
    e.push_back(integer("physics.l", &ExperimentConfig::l));
    e.push_back({"fig1.pairs",
                 [](ExperimentConfig& c, const std::string& v) {
                   std::vector<std::pair<int, int>> pairs;
                   for (const auto& part : split(v, ',')) {
                     const auto numbers = split(part, ':');
                     if (numbers.size() != 2) {
                       throw ConfigError("fig1.pairs: expected k:l entries, got '" + part + "'");
                     }
                     pairs.emplace_back(parse_int("fig1.pairs", numbers[0]),
                                        parse_int("fig1.pairs", numbers[1]));
                   }
                   c.fig1_pairs = std::move(pairs);
                 },
                 [](const ExperimentConfig& c) {
                   std::string out;
                   for (std::size_t i = 0; i < c.fig1_pairs.size(); ++i) {
                     if (i > 0) out += ',';
                     out += fmt::format("{}:{}", c.fig1_pairs[i].first, c.fig1_pairs[i].second);
                   }
                   return out;
                 }});
    e.push_back({"fig3.d",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.fig3_means = parse_list("fig3.d", v);
                 },
                 [](const ExperimentConfig& c) { return format_list(c.fig3_means); }});
    e.push_back(real("fig3.variance", &ExperimentConfig::fig3_variance));
    e.push_back({"fig3.include_uncoupled",
                 [](ExperimentConfig& c, const std::string& v) {
                   c.fig3_include_uncoupled = parse_bool("fig3.include_uncoupled", v);
                 },
                 [](const ExperimentConfig& c) {
                   return std::string(c.fig3_include_uncoupled ? "true" : "false");
                 }});
    for (auto& entry : state_entries("state1", &ExperimentConfig::state1)) e.push_back(entry);
    for (auto& entry : state_entries("state2", &ExperimentConfig::state2)) e.push_back(entry);
    e.push_back(integer("query.mode", &ExperimentConfig::query_mode));
    e.push_back(real("query.theta", &ExperimentConfig::query_theta));
    e.push_back(real("numeric.theta_step", &ExperimentConfig::theta_step));
    e.push_back(real("numeric.theta_max", &ExperimentConfig::theta_max));
    e.push_back(integer("numeric.hermite_nodes", &ExperimentConfig::hermite_nodes));
    e.push_back({"numeric.negativity_method",
                 [](ExperimentConfig& c, const std::string& v) {
                   const std::string method = trim(v);
                   if (method == "radial") {
                     c.negativity_method = NegativityMethod::radial;
                   } else if (method == "grid") {
                     c.negativity_method = NegativityMethod::grid;
                   } else {
                     throw ConfigError("numeric.negativity_method: expected radial or grid, got '" +
                                       v + "'");
                   }
                 },
                 [](const ExperimentConfig& c) {
                   return std::string(c.negativity_method == NegativityMethod::radial ? "radial"
                                                                                       : "grid");
                 }});
    e.push_back(integer("numeric.grid_points", &ExperimentConfig::grid_points));
    e.push_back(integer("numeric.grid_max_points", &ExperimentConfig::grid_max_points));
    e.push_back(real("numeric.negativity_tolerance", &ExperimentConfig::negativity_tolerance));
    e.push_back(real("numeric.time_max", &ExperimentConfig::time_max));
    e.push_back(real("numeric.time_step", &ExperimentConfig::time_step));
    e.push_back(real("numeric.max_step", &ExperimentConfig::max_step));
    e.push_back(integer("numeric.threads", &ExperimentConfig::threads));
    e.push_back({"output.path",
                 [](ExperimentConfig& c, const std::string& v) { c.output_path = trim(v); },
                 [](const ExperimentConfig& c) { return c.output_path; }});
    e.push_back({"output.format",
                 [](ExperimentConfig& c, const std::string& v) {
                   const std::string format = trim(v);
                   if (format == "csv") {
                     c.output_format = OutputFormat::csv;
                   } else if (format == "json") {
                     c.output_format = OutputFormat::json;
                   } else {
                     throw ConfigError("output.format: expected csv or json, got '" + v + "'");
                   }
                 },
                 [](const ExperimentConfig& c) {
                   return std::string(c.output_format == OutputFormat::csv ? "csv" : "json");
                 }});
    return e;
  }();
  return entries;
}

const Entry& find_entry(const std::string& key) {
  const auto& entries = registry();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&key](const Entry& e) { return e.key == key; });
  if (it == entries.end()) throw ConfigError("unknown configuration key '" + key + "'");
  return *it;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

}  // namespace

OscillatorParams ExperimentConfig::oscillator() const {
  return OscillatorParams{mass, omega, hbar, coupling};
}

ThermalBath ExperimentConfig::bath() const { return ThermalBath{bath_rate, bath_nbar}; }

GridConvergence ExperimentConfig::grid_convergence() const {
  return GridConvergence{grid_max_points, negativity_tolerance};
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> experiments{"fig1",     "fig3",      "eigen",
                                                    "fidelity", "coherence", "negativity"};
  require(std::find(experiments.begin(), experiments.end(), experiment) != experiments.end(),
          "experiment: unknown value '" + experiment + "'");
  try {
    oscillator().validate();
    bath().validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("physics: ") + e.what());
  }
  require(k >= 0 && l >= 0, "physics.k, physics.l: quantum numbers must be >= 0");
  require(!fig1_pairs.empty(), "fig1.pairs: at least one pair is required");
  for (const auto& [pk, pl] : fig1_pairs) {
    require(pk >= 0 && pl >= 0, "fig1.pairs: quantum numbers must be >= 0");
  }
  require(fig3_means.size() == 4, "fig3.d: four values (q1, p1, q2, p2) are required");
  require(fig3_variance >= 1.0, "fig3.variance: must be >= 1 (in units of hbar)");
  require(query_mode == 1 || query_mode == 2, "query.mode: must be 1 or 2");
  require(theta_step > 0.0 && theta_max >= 0.0, "numeric.theta_step/theta_max: invalid range");
  require(theta_max / theta_step <= 1e6, "numeric.theta_step: too many samples");
  require(hermite_nodes >= 0 && hermite_nodes <= 128, "numeric.hermite_nodes: must be in [0, 128]");
  require(grid_points >= 3 && grid_points % 2 == 1, "numeric.grid_points: must be odd and >= 3");
  require(grid_max_points >= grid_points, "numeric.grid_max_points: must be >= grid_points");
  require(negativity_tolerance > 0.0, "numeric.negativity_tolerance: must be positive");
  require(time_step > 0.0 && time_max > 0.0, "numeric.time_step/time_max: must be positive");
  require(time_max / time_step <= 1e7, "numeric.time_step: too many samples");
  require(max_step > 0.0, "numeric.max_step: must be positive");
  require(threads >= 0, "numeric.threads: must be >= 0");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& entry : registry()) keys.push_back(entry.key);
  return keys;
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
  find_entry(trim(key)).set(config, value);
}

std::string get_config_value(const ExperimentConfig& config, const std::string& key) {
  return find_entry(trim(key)).get(config);
}

void apply_config_text(ExperimentConfig& config, const std::string& text) {
  std::stringstream stream(text);
  std::string line;
  int number = 0;
  while (std::getline(stream, line)) {
    ++number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    if (trim(line).empty()) continue;
    const auto equals = line.find('=');
    if (equals == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", number));
    }
    set_config_value(config, line.substr(0, equals), line.substr(equals + 1));
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig config;
  apply_config_text(config, buffer.str());
  return config;
}

void apply_override(ExperimentConfig& config, const std::string& assignment) {
  const auto equals = assignment.find('=');
  if (equals == std::string::npos) {
    throw ConfigError("override '" + assignment + "': expected KEY=VALUE");
  }
  set_config_value(config, assignment.substr(0, equals), assignment.substr(equals + 1));
}

std::string dump_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& entry : registry()) out += entry.key + " = " + entry.get(config) + "\n";
  return out;
}

GaussianState make_state(const StateSpec& spec, double hbar) {
  if (spec.means.size() != 2) throw ConfigError("state: d needs two values (q, p)");
  Eigen::Matrix2d sigma;
  if (spec.covariance.empty()) {
    if (!(spec.nbar >= 0.0)) throw ConfigError("state: nbar must be >= 0");
    sigma = (2.0 * spec.nbar + 1.0) * hbar * Eigen::Matrix2d::Identity();
  } else if (spec.covariance.size() == 4) {
    sigma << spec.covariance[0], spec.covariance[1], spec.covariance[2], spec.covariance[3];
  } else {
    throw ConfigError("state: sigma needs four values (row-major 2x2)");
  }
  try {
    return GaussianState(Eigen::Vector2d(spec.means[0], spec.means[1]), sigma, hbar);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("state: ") + e.what());
  } catch (const UnphysicalStateError& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
}

}  // namespace phasespace
