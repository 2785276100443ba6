#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phasespace/config.hpp"
#include "phasespace/errors.hpp"
#include "phasespace/experiments.hpp"

namespace ps = phasespace;

TEST(Config, DefaultsAreValid) {
  const ps::ExperimentConfig config;
  EXPECT_NO_THROW(config.validate());
  EXPECT_EQ(config.theta_step, std::numbers::pi / 200.0);
  EXPECT_EQ(config.theta_max, std::numbers::pi);
  EXPECT_EQ(ps::get_config_value(config, "fig1.pairs"), "1:0,2:1");
}

TEST(Config, ParsesTextAndOverrides) {
  ps::ExperimentConfig config;
  ps::apply_config_text(config, R"(
# comment line
experiment = fig3
physics.gamma = 0.25   # trailing comment
fig1.pairs = 3:0
fig3.d = 1, 0, 0.5, 0
fig3.include_uncoupled = false
output.format = json
)");
  EXPECT_EQ(config.experiment, "fig3");
  EXPECT_EQ(config.coupling, 0.25);
  ASSERT_EQ(config.fig1_pairs.size(), 1u);
  EXPECT_EQ(config.fig1_pairs[0], (std::pair{3, 0}));
  EXPECT_EQ(config.fig3_means, (std::vector<double>{1.0, 0.0, 0.5, 0.0}));
  EXPECT_FALSE(config.fig3_include_uncoupled);
  EXPECT_EQ(config.output_format, ps::OutputFormat::json);

  ps::apply_override(config, "physics.gamma=0.5");
  EXPECT_EQ(config.coupling, 0.5);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  ps::ExperimentConfig config;
  EXPECT_THROW(ps::apply_config_text(config, "physics.gama = 1\n"), ps::ConfigError);
  EXPECT_THROW(ps::apply_config_text(config, "physics.gamma 1\n"), ps::ConfigError);
  EXPECT_THROW(ps::apply_override(config, "physics.gamma=abc"), ps::ConfigError);
  EXPECT_THROW(ps::apply_override(config, "physics.k=1.5"), ps::ConfigError);
  EXPECT_THROW(ps::apply_override(config, "physics.gamma=nan"), ps::ConfigError);
  EXPECT_THROW(ps::apply_override(config, "fig1.pairs=1-0"), ps::ConfigError);
  EXPECT_THROW(ps::apply_override(config, "output.format=xml"), ps::ConfigError);
  EXPECT_THROW(ps::apply_override(config, "novalue"), ps::ConfigError);
  EXPECT_THROW(ps::load_config_file("/nonexistent/path.cfg"), ps::ConfigError);
}

TEST(Config, ValidationCatchesPhysicsErrors) {
  const auto invalid = [](const std::string& assignment) {
    ps::ExperimentConfig config;
    ps::apply_override(config, assignment);
    return config;
  };
  EXPECT_THROW(invalid("physics.mass=0").validate(), ps::ConfigError);
  EXPECT_THROW(invalid("physics.bath_rate=-1").validate(), ps::ConfigError);
  EXPECT_THROW(invalid("physics.k=-1").validate(), ps::ConfigError);
  EXPECT_THROW(invalid("numeric.grid_points=128").validate(), ps::ConfigError);
  EXPECT_THROW(invalid("experiment=fig2").validate(), ps::ConfigError);
  EXPECT_THROW(invalid("fig3.d=1,1").validate(), ps::ConfigError);
  EXPECT_THROW(invalid("query.mode=3").validate(), ps::ConfigError);
}

TEST(Config, DumpRoundTrip) {
  ps::ExperimentConfig config;
  ps::apply_override(config, "physics.gamma=0.123456789012345678");
  ps::apply_override(config, "state1.sigma=2,0.1,0.1,1");
  ps::apply_override(config, "numeric.negativity_method=grid");
  const std::string dumped = ps::dump_config(config);
  ps::ExperimentConfig reloaded;
  ps::apply_config_text(reloaded, dumped);
  EXPECT_EQ(ps::dump_config(reloaded), dumped);
  EXPECT_EQ(reloaded.coupling, config.coupling);
  for (const auto& key : ps::config_keys()) {
    EXPECT_NE(dumped.find(key + " = "), std::string::npos) << key;
  }
}

TEST(Experiments, QueryExamples) {
  ps::ExperimentConfig config;
  config.experiment = "eigen";
  config.k = 1;
  config.l = 0;
  config.coupling = 0.1;
  EXPECT_EQ(ps::run_query(config), "2.1");

  config.experiment = "coherence";
  config.state1.nbar = 3.0;
  EXPECT_EQ(ps::run_query(config), "0 bits");

  config.experiment = "fidelity";
  config.state1 = ps::StateSpec{};
  config.state2 = ps::StateSpec{{0.0, 0.0}, {}, 4.0};
  EXPECT_EQ(std::stod(ps::run_query(config)), 0.2);

  config.experiment = "negativity";
  EXPECT_NEAR(std::stod(ps::run_query(config)), 4.0 * std::exp(-0.5) - 2.0, 1e-12);
  config.negativity_method = ps::NegativityMethod::grid;
  EXPECT_NEAR(std::stod(ps::run_query(config)), 4.0 * std::exp(-0.5) - 2.0, 1e-4);

  config.experiment = "fig1";
  EXPECT_THROW(ps::run_query(config), ps::ConfigError);
}

TEST(Experiments, Fig1RowsAndSymmetry) {
  ps::ExperimentConfig config;
  config.fig1_pairs = {{1, 0}};
  config.theta_step = std::numbers::pi / 20.0;
  config.threads = 3;
  const auto runs = ps::run_fig1(config);
  ASSERT_EQ(runs.size(), 1u);
  const auto& rows = runs[0].rows;
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[0].theta, 0.0);
  EXPECT_NEAR(rows[0].mutual_information, 0.0, 1e-9);
  EXPECT_NEAR(rows[0].negativity_mode1, 0.42612, 1e-5);
  EXPECT_EQ(rows[0].negativity_mode2, 0.0);
  EXPECT_NEAR(rows[10].negativity_mode1, rows[0].negativity_mode2, 1e-6);
  EXPECT_NEAR(rows[10].negativity_mode2, rows[0].negativity_mode1, 1e-6);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].theta, rows[i - 1].theta);

  config.threads = 1;
  const auto serial = ps::run_fig1(config);
  EXPECT_EQ(ps::format_fig1(serial, config), ps::format_fig1(runs, config));
}

TEST(Experiments, Fig1PairTwoOneStartsWithBothNegativities) {
  ps::ExperimentConfig config;
  config.fig1_pairs = {{2, 1}};
  config.theta_max = 0.0;
  const auto runs = ps::run_fig1(config);
  ASSERT_EQ(runs[0].rows.size(), 1u);
  EXPECT_GT(runs[0].rows[0].negativity_mode1, 0.7);
  EXPECT_GT(runs[0].rows[0].negativity_mode2, 0.4);
}

TEST(Experiments, Fig1GridFailureNamesTheAngle) {
  ps::ExperimentConfig config;
  config.fig1_pairs = {{1, 0}};
  config.theta_max = 0.0;
  config.negativity_method = ps::NegativityMethod::grid;
  config.negativity_tolerance = 1e-12;
  config.grid_max_points = 257;
  try {
    ps::run_fig1(config);
    FAIL() << "expected a convergence error";
  } catch (const ps::ConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("theta = 0"), std::string::npos) << e.what();
  }
}

TEST(Experiments, Fig3RunsAndFormats) {
  ps::ExperimentConfig config;
  config.experiment = "fig3";
  const auto runs = ps::run_fig3(config);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].coupling, 0.1);
  EXPECT_EQ(runs[1].coupling, 0.0);
  EXPECT_EQ(runs[0].coherence_normalized.front(), 1.0);
  EXPECT_EQ(runs[0].scaled_times.size(), 1201u);
  EXPECT_GE(runs[0].backflow.size(), 1u);
  EXPECT_TRUE(runs[1].backflow.empty());

  const std::string csv = ps::format_fig3(runs, config);
  EXPECT_NE(csv.find("\nt,fidelity,coherence_normalized,coherence_raw\n0,"), std::string::npos);
  EXPECT_NE(csv.find("# backflow_intervals: ["), std::string::npos);
  EXPECT_NE(csv.find("# backflow_intervals: none"), std::string::npos);
  config.output_format = ps::OutputFormat::json;
  const std::string json = ps::format_fig3(runs, config);
  EXPECT_NE(json.find("\"coherence_normalized\""), std::string::npos);
  EXPECT_NE(json.find("\"tool_version\""), std::string::npos);
}

TEST(Experiments, ThetaGridIncludesEndpoint) {
  ps::ExperimentConfig config;
  const auto thetas = ps::theta_grid(config);
  ASSERT_EQ(thetas.size(), 201u);
  EXPECT_NEAR(thetas.back(), std::numbers::pi, 1e-12);
  EXPECT_NEAR(thetas[100], std::numbers::pi / 2.0, 1e-15);
}
