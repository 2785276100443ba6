#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phasespace/config.hpp"
#include "phasespace/errors.hpp"
#include "phasespace/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw phasespace::ConfigError("cannot write output file '" + path + "'");
  out << text;
  if (!out) throw phasespace::ConfigError("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space simulations of coupled oscillators and Gaussian open systems"};
  app.set_version_flag("--version", phasespace::kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format;
  bool dump = false;
  app.add_option("--config", config_path, "Configuration file (key = value lines)");
  app.add_option("--set", overrides, "Override one configuration key, KEY=VALUE")
      ->take_all()
      ->allow_extra_args(false);
  app.add_option("--out", out_path, "Output file (default: standard output)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--dump-config", dump, "Print the resolved configuration and exit");

  auto* fig1 = app.add_subcommand("fig1", "Mutual information and negativities versus rotation angle");
  auto* fig3 = app.add_subcommand("fig3", "Fidelity and coherence of a mode coupled to a thermal bath");
  auto* query = app.add_subcommand("query", "Print a single quantity");
  std::string query_kind;
  query->add_option("kind", query_kind, "eigen, fidelity, coherence or negativity")
      ->check(CLI::IsMember({"eigen", "fidelity", "coherence", "negativity"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    phasespace::ExperimentConfig config =
        config_path.empty() ? phasespace::ExperimentConfig{} : phasespace::load_config_file(config_path);
    for (const auto& assignment : overrides) phasespace::apply_override(config, assignment);
    if (fig1->parsed()) config.experiment = "fig1";
    if (fig3->parsed()) config.experiment = "fig3";
    if (query->parsed() && !query_kind.empty()) config.experiment = query_kind;
    if (!out_path.empty()) config.output_path = out_path;
    if (!format.empty()) phasespace::set_config_value(config, "output.format", format);
    config.validate();

    if (dump) {
      std::cout << phasespace::dump_config(config) << std::flush;
      return 0;
    }
    if (fig1->parsed()) {
      emit(phasespace::format_fig1(phasespace::run_fig1(config), config), config.output_path);
    } else if (fig3->parsed()) {
      emit(phasespace::format_fig3(phasespace::run_fig3(config), config), config.output_path);
    } else {
      emit(phasespace::run_query(config) + "\n", config.output_path);
    }
    return 0;
  } catch (const phasespace::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}
