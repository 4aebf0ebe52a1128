// sauq: declarative sensitivity-analysis / uncertainty-quantification study runner.
//
//   sauq run <config.yaml> [--seed N] [--threads N] [--output-dir PATH] [--format csv|json]
//   sauq validate <config.yaml>
//   sauq list-models

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sauq/config.hpp"
#include "sauq/registry.hpp"
#include "sauq/study.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensitivity analysis and uncertainty quantification study runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::optional<std::string> output_dir;
  sauq::OutputFormat format = sauq::OutputFormat::Csv;
  const std::map<std::string, sauq::OutputFormat> formats{{"csv", sauq::OutputFormat::Csv},
                                                          {"json", sauq::OutputFormat::Json}};

  auto* run = app.add_subcommand("run", "Run every method of a study configuration");
  run->add_option("config", config_path, "YAML study file")->required();
  run->add_option("--seed", seed, "Override the configured seed");
  run->add_option("--threads", threads, "Worker threads per method")->check(CLI::PositiveNumber);
  run->add_option("--output-dir", output_dir, "Override the configured output directory");
  run->add_option("--format", format, "Tabular output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  auto* validate = app.add_subcommand("validate", "Check a study configuration without running it");
  validate->add_option("config", config_path, "YAML study file")->required();

  auto* list = app.add_subcommand("list-models", "Print the registered models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  if (list->parsed()) {
    for (const auto& m : sauq::kModels) {
      const auto n = sauq::make_model(m.name).n_inputs();
      std::cout << m.name << "\t" << n << " inputs\t" << m.description << "\n";
    }
    return 0;
  }

  sauq::StudyConfig cfg;
  try {
    cfg = sauq::load_config(config_path);
  } catch (const sauq::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << config_path << ": " << e.what() << "\n";
    return kConfigError;
  }

  if (validate->parsed()) {
    std::cout << config_path << ": ok (" << cfg.methods.size() << " methods)\n";
    return 0;
  }

  if (seed) cfg.seed = *seed;
  if (output_dir) cfg.output_dir = *output_dir;
  try {
    const auto report = sauq::run_study(cfg, {threads, format});
    for (const auto& m : report.methods) {
      if (m.ok) {
        std::cout << m.label << ": ok";
        for (const auto& f : m.files) std::cout << " " << f;
        std::cout << "\n";
      } else {
        std::cerr << m.label << ": FAILED: " << m.error << "\n";
      }
    }
    std::cout << "outputs in " << cfg.output_dir.string() << "\n";
    return report.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
