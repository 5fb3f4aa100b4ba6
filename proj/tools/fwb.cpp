// fwb — experiment harness for periodic Besov norms and the two-component
// Fornberg-Whitham system.
//
// Subcommands:
//   nonuniform       solver separation of the omega = +/-1 data branches
//   error-decay      solver-vs-family error rates at indices gamma and s
//   appendix-bounds  sin/cos Besov-norm brackets
//   properties       seeded invariant suite
//
// Each takes --config <json>, --out <dir>, --seed <int>; writes one CSV and
// report.json. Exit codes: 0 pass, 1 assertion failure, 2 configuration
// error, 3 solver blow-up in a required run.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fwb/experiments.hpp"
#include "fwb/version.hpp"

namespace {

struct CommonOpts {
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

void attach(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config (defaults used when absent)");
  cmd->add_option("--out", opts.out, "output directory (overrides config)");
  cmd->add_option("--seed", opts.seed, "seed override");
}

fwb::ExperimentConfig resolve(const CommonOpts& opts) {
  fwb::ExperimentConfig config =
      opts.config_path ? fwb::ExperimentConfig::load(*opts.config_path) : fwb::ExperimentConfig{};
  if (opts.out) config.out = *opts.out;
  if (opts.seed) config.seed = *opts.seed;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Besov-norm and Fornberg-Whitham experiment harness"};
  app.set_version_flag("--version", std::string(fwb::kVersion));
  app.require_subcommand(1);

  CommonOpts opts;
  CLI::App* nonuniform = app.add_subcommand(
      "nonuniform", "separation of solutions from converging data branches");
  CLI::App* error_decay = app.add_subcommand(
      "error-decay", "decay of the solver-vs-family error in n");
  CLI::App* appendix = app.add_subcommand(
      "appendix-bounds", "norm brackets for sin(nx), cos(nx)");
  CLI::App* properties = app.add_subcommand("properties", "seeded invariant suite");
  for (CLI::App* cmd : {nonuniform, error_decay, appendix, properties}) attach(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    const fwb::ExperimentConfig config = resolve(opts);
    int code = fwb::kExitConfigError;
    if (nonuniform->parsed()) {
      code = fwb::run_nonuniform(config).exit_code;
    } else if (error_decay->parsed()) {
      code = fwb::run_error_decay(config).exit_code;
    } else if (appendix->parsed()) {
      code = fwb::run_appendix_bounds(config).exit_code;
    } else if (properties->parsed()) {
      const fwb::PropertiesReport rep = fwb::run_properties(config);
      for (const fwb::PropertyOutcome& o : rep.outcomes) {
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << o.name
                  << "  measured=" << o.measured << " threshold=" << o.threshold;
        if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
        std::cout << '\n';
      }
      code = rep.exit_code;
    }
    if (code == fwb::kExitPass) {
      std::cout << "ok: reports written to " << config.out << '\n';
    } else {
      std::cerr << "finished with exit code " << code << "; see " << config.out
                << "/report.json\n";
    }
    return code;
  } catch (const fwb::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return fwb::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fwb::kExitConfigError;
  }
}
