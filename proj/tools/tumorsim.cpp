// Command-line driver: simulate, linear and selfsimilar subcommands.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tumorbim/commands.hpp"

int main(int argc, char** argv) {
  using namespace tumorbim;
  CLI::App app{"Sharp-interface tumor growth simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->add_option("--set", overrides, "Override a field, e.g. --set numerics.ssd_prefactor=2");
    sub->add_option("--output-dir", output_dir, "Directory for CSV output");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "Evolve the interface");
  CLI::App* linear = app.add_subcommand("linear", "Write linear stability tables");
  CLI::App* selfsimilar = app.add_subcommand("selfsimilar", "Evolve with shape-preserving A(t)");
  add_common(simulate);
  add_common(linear);
  add_common(selfsimilar);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    cfg = parse_config(config_path, overrides);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(cfg, std::cout);
    if (*selfsimilar) return cmd_selfsimilar(cfg, std::cout);
    return cmd_linear(cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
}
