#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsexact/commands.hpp"

namespace {

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw nsexact::ConfigError("levels: cannot parse '" + item + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nsexact;

  CLI::App app{"curl-free exact Navier-Stokes flows: build, verify, export"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  long long seed = -1;
  int threads = 0;
  std::string axis;
  std::string levels_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file (key = value lines)")
        ->required();
    cmd->add_option("--out", out_dir, "output directory (default: current)");
    cmd->add_option("--seed", seed, "override the config seed");
    cmd->add_option("--threads", threads, "override the config worker count");
  };

  CLI::App* generate = app.add_subcommand("generate", "sample (u, p) on the grid to fields.csv");
  add_common(generate);
  CLI::App* verify = app.add_subcommand("verify", "run every check; report.txt + checks.csv");
  add_common(verify);
  CLI::App* sweep = app.add_subcommand("sweep", "refinement sweep to sweep.csv");
  add_common(sweep);
  sweep->add_option("--axis", axis, "quad-nodes | fd-step | trunc-radius");
  sweep->add_option("--levels", levels_text, "comma-separated refinement levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig config;
  try {
    config = parse_config_file(config_path);
    if (seed >= 0) config.seed = static_cast<unsigned>(seed);
    if (threads > 0) config.threads = threads;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (generate->parsed()) return cmd_generate(config, out_dir, std::cerr);
  if (verify->parsed()) return cmd_verify(config, out_dir, std::cout);

  std::vector<double> levels = config.sweep_levels;
  std::string sweep_axis = axis.empty() ? config.sweep_axis : axis;
  if (!levels_text.empty()) {
    try {
      levels = parse_levels(levels_text);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  return cmd_sweep(config, sweep_axis, levels, out_dir, std::cerr);
}
