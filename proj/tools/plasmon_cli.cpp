// plasmon: command-line front end for the forward solver, sensitivity,
// reconstruction and table-reproduction experiments.

#include "plasmon/config.hpp"
#include "plasmon/errors.hpp"
#include "plasmon/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

std::string usage() {
  std::string s = "usage: plasmon <verb> [args] [--config PATH] [--seed N] [--out DIR]\n"
                  "               [--set key.path=value ...] [--workers N] [--oracle]\n"
                  "verbs:";
  for (const auto &v : plasmon::verb_names()) s += " " + v;
  s += "\n  repro-table takes one of 1, 2, 3, 4\n";
  return s;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Plasmon-resonance shape reconstruction experiments"};
  std::string verb;
  std::vector<std::string> args;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::vector<std::string> overrides;
  int workers = 1;
  bool oracle = false;

  app.add_option("verb", verb, "experiment to run")->required();
  app.add_option("args", args, "verb arguments");
  app.add_option("--config", config_path, "YAML experiment config");
  app.add_option("--seed", seed, "RNG seed (overrides run.seed)");
  app.add_option("--out", out_dir, "output directory (overrides run.out)");
  app.add_option("--set", overrides, "override a config value, key.path=value");
  app.add_option("--workers", workers, "worker threads for independent runs")
      ->check(CLI::PositiveNumber);
  app.add_flag("--oracle", oracle, "forward: compare with the series solution (disk only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    std::cout << app.help() << "\n" << usage();
    return 0;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n" << usage();
    return 2;
  }

  try {
    plasmon::ExperimentConfig cfg = plasmon::load_config(config_path, overrides);
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    plasmon::RunOptions opts;
    opts.out_dir = cfg.out_dir;
    opts.workers = workers;
    opts.oracle = oracle;
    plasmon::run_verb(verb, args, cfg, opts, std::cout);
    std::cout << "wrote " << opts.out_dir.string() << "/manifest.json\n";
  } catch (const plasmon::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    if (std::string(e.what()).rfind("unknown verb", 0) == 0) std::cerr << usage();
    return 2;
  } catch (const plasmon::NumericalError &e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
