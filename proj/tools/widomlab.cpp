// Experiment runner: parses a config, executes the pipeline, writes CSV/JSON
// reports. Exit code 0 on pass, 2 on tolerance failure, 1 on error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "widomlab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"widomlab: semiclassical trace asymptotics and free-fermion entropy experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool have_seed = false;
  bool no_cache = false;
  int jobs = 0;

  std::vector<std::string> kinds = {"trace2",          "traceF",    "gamma-decay",
                                    "entropy-lattice", "entropy-continuum",
                                    "roccaforte",      "lemma51",   "fit"};
  for (const auto& kind : kinds) {
    auto* sub = app.add_subcommand(kind);
    sub->add_option("--config", config_path, "experiment config file")->required();
    sub->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
      have_seed = true;
    });
    sub->add_flag("--no-cache", no_cache, "disable the trace cache");
    sub->add_option("--out-dir", out_dir, "report output directory");
    sub->add_option("--jobs", jobs, "worker threads for grid dispatch");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = widomlab::cli::parse_config_file(config_path);
    const std::string requested = app.get_subcommands().front()->get_name();
    if (widomlab::cli::to_string(config.kind) != requested)
      throw widomlab::ConfigError("config declares kind '" +
                                  widomlab::cli::to_string(config.kind) +
                                  "' but the subcommand is '" + requested + "'");
    if (have_seed) config.seed = seed;
    if (no_cache) config.no_cache = true;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (jobs > 0) config.jobs = jobs;
    config.echo = widomlab::cli::canonical_text(config);

    auto report = widomlab::cli::run(config);
    std::string csv = widomlab::cli::write_report(report, config.out_dir);

    for (const auto& fit : report.fits) {
      std::cout << (fit.pass ? "[pass] " : "[FAIL] ") << fit.label << " = " << fit.coefficient;
      if (fit.target != 0.0 || fit.label.rfind("log", 0) == 0)
        std::cout << " (target " << fit.target << ", " << fit.status << ")";
      std::cout << "\n";
    }
    for (const auto& note : report.notes) std::cout << "  " << note << "\n";
    std::cout << "report: " << csv << "\n";
    return report.pass ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "widomlab: " << e.what() << "\n";
    return 1;
  }
}
