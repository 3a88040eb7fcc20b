#include "commands.hpp"

#include <qrm/ini.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>

namespace {

void add_common_flags(CLI::App* sub, qrm::cli::Options& opt) {
  sub->add_option("--config", opt.config_path, "INI config file")
      ->required();
  sub->add_option("--seed", opt.seed,
                  "Override the seed key of the command section");
  sub->add_option("--trials", opt.trials,
                  "Override the trials key of the command section");
  sub->add_option("--jobs", opt.jobs,
                  "Worker threads (default: hardware concurrency)");
  sub->add_option("--out-dir", opt.out_dir, "Output directory")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quotient-regularization recovery: gradient-flow solvers, baselines "
      "and experiment tables"};
  app.require_subcommand(1);

  qrm::cli::Options opt;
  using Handler = int (*)(const qrm::cli::Options&);
  struct Entry {
    CLI::App* sub;
    Handler run;
  };
  std::vector<Entry> entries;
  auto add = [&](const char* name, const char* help, Handler run) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common_flags(sub, opt);
    entries.push_back({sub, run});
  };
  add("recover-signal", "One sparse-signal recovery solve",
      qrm::cli::cmd_recover_signal);
  add("recover-image", "One undersampled-Fourier image recovery solve",
      qrm::cli::cmd_recover_image);
  add("bench-table1", "K-sweep of the L1/S_K model over measurement counts",
      qrm::cli::cmd_bench_table1);
  add("bench-table2", "Method comparison over measurement counts",
      qrm::cli::cmd_bench_table2);
  add("bench-mri", "Radial-mask phantom reconstruction grid",
      qrm::cli::cmd_bench_mri);
  add("verify-theory",
      "Property sweeps, objective decay and norm monotonicity report",
      qrm::cli::cmd_verify_theory);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const Entry& e : entries)
      if (e.sub->parsed()) return e.run(opt);
  } catch (const qrm::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
