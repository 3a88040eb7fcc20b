#pragma once

#include <qrm/datagen.hpp>
#include <qrm/ini.hpp>
#include <qrm/types.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qrm::cli {

// Flags shared by every subcommand. seed / trials < 0 defer to the config.
struct Options {
  std::string config_path;
  std::string out_dir = "out";
  int jobs = 0;
  long long seed = -1;
  int trials = -1;
};

struct Context {
  IniFile ini;
  std::string section;
  std::string out_dir;
  std::uint64_t seed = 0;
  int trials = 1;
  int jobs = 1;
  std::uint64_t config_hash = 0;

  std::string note() const;
  std::string path(const std::string& file) const;
};

// Loads the config, applies CLI overrides, creates out_dir. ConfigError on a
// missing file, section, or key (the CLI maps ConfigError to exit code 2).
Context make_context(const Options& opt, const std::string& section);

// Solver knobs from the command section; falls back to SolverConfig defaults.
// cfg.lambda is left at 0: every command sets it per instance as
// lambda_scale / ||f||^2 so one config value covers all noise realizations.
SolverConfig solver_config(const Context& ctx);

// The required "lambda" key (> 0), applied as cfg.lambda = value / ||f||^2.
double lambda_scale(const Context& ctx);

// body(i) for i in [0, n), dispatched over `jobs` workers; the aggregation
// order is the caller's, so results must be stored by index. Rethrows the
// first worker exception.
void parallel_for(int jobs, int n, const std::function<void(int)>& body);

// One randomized sparse-recovery instance; sub-streams are derived from the
// trial seed (tag 1 matrix, 2 signal, 3 noise) so the draws stay independent
// of dimension changes elsewhere in the sweep.
struct SignalInstance {
  DenseOperator a;
  Vec u_true;
  Vec f;
  std::vector<int> sup;
};
SignalInstance make_signal_instance(int m, int n, int s, double sigma,
                                    std::uint64_t trial_seed);

std::string format_sigma(double sigma);

}  // namespace qrm::cli
