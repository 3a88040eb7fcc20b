#include "harness.hpp"

#include <qrm/io.hpp>
#include <qrm/rng.hpp>

#include <atomic>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

namespace qrm::cli {

std::string Context::note() const { return csv_note(config_hash, seed); }

std::string Context::path(const std::string& file) const {
  return out_dir + "/" + file;
}

Context make_context(const Options& opt, const std::string& section) {
  Context ctx;
  ctx.ini = IniFile::load(opt.config_path);
  ctx.section = section;
  if (!ctx.ini.has_section(section))
    throw ConfigError(ctx.ini.name() + ": missing section [" + section + "]");
  ctx.config_hash = fnv1a64(ctx.ini.text());
  ctx.seed = opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed)
                           : ctx.ini.get_u64(section, "seed", 1);
  ctx.trials = opt.trials >= 0 ? opt.trials : ctx.ini.get_int(section, "trials", 20);
  if (ctx.trials < 1) throw ConfigError("trials must be >= 1");
  ctx.jobs = opt.jobs > 0
                 ? opt.jobs
                 : std::max(1u, std::thread::hardware_concurrency());
  ctx.out_dir = opt.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + ctx.out_dir +
                      "': " + ec.message());
  return ctx;
}

SolverConfig solver_config(const Context& ctx) {
  SolverConfig cfg;
  cfg.beta = ctx.ini.get_double(ctx.section, "beta", cfg.beta);
  cfg.rho = ctx.ini.get_double(ctx.section, "rho", cfg.rho);
  cfg.eps = ctx.ini.get_double(ctx.section, "eps", cfg.eps);
  cfg.k_max = ctx.ini.get_int(ctx.section, "k_max", cfg.k_max);
  cfg.j_max = ctx.ini.get_int(ctx.section, "j_max", cfg.j_max);
  cfg.seed = ctx.seed;
  return cfg;
}

double lambda_scale(const Context& ctx) {
  const double v = ctx.ini.get_double(ctx.section, "lambda");
  if (!(v > 0.0))
    throw ConfigError(ctx.ini.name() + ": key 'lambda' in [" + ctx.section +
                      "] must be > 0");
  return v;
}

void parallel_for(int jobs, int n, const std::function<void(int)>& body) {
  if (n <= 0) return;
  if (jobs <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min(jobs, n);
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

SignalInstance make_signal_instance(int m, int n, int s, double sigma,
                                    std::uint64_t trial_seed) {
  DenseOperator a =
      gen_gaussian_matrix(m, n, CounterRng::derive(trial_seed, 1));
  Vec u_true = gen_sparse_signal(n, s, CounterRng::derive(trial_seed, 2));
  Vec f =
      add_noise(a.apply(u_true), sigma, CounterRng::derive(trial_seed, 3));
  std::vector<int> sup = support(u_true);
  return SignalInstance{std::move(a), std::move(u_true), std::move(f),
                        std::move(sup)};
}

std::string format_sigma(double sigma) { return format_double(sigma); }

}  // namespace qrm::cli
