#include "commands.hpp"

#include <qrm/baselines.hpp>
#include <qrm/io.hpp>
#include <qrm/metrics.hpp>
#include <qrm/rng.hpp>

#include <cmath>
#include <utility>

namespace qrm::cli {

namespace {

std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  const double t = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= t;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (t - 1.0) / t)};
}

std::uint64_t instance_seed(std::uint64_t seed, int trial, int m) {
  // Fresh draws per measurement count, per-trial streams offset linearly.
  return CounterRng::derive(seed + static_cast<std::uint64_t>(trial),
                            10000 + static_cast<std::uint64_t>(m));
}

struct MethodOutcome {
  double mse = 0.0;
  int theorem1_ok = -1;  // -1: not a quotient model, field left empty
  int nonzero = 0;
  int outer = 0;
  SolveStatus status = SolveStatus::Converged;
};

MethodOutcome outcome_of(const SolveResult<Vec>& res, const Vec& u_true) {
  MethodOutcome o;
  o.mse = mse(res.u, u_true);
  o.nonzero = res.u.norm() > 0.0 ? 1 : 0;
  o.outer = static_cast<int>(res.trace.size()) - 1;
  o.status = res.status;
  return o;
}

void detail_row(CsvWriter& w, const std::string& label, int m, int trial,
                const MethodOutcome& o) {
  w.row({label, std::to_string(m), std::to_string(trial),
         format_double(o.mse),
         o.theorem1_ok < 0 ? "" : std::to_string(o.theorem1_ok),
         std::to_string(o.nonzero), std::to_string(o.outer),
         to_string(o.status)});
}

const std::vector<std::string> kDetailCols = {
    "method", "m",       "trial", "mse",
    "theorem1_ok", "nonzero", "outer_iters", "status"};

}  // namespace

int cmd_bench_table1(const Options& opt) {
  const Context ctx = make_context(opt, "bench-table1");
  const int n = ctx.ini.get_int(ctx.section, "n", 512);
  const int s = ctx.ini.get_int(ctx.section, "s", 130);
  const double sigma = ctx.ini.get_double(ctx.section, "sigma", 0.1);
  const double mu = ctx.ini.get_double(ctx.section, "mu", 1.0);
  const double scale = lambda_scale(ctx);
  std::vector<int> m_list;
  if (ctx.ini.has(ctx.section, "m_list")) {
    m_list = ctx.ini.get_int_list(ctx.section, "m_list");
  } else {
    for (int m = 250; m <= 360; m += 10) m_list.push_back(m);
  }
  std::vector<int> k_list;
  if (ctx.ini.has(ctx.section, "k_list")) {
    k_list = ctx.ini.get_int_list(ctx.section, "k_list");
  } else {
    k_list = {10, 100, 150, n};
  }
  for (int k : k_list)
    if (k < 1 || k > n)
      throw ConfigError(ctx.ini.name() + ": key 'k_list' in [" + ctx.section +
                        "] must lie in 1.." + std::to_string(n));

  const int nm = static_cast<int>(m_list.size());
  const int nk = static_cast<int>(k_list.size());
  struct Trial {
    MethodOutcome baseline;
    std::vector<MethodOutcome> per_k;
  };
  std::vector<Trial> results(static_cast<std::size_t>(nm) * ctx.trials);

  const SolverConfig base_cfg = solver_config(ctx);
  parallel_for(ctx.jobs, nm * ctx.trials, [&](int task) {
    const int mi = task / ctx.trials;
    const int trial = task % ctx.trials;
    const int m = m_list[static_cast<std::size_t>(mi)];
    const SignalInstance inst = make_signal_instance(
        m, n, s, sigma, instance_seed(ctx.seed, trial, m));
    const SignalProblem pb(inst.a, inst.f);
    SolverConfig cfg = base_cfg;
    cfg.lambda = scale / inst.f.squaredNorm();

    Trial out;
    const SolveResult<Vec> init = l1_solve(pb, mu, cfg);
    out.baseline = outcome_of(init, inst.u_true);
    out.per_k.reserve(static_cast<std::size_t>(nk));
    for (int k : k_list) {
      const Regularizer reg =
          k == n ? Regularizer::l1_over_l2() : Regularizer::l1_over_sk(k);
      SolverConfig kc = cfg;
      kc.K = k;
      MethodOutcome o = outcome_of(qrm_solve(pb, reg, kc, init.u),
                                   inst.u_true);
      o.theorem1_ok = kc.lambda > theorem1_threshold(pb, reg) ? 1 : 0;
      out.per_k.push_back(o);
    }
    results[static_cast<std::size_t>(task)] = std::move(out);
  });

  auto label_of = [&](int k) {
    return k == n ? std::string("n") : std::to_string(k);
  };
  {
    CsvWriter w(ctx.path("table1.csv"), ctx.note(),
                {"K", "m", "mean_mse", "stderr_mse"});
    auto emit = [&](const std::string& label,
                    const std::function<double(int)>& cell_of_task) {
      for (int mi = 0; mi < nm; ++mi) {
        std::vector<double> xs;
        xs.reserve(static_cast<std::size_t>(ctx.trials));
        for (int t = 0; t < ctx.trials; ++t)
          xs.push_back(cell_of_task(mi * ctx.trials + t));
        const auto [mean, se] = mean_stderr(xs);
        w.row({label, std::to_string(m_list[static_cast<std::size_t>(mi)]),
               format_double(mean), format_double(se)});
      }
    };
    emit("baseline", [&](int t) {
      return results[static_cast<std::size_t>(t)].baseline.mse;
    });
    for (int ki = 0; ki < nk; ++ki)
      emit(label_of(k_list[static_cast<std::size_t>(ki)]), [&](int t) {
        return results[static_cast<std::size_t>(t)]
            .per_k[static_cast<std::size_t>(ki)]
            .mse;
      });
  }
  {
    CsvWriter w(ctx.path("table1_details.csv"), ctx.note(), kDetailCols);
    for (int mi = 0; mi < nm; ++mi)
      for (int t = 0; t < ctx.trials; ++t) {
        const Trial& tr = results[static_cast<std::size_t>(mi * ctx.trials + t)];
        const int m = m_list[static_cast<std::size_t>(mi)];
        detail_row(w, "baseline", m, t, tr.baseline);
        for (int ki = 0; ki < nk; ++ki)
          detail_row(w, label_of(k_list[static_cast<std::size_t>(ki)]), m, t,
                     tr.per_k[static_cast<std::size_t>(ki)]);
      }
  }
  return 0;
}

int cmd_bench_table2(const Options& opt) {
  const Context ctx = make_context(opt, "bench-table2");
  const int n = ctx.ini.get_int(ctx.section, "n", 512);
  const int s = ctx.ini.get_int(ctx.section, "s", 130);
  const double sigma = ctx.ini.get_double(ctx.section, "sigma", 0.1);
  const double mu = ctx.ini.get_double(ctx.section, "mu", 1.0);
  const int k = ctx.ini.get_int(ctx.section, "k", 100);
  if (k < 1 || k > n)
    throw ConfigError(ctx.ini.name() + ": key 'k' in [" + ctx.section +
                      "] must lie in 1.." + std::to_string(n));
  const double scale = lambda_scale(ctx);
  // Each quotient model carries its own fidelity weight: the nonzero-solution
  // threshold and the useful shrinkage scale both depend on the regularizer.
  const double scale_l1l2 =
      ctx.ini.get_double(ctx.section, "lambda_l1l2", scale);
  const double scale_l1sk =
      ctx.ini.get_double(ctx.section, "lambda_l1sk", scale);
  if (scale_l1l2 <= 0.0 || scale_l1sk <= 0.0)
    throw ConfigError(ctx.ini.name() + ": per-model lambda keys in [" +
                      ctx.section + "] must be positive");
  std::vector<int> m_list;
  if (ctx.ini.has(ctx.section, "m_list")) {
    m_list = ctx.ini.get_int_list(ctx.section, "m_list");
  } else {
    for (int m = 240; m <= 360; m += 20) m_list.push_back(m);
  }

  // Method order fixed for the output tables; all four quotient solves share
  // the per-trial L1 solution as their starting point.
  const std::vector<std::string> methods = {
      "l1_baseline", "dca_l1l2", "dca_l1sk", "qrm_l1l2", "qrm_l1sk"};
  const int nm = static_cast<int>(m_list.size());
  struct Trial {
    std::vector<MethodOutcome> per_method;
    double oracle = 0.0;
  };
  std::vector<Trial> results(static_cast<std::size_t>(nm) * ctx.trials);

  const SolverConfig base_cfg = solver_config(ctx);
  parallel_for(ctx.jobs, nm * ctx.trials, [&](int task) {
    const int mi = task / ctx.trials;
    const int trial = task % ctx.trials;
    const int m = m_list[static_cast<std::size_t>(mi)];
    const SignalInstance inst = make_signal_instance(
        m, n, s, sigma, instance_seed(ctx.seed, trial, m));
    const SignalProblem pb(inst.a, inst.f);
    SolverConfig cfg = base_cfg;
    cfg.lambda = scale / inst.f.squaredNorm();
    cfg.K = k;

    const Regularizer l1l2 = Regularizer::l1_over_l2();
    const Regularizer l1sk = Regularizer::l1_over_sk(k);
    const double thr_l1l2 = theorem1_threshold(pb, l1l2);
    const double thr_l1sk = theorem1_threshold(pb, l1sk);

    SolverConfig cfg_l1l2 = cfg;
    cfg_l1l2.lambda = scale_l1l2 / inst.f.squaredNorm();
    SolverConfig cfg_l1sk = cfg;
    cfg_l1sk.lambda = scale_l1sk / inst.f.squaredNorm();

    Trial out;
    out.per_method.resize(methods.size());
    const SolveResult<Vec> init = l1_solve(pb, mu, cfg);
    out.per_method[0] = outcome_of(init, inst.u_true);
    auto quotient = [&](std::size_t slot, const SolveResult<Vec>& res,
                        const SolverConfig& c, double thr) {
      out.per_method[slot] = outcome_of(res, inst.u_true);
      out.per_method[slot].theorem1_ok = c.lambda > thr ? 1 : 0;
    };
    quotient(1, dca_solve(pb, l1l2, mu, cfg_l1l2, init.u), cfg_l1l2, thr_l1l2);
    quotient(2, dca_solve(pb, l1sk, mu, cfg_l1sk, init.u), cfg_l1sk, thr_l1sk);
    quotient(3, qrm_solve(pb, l1l2, cfg_l1l2, init.u), cfg_l1l2, thr_l1l2);
    quotient(4, qrm_solve(pb, l1sk, cfg_l1sk, init.u), cfg_l1sk, thr_l1sk);
    out.oracle = oracle_mse(inst.a, inst.sup, sigma);
    results[static_cast<std::size_t>(task)] = std::move(out);
  });

  {
    CsvWriter w(ctx.path("table2.csv"), ctx.note(),
                {"method", "m", "mean_mse", "stderr_mse"});
    auto emit = [&](const std::string& label,
                    const std::function<double(int)>& cell_of_task) {
      for (int mi = 0; mi < nm; ++mi) {
        std::vector<double> xs;
        xs.reserve(static_cast<std::size_t>(ctx.trials));
        for (int t = 0; t < ctx.trials; ++t)
          xs.push_back(cell_of_task(mi * ctx.trials + t));
        const auto [mean, se] = mean_stderr(xs);
        w.row({label, std::to_string(m_list[static_cast<std::size_t>(mi)]),
               format_double(mean), format_double(se)});
      }
    };
    for (std::size_t mi = 0; mi < methods.size(); ++mi)
      emit(methods[mi], [&](int t) {
        return results[static_cast<std::size_t>(t)].per_method[mi].mse;
      });
    emit("oracle",
         [&](int t) { return results[static_cast<std::size_t>(t)].oracle; });
  }
  {
    CsvWriter w(ctx.path("table2_details.csv"), ctx.note(), kDetailCols);
    for (int mi = 0; mi < nm; ++mi)
      for (int t = 0; t < ctx.trials; ++t) {
        const Trial& tr = results[static_cast<std::size_t>(mi * ctx.trials + t)];
        const int m = m_list[static_cast<std::size_t>(mi)];
        for (std::size_t me = 0; me < methods.size(); ++me)
          detail_row(w, methods[me], m, t, tr.per_method[me]);
        w.row({"oracle", std::to_string(m), std::to_string(t),
               format_double(tr.oracle), "", "", "", ""});
      }
  }
  return 0;
}

}  // namespace qrm::cli
