#include "commands.hpp"

#include <qrm/baselines.hpp>
#include <qrm/io.hpp>
#include <qrm/properties.hpp>
#include <qrm/rng.hpp>

namespace qrm::cli {

namespace {

int objective_increases(const std::vector<TraceRecord>& trace) {
  int bad = 0;
  for (std::size_t i = 2; i < trace.size(); ++i)
    if (trace[i].objective > trace[i - 1].objective *
                                 (1.0 + 1e-9))
      ++bad;
  return bad;
}

int leading_growth(const std::vector<TraceRecord>& trace) {
  int run = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].u_norm > trace[i - 1].u_norm)
      ++run;
    else
      break;
  }
  return run;
}

}  // namespace

int cmd_verify_theory(const Options& opt) {
  const Context ctx = make_context(opt, "verify-theory");
  const int m = ctx.ini.get_int(ctx.section, "m", 300);
  const int n = ctx.ini.get_int(ctx.section, "n", 512);
  const int s = ctx.ini.get_int(ctx.section, "s", 130);
  const double sigma = ctx.ini.get_double(ctx.section, "sigma", 0.1);
  const int k = ctx.ini.get_int(ctx.section, "k", 100);
  const int image_size = ctx.ini.get_int(ctx.section, "image_size", 64);
  const int image_lines = ctx.ini.get_int(ctx.section, "image_lines", 8);
  const double image_sigma =
      ctx.ini.get_double(ctx.section, "image_sigma", 0.01);
  const int cases = ctx.ini.get_int(ctx.section, "cases", 1000);
  const double mu = ctx.ini.get_double(ctx.section, "mu", 1.0);
  const double scale = lambda_scale(ctx);
  const SolverConfig base_cfg = solver_config(ctx);

  CsvWriter report(ctx.path("report.csv"), ctx.note(),
                   {"metric", "value"});
  auto put = [&](const std::string& name, const std::string& v) {
    report.row({name, v});
  };
  auto put_check = [&](const std::string& prefix, const PropertyCheck& c) {
    put(prefix + "_cases", std::to_string(c.cases));
    put(prefix + "_violations", std::to_string(c.violations));
    put(prefix + "_worst_rel_err", format_double(c.worst));
  };

  // Structural identity sweeps shared with the test suite.
  put_check("lemma1_l1l2", check_subgradient_identities(
                               Regularizer::l1_over_l2(), n, 0, cases, 1));
  put_check("lemma1_l1sk", check_subgradient_identities(
                               Regularizer::l1_over_sk(k), n, 0, cases, 2));
  put_check("lemma1_grad",
            check_subgradient_identities(Regularizer::grad_l1_over_l2(),
                                         image_size, image_size, cases, 3));
  put_check("homogeneity_l1l2",
            check_homogeneity(Regularizer::l1_over_l2(), n, 0, cases, 4));
  put_check("homogeneity_l1sk",
            check_homogeneity(Regularizer::l1_over_sk(k), n, 0, cases, 5));
  put_check("homogeneity_grad",
            check_homogeneity(Regularizer::grad_l1_over_l2(), image_size,
                              image_size, cases, 6));
  put_check("adjoint_dense",
            check_adjoint(gen_gaussian_matrix(
                              48, 96, CounterRng::derive(ctx.seed, 7)),
                          cases, 8));
  put_check("adjoint_radial",
            check_adjoint(RadialFourierOperator(
                              radial_mask(image_size, image_size, image_lines)),
                          cases, 9));
  put_check("adjoint_grad", check_grad_adjoint(image_size, image_size, cases, 10));

  // Objective decay per regularizer (signal pair + gradient case).
  const SignalInstance inst = make_signal_instance(m, n, s, sigma, ctx.seed);
  const SignalProblem pb(inst.a, inst.f);
  SolverConfig cfg = base_cfg;
  cfg.lambda = scale / inst.f.squaredNorm();
  cfg.K = k;
  const SolveResult<Vec> init = l1_solve(pb, mu, cfg);
  const SolveResult<Vec> fl2 =
      qrm_solve(pb, Regularizer::l1_over_l2(), cfg, init.u);
  const SolveResult<Vec> fsk =
      qrm_solve(pb, Regularizer::l1_over_sk(k), cfg, init.u);
  write_trace_csv(ctx.path("objective_l1l2.csv"), fl2.trace, ctx.note());
  write_trace_csv(ctx.path("objective_l1sk.csv"), fsk.trace, ctx.note());

  const Image truth = shepp_logan(image_size, image_size);
  const Mask mask = radial_mask(image_size, image_size, image_lines);
  const RadialFourierOperator op(mask);
  const KSpace fim = add_noise(op.apply(truth), mask, image_sigma,
                               CounterRng::derive(ctx.seed, 11));
  const ImageProblem ipb(op, fim);
  SolverConfig icfg = base_cfg;
  icfg.lambda = scale / fim.squaredNorm();
  const SolveResult<Image> itv = l1_solve(ipb, mu, icfg);
  const SolveResult<Image> igr =
      qrm_solve(ipb, Regularizer::grad_l1_over_l2(), icfg, itv.u);
  write_trace_csv(ctx.path("objective_grad.csv"), igr.trace, ctx.note());

  put("objective_increases_l1l2", std::to_string(objective_increases(fl2.trace)));
  put("objective_increases_l1sk", std::to_string(objective_increases(fsk.trace)));
  put("objective_increases_grad", std::to_string(objective_increases(igr.trace)));

  // Norm monotonicity, started above and below the measurement norm.
  SolverConfig mcfg = base_cfg;
  mcfg.lambda = scale / inst.f.squaredNorm();
  mcfg.beta = ctx.ini.get_double(ctx.section, "fig3_beta", mcfg.beta);
  mcfg.k_max = ctx.ini.get_int(ctx.section, "fig3_k_max", mcfg.k_max);
  const double above = ctx.ini.get_double(ctx.section, "above_scale", 2.0);
  const double below = ctx.ini.get_double(ctx.section, "below_scale", 0.2);
  const Vec u0 = inst.a.apply_adjoint(inst.f);
  const MonotonicityReport rep = verify_norm_monotonicity(
      pb, Regularizer::l1_over_l2(), mcfg, u0, above, below);
  write_trace_csv(ctx.path("norm_case1.csv"), rep.above.result.trace,
                  ctx.note());
  write_trace_csv(ctx.path("norm_case2.csv"), rep.below.result.trace,
                  ctx.note());
  put("case1_au0_norm", format_double(rep.above.au0_norm));
  put("case2_au0_norm", format_double(rep.below.au0_norm));
  put("f_norm", format_double(rep.f_norm));
  put("case1_flags", std::to_string(rep.above.flagged.size()));
  put("case2_flags", std::to_string(rep.below.flagged.size()));
  put("case2_growth_iters",
      std::to_string(leading_growth(rep.below.result.trace)));
  return 0;
}

}  // namespace qrm::cli
