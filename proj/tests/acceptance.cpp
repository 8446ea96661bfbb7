// Acceptance suite: one binary, one pass/fail line per criterion.
//   acceptance [--criterion n] [--cli path-to-skm]
// Exit code is the number of failed criteria.
#include "skm/commands.hpp"
#include "skm/stats.hpp"

#include "support/oracles.hpp"
#include "support/test_stats.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace skm;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    } else {
      detail += (detail.empty() ? "" : "; ") + what + " [ok]";
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void progress(const std::string& msg) { std::cerr << "  .. " << msg << "\n"; }

// ---------------------------------------------------------------- criterion 1
// Simulator agreement at sc=10: medians of X1 at t in {10,30,50} within 2
// molecules of Gillespie, IQR endpoints within 3.
Check criterion_1() {
  Check c;
  const double sc = 10.0;
  auto net = autoreg_network(sc);
  const int reps = 5000;
  const std::vector<double> times{10.0, 30.0, 50.0};
  EngineFlags flags;

  auto collect = [&](Engine engine, std::uint64_t seed) {
    std::vector<std::vector<double>> x1(times.size(), std::vector<double>(reps));
    parallel_for(reps, 2, [&](int rep) {
      RngStream rng(seed, rep);
      Trajectory traj;
      switch (engine) {
        case Engine::Gillespie: {
          SsaConfig cfg;
          cfg.t_end = 50.0;
          cfg.record = SsaConfig::Record::Grid;
          cfg.grid_dt = 1.0;
          traj = simulate_gillespie(net, net.rate_constants(), Vec::Zero(2), cfg, rng);
          break;
        }
        case Engine::HybridLna:
          traj = simulate_hybrid_lna(net, net.rate_constants(), Vec::Zero(2), 50.0,
                                     flags.hybrid_config(), rng);
          break;
        default:
          traj = simulate_hybrid_sde(net, net.rate_constants(), Vec::Zero(2), 50.0,
                                     flags.cle_config(), flags.classify_config(), rng);
      }
      auto samples = sample_at_grid(traj, times);
      for (size_t ti = 0; ti < times.size(); ++ti) x1[ti][rep] = samples[ti].x[0];
    });
    return x1;
  };

  progress("gillespie x 5000");
  auto ref = collect(Engine::Gillespie, 1001);
  progress("hybrid-lna x 5000");
  auto lna = collect(Engine::HybridLna, 1002);
  progress("hybrid-sde x 5000");
  auto sde = collect(Engine::HybridSde, 1003);

  for (size_t ti = 0; ti < times.size(); ++ti) {
    const double med_ref = quantile(ref[ti], 0.5);
    const double q25_ref = quantile(ref[ti], 0.25);
    const double q75_ref = quantile(ref[ti], 0.75);
    for (auto* other : {&lna, &sde}) {
      const char* name = (other == &lna) ? "hybrid-lna" : "hybrid-sde";
      const double med = quantile((*other)[ti], 0.5);
      const double q25 = quantile((*other)[ti], 0.25);
      const double q75 = quantile((*other)[ti], 0.75);
      c.expect(std::fabs(med - med_ref) <= 2.0,
               std::string(name) + " median t=" + fmt(times[ti]) + " diff " +
                   fmt(std::fabs(med - med_ref)));
      c.expect(std::fabs(q25 - q25_ref) <= 3.0 && std::fabs(q75 - q75_ref) <= 3.0,
               std::string(name) + " IQR t=" + fmt(times[ti]) + " diffs " +
                   fmt(std::fabs(q25 - q25_ref)) + "/" + fmt(std::fabs(q75 - q75_ref)));
    }
  }
  return c;
}

// ---------------------------------------------------------------- criterion 2
// Probable-bound calibration on an immigration-death fast subsystem with a
// first-order slow readout.
Check criterion_2() {
  Check c;
  const double c1 = 100.0, c3 = 1.0, cs = 1.0;
  const double x0v = 130.0;  // transient start, eta decays toward 100
  const double dt = 0.5;
  IMat u(3, 2), v(3, 2);
  u << 0, 0, 1, 0, 1, 0;
  v << 1, 0, 0, 0, 1, 1;
  Vec cr(3);
  cr << c1, c3, cs;
  auto net = ReactionNetwork::create({"A", "B"}, u, v, cr);
  Vec x0(2);
  x0 << x0v, 0.0;
  ClassifyConfig ccfg;  // A fast at 130, readout slow via B at 0
  auto part = classify_reactions(net, net.rate_constants(), x0, ccfg);
  if (part.slow_reactions != std::vector<int>{2} || !part.is_fast_species[0]) {
    c.expect(false, "partition setup");
    return c;
  }

  OdeConfig ocfg;
  auto res = integrate_lna(net, part, net.rate_constants(), x0, dt, ocfg);

  // oracle path simulation: 1-dim deviation dM = -c3 M dt + beta(eta(t)) dW
  auto run_mc = [&](double bound_eps, long n_paths, std::uint64_t seed) {
    const double h_max =
        probable_bound(res.maxima, res.state.tau, bound_eps, 2).h_s_max;
    const long n_steps = 500;
    const double h_step = dt / n_steps;
    long exceed = 0;
    for (long p = 0; p < n_paths; ++p) {
      RngStream rng(seed, p);
      double m = 0.0;
      double worst = -1e300;
      for (long s = 0; s <= n_steps; ++s) {
        const double t = s * h_step;
        const double eta = oracles::imm_death_mean(c1, c3, x0v, t);
        const double lam = cs * (eta + m);  // lambda^s(eta) + b* M
        worst = std::max(worst, lam);
        if (s == n_steps) break;
        const double beta = std::sqrt(c1 + c3 * eta);
        m += -c3 * m * h_step +
             beta * std::sqrt(h_step) * draw_standard_normal(rng);
      }
      if (worst > h_max) ++exceed;
    }
    return static_cast<double>(exceed) / n_paths;
  };

  progress("bound_eps=0.05, 10^4 deviation paths");
  const double freq_05 = run_mc(0.05, 10000, 2001);
  const double limit = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 10000.0);
  c.expect(freq_05 <= limit,
           "exceedance at eps=0.05: " + fmt(freq_05) + " <= " + fmt(limit));

  progress("bound_eps=1e-6, 10^5 intervals");
  const double freq_6 = run_mc(1e-6, 100000, 2002);
  c.expect(freq_6 == 0.0, "exceedance at eps=1e-6: " + fmt(freq_6) + " == 0");
  return c;
}

// ---------------------------------------------------------------- criterion 3
// LNA exactness for immigration-death moments, relative 1e-3 at t in {.5,1,5}.
Check criterion_3() {
  Check c;
  const double c1 = 10.0, c3 = 0.5, x0v = 50.0;
  IMat u(2, 1), v(2, 1);
  u << 0, 1;
  v << 1, 0;
  Vec cr(2);
  cr << c1, c3;
  auto net = ReactionNetwork::create({"A"}, u, v, cr);
  Vec x0(1);
  x0 << x0v;
  ClassifyConfig ccfg{1e-9, 0.9, 0.9, 1e-9};  // both reactions fast
  auto part = classify_reactions(net, net.rate_constants(), x0, ccfg);
  for (double t : {0.5, 1.0, 5.0}) {
    auto res = integrate_lna(net, part, net.rate_constants(), x0, t, OdeConfig{});
    auto [mean, cov] = gaussian_at(res.state);
    const double m_exact = oracles::imm_death_mean(c1, c3, x0v, t);
    const double v_exact = oracles::imm_death_var(c1, c3, x0v, t);
    c.expect(std::fabs(mean[0] - m_exact) <= 1e-3 * m_exact,
             "mean t=" + fmt(t) + " rel err " +
                 fmt(std::fabs(mean[0] - m_exact) / m_exact));
    c.expect(std::fabs(cov(0, 0) - v_exact) <= 1e-3 * v_exact,
             "var t=" + fmt(t) + " rel err " +
                 fmt(std::fabs(cov(0, 0) - v_exact) / v_exact));
  }
  return c;
}

// ---------------------------------------------------------------- criterion 4
// All reactions forced slow: Hybrid-LNA X(5) distribution equals Gillespie's
// (two-sample chi-square on the joint histogram, 1e4 replicates, 1% level).
Check criterion_4() {
  Check c;
  auto net = autoreg_network(1.0);
  HybridConfig cfg;
  cfg.n_star = 1e30;  // classification can never pass: everything slow
  const int reps = 10000;
  auto bin_of = [](const Vec& x) {
    const int a = std::min<int>(static_cast<int>(x[0]), 19);
    const int b = std::min<int>(static_cast<int>(x[1]), 9);
    return a * 10 + b;
  };
  std::vector<long> h_hyb(200, 0), h_ssa(200, 0);
  progress("2 x 10^4 replicates over [0,5]");
  for (int rep = 0; rep < reps; ++rep) {
    RngStream r1(3001, rep);
    Vec x = Vec::Zero(2);
    advance_hybrid_lna(net, net.rate_constants(), x, 0.0, 5.0, cfg, r1);
    h_hyb[bin_of(x)] += 1;
    RngStream r2(3002, rep);
    Vec y = Vec::Zero(2);
    advance_gillespie(net, net.rate_constants(), y, 0.0, 5.0, r2);
    h_ssa[bin_of(y)] += 1;
  }
  const double p = test_stats::chi2_two_sample(h_hyb, h_ssa);
  c.expect(p > 0.01, "joint-histogram chi-square p = " + fmt(p));
  return c;
}

// ---------------------------------------------------------------- criterion 5
// Bootstrap log-ML vs exact truncated forward recursion (pure immigration,
// Poisson observations, T=10, N=5000, 50 repeats, within 2 SE).
Check criterion_5() {
  Check c;
  const double c1 = 2.0;
  IMat u(1, 1), v(1, 1);
  u << 0;
  v << 1;
  Vec cr(1);
  cr << c1;
  auto net = ReactionNetwork::create({"A"}, u, v, cr);

  // synthetic dataset from Gillespie truth
  SsaConfig scfg;
  scfg.t_end = 10.0;
  scfg.record = SsaConfig::Record::Grid;
  scfg.grid_dt = 1.0;
  RngStream drng(4001, 0);
  auto truth = simulate_gillespie(net, cr, Vec::Zero(1), scfg, drng);
  std::vector<double> times;
  for (int t = 0; t <= 10; ++t) times.push_back(t);
  auto states = sample_at_grid(truth, times);
  ObservationModel obs;
  Dataset data;
  data.times = times;
  int y_max = 0;
  std::vector<int> y_flat;
  for (const auto& s : states) {
    data.y.push_back(draw_observation(obs, s.x, drng));
    y_flat.push_back(data.y.back()[0]);
    y_max = std::max(y_max, y_flat.back());
  }

  const double exact =
      oracles::exact_log_ml_immigration(c1, 0, y_flat, 1.0, obs.bern_p, 10 * y_max);
  progress("exact log-ML = " + fmt(exact));

  EngineFlags flags;
  ForwardSimulator sim = make_simulator(Engine::Gillespie, net, flags);
  std::vector<double> est;
  RngStream rng(4002, 0);
  for (int rep = 0; rep < 50; ++rep)
    est.push_back(bootstrap_filter(net, sim, cr, data, obs, Vec::Zero(1), 5000, rng,
                                   2)
                      .log_ml);
  const double m = test_stats::mean(est);
  const double se = std::sqrt(test_stats::variance(est) / est.size());
  c.expect(std::fabs(m - exact) <= 2.0 * se,
           "mean log-ML " + fmt(m) + " vs exact " + fmt(exact) + " (|diff| " +
               fmt(std::fabs(m - exact)) + " <= 2 SE = " + fmt(2 * se) + ")");
  return c;
}

// ---------------------------------------------------------------- criterion 6
// Pseudo-marginal invariance: PMMH with the exact likelihood vs the bootstrap
// filter agree on the log c1 posterior (two-sample KS, 1% level, 10^4 thinned).
Check criterion_6() {
  Check c;
  const double c1_true = 2.0;
  IMat u(1, 1), v(1, 1);
  u << 0;
  v << 1;
  Vec cr(1);
  cr << c1_true;
  auto net = ReactionNetwork::create({"A"}, u, v, cr);

  SsaConfig scfg;
  scfg.t_end = 10.0;
  scfg.record = SsaConfig::Record::Grid;
  scfg.grid_dt = 1.0;
  RngStream drng(5001, 0);
  auto truth = simulate_gillespie(net, cr, Vec::Zero(1), scfg, drng);
  std::vector<double> times;
  for (int t = 0; t <= 10; ++t) times.push_back(t);
  auto states = sample_at_grid(truth, times);
  ObservationModel obs;
  Dataset data;
  data.times = times;
  int y_max = 1;
  for (const auto& s : states) {
    data.y.push_back(draw_observation(obs, s.x, drng));
    y_max = std::max(y_max, data.y.back()[0]);
  }
  const int s_max = 10 * y_max;  // the oracle's stated truncation

  std::vector<int> y_flat;
  for (const auto& yv : data.y) y_flat.push_back(yv[0]);
  LogLikEstimator exact_est = [&](const Vec& cc, RngStream&) {
    return oracles::exact_log_ml_immigration(cc[0], 0, y_flat, 1.0, obs.bern_p, s_max);
  };

  EngineFlags flags;
  ForwardSimulator sim = make_simulator(Engine::Gillespie, net, flags);

  progress("tuning particle count");
  RngStream trng(5002, 0);
  auto loglik_at_n = [&](int n, RngStream& r) {
    return bootstrap_filter(net, sim, cr, data, obs, Vec::Zero(1), n, r).log_ml;
  };
  const int n_particles = tune_particle_count(loglik_at_n, trng).n;
  progress("N = " + std::to_string(n_particles));

  PmmhOptions opt;
  opt.n_iter = 260000;
  opt.init_c = cr;
  opt.free_mask = {1};
  opt.proposal_cov = Mat::Identity(1, 1) * 0.09;  // sd 0.3 on log c1
  const long burn = 10000;
  const long thin = 25;

  progress("exact-likelihood chain");
  RngStream r1(5003, 0);
  auto exact_chain = pmmh(exact_est, opt, r1);

  progress("bootstrap chain");
  LogLikEstimator boot_est = [&](const Vec& cc, RngStream& r) {
    return bootstrap_filter(net, sim, cc, data, obs, Vec::Zero(1), n_particles, r)
        .log_ml;
  };
  RngStream r2(5004, 0);
  auto boot_chain = pmmh(boot_est, opt, r2);

  std::vector<double> a, b;
  for (long i = burn; i <= opt.n_iter && a.size() < 10000; i += thin) {
    a.push_back(exact_chain.log_c(i, 0));
    b.push_back(boot_chain.log_c(i, 0));
  }
  progress("KS on " + std::to_string(a.size()) + " thinned samples each");
  const double p = test_stats::ks_two_sample(a, b);
  c.expect(a.size() == 10000, "10^4 thinned samples");
  c.expect(p > 0.01, "two-sample KS p = " + fmt(p));
  c.expect(exact_chain.acceptance_rate() > 0.05, "exact chain mixes (acc " +
                                                     fmt(exact_chain.acceptance_rate()) +
                                                     ")");
  c.expect(boot_chain.acceptance_rate() > 0.05,
           "bootstrap chain mixes (acc " + fmt(boot_chain.acceptance_rate()) + ")");
  return c;
}

// ---------------------------------------------------------------- criterion 7
// Desk-scale inference experiment: sc=1 dataset on
// [0,50], c3 fixed, N=250, 2e4 PMMH iterations with Hybrid-LNA. True free
// log c_i inside the marginal 95% credible interval; acceptance in [5%, 15%].
Check criterion_7(const fs::path& workdir) {
  Check c;
  fs::create_directories(workdir);
  const fs::path data_path = workdir / "c7_data.csv";

  SynthOptions synth;
  synth.model = "autoreg";
  synth.sc = 1.0;
  synth.t_end = 50.0;
  synth.grid = 1.0;
  synth.seed = 71;
  synth.out = (workdir / "c7_data").string();
  // write dataset without the .csv suffix duplication
  {
    auto net = autoreg_network(1.0);
    SsaConfig cfg;
    cfg.t_end = 50.0;
    cfg.record = SsaConfig::Record::Grid;
    cfg.grid_dt = 1.0;
    RngStream rng(synth.seed, 0);
    auto truth = simulate_gillespie(net, net.rate_constants(), Vec::Zero(2), cfg, rng);
    std::vector<double> times;
    for (int t = 0; t <= 50; ++t) times.push_back(t);
    auto states = sample_at_grid(truth, times);
    ObservationModel obs;
    Dataset data;
    data.times = times;
    for (const auto& s : states) data.y.push_back(draw_observation(obs, s.x, rng));
    write_dataset_csv(data, data_path.string());
  }

  InferOptions opt;
  opt.model = "autoreg";
  opt.sc = 1.0;
  opt.data = data_path.string();
  opt.engine = "hybrid-lna";
  opt.particles = 250;
  opt.iters = 20000;
  opt.fix = {"c3"};
  opt.seed = 72;
  opt.threads = 2;
  opt.pilot_iters = 2000;
  opt.pilot_particles = 50;
  opt.out = (workdir / "c7").string();

  progress("pilot + gamma tuning + 2e4 iterations (this is the long one)");
  InferReport rep = run_infer(opt);

  const Vec true_c = autoreg_network(1.0).rate_constants();
  const long rows = rep.chain.log_c.rows();
  const long burn = rows / 10;
  const std::vector<std::string> names{"c1", "c2", "c3", "c4", "c5"};
  for (int i = 0; i < 5; ++i) {
    if (i == 2) continue;  // fixed
    std::vector<double> coord;
    for (long t = burn; t < rows; ++t) coord.push_back(rep.chain.log_c(t, i));
    const double lo = quantile(coord, 0.025), hi = quantile(coord, 0.975);
    const double truth = std::log(true_c[i]);
    c.expect(truth >= lo && truth <= hi,
             names[i] + ": log " + fmt(truth) + " in [" + fmt(lo) + ", " + fmt(hi) +
                 "]");
  }
  c.expect(rep.acceptance >= 0.05 && rep.acceptance <= 0.15,
           "acceptance " + fmt(rep.acceptance) + " in [0.05, 0.15]");
  progress("min ESS/sec = " + fmt(rep.min_ess_per_sec));
  return c;
}

// ---------------------------------------------------------------- criterion 8
// Performance crossover: at sc=1000 Hybrid-LNA costs at most half of
// Gillespie per trajectory (>= 200 trajectories each, wall clock).
Check criterion_8() {
  Check c;
  using Clock = std::chrono::steady_clock;
  EngineFlags flags;
  const int reps = 200;
  const double t_end = 50.0;

  // interleave the engines batch-wise so machine-load drift hits both equally
  auto time_pair = [&](double sc, Engine a, Engine b, std::uint64_t seed) {
    auto net = autoreg_network(sc);
    ForwardSimulator sim_a = make_simulator(a, net, flags);
    ForwardSimulator sim_b = make_simulator(b, net, flags);
    const int batch = 20;
    double total_a = 0.0, total_b = 0.0;
    for (int lo = 0; lo < reps; lo += batch) {
      const int hi = std::min(reps, lo + batch);
      auto t0 = Clock::now();
      for (int rep = lo; rep < hi; ++rep) {
        RngStream rng(seed, rep);
        Vec x = Vec::Zero(2);
        sim_a(x, 0.0, t_end, net.rate_constants(), rng);
      }
      total_a += std::chrono::duration<double>(Clock::now() - t0).count();
      t0 = Clock::now();
      for (int rep = lo; rep < hi; ++rep) {
        RngStream rng(seed + 1, rep);
        Vec x = Vec::Zero(2);
        sim_b(x, 0.0, t_end, net.rate_constants(), rng);
      }
      total_b += std::chrono::duration<double>(Clock::now() - t0).count();
    }
    return std::make_pair(total_a / reps, total_b / reps);
  };

  progress("sc=1000: gillespie and hybrid-lna, interleaved batches");
  const auto [ssa_1000, lna_1000] =
      time_pair(1000.0, Engine::Gillespie, Engine::HybridLna, 8001);
  progress("gillespie " + fmt(ssa_1000 * 1e3) + " ms/traj, hybrid-lna " +
           fmt(lna_1000 * 1e3) + " ms/traj");
  c.expect(lna_1000 <= 0.5 * ssa_1000,
           "sc=1000 ratio " + fmt(lna_1000 / ssa_1000) + " <= 0.5");

  // small sc: Gillespie may win (reported, not asserted)
  const auto [ssa_1, lna_1] = time_pair(1.0, Engine::Gillespie, Engine::HybridLna, 8003);
  progress("sc=1 ratio hybrid/gillespie = " + fmt(lna_1 / ssa_1) +
           " (no requirement)");
  return c;
}

// ---------------------------------------------------------------- criterion 9
// Determinism through the real CLI: identical seed + config give bit-identical
// trajectory and chain CSVs across runs and thread counts.
Check criterion_9(const std::string& cli, const fs::path& workdir) {
  Check c;
  if (cli.empty()) {
    c.expect(false, "path to the skm binary required (--cli)");
    return c;
  }
  fs::create_directories(workdir);
  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string base = (workdir / "r").string();

  progress("simulate twice, threads 1 vs 2");
  int rc1 = run("simulate --model autoreg --sc 10 --engine hybrid-lna --reps 6 "
                "--t-end 10 --seed 99 --threads 1 --emit-paths 2 --out " +
                base + "1");
  int rc2 = run("simulate --model autoreg --sc 10 --engine hybrid-lna --reps 6 "
                "--t-end 10 --seed 99 --threads 2 --emit-paths 2 --out " +
                base + "2");
  c.expect(rc1 == 0 && rc2 == 0, "simulate exit codes");
  c.expect(slurp(base + "1_quantiles.csv") == slurp(base + "2_quantiles.csv"),
           "quantile CSVs identical");
  c.expect(slurp(base + "1_path0.csv") == slurp(base + "2_path0.csv") &&
               slurp(base + "1_path1.csv") == slurp(base + "2_path1.csv"),
           "trajectory CSVs identical");

  progress("synth-data + infer twice, threads 1 vs 2");
  int rc3 = run("synth-data --model autoreg --sc 1 --t-end 20 --grid 1 --seed 5 "
                "--out " +
                base + "d");
  c.expect(rc3 == 0, "synth-data exit code");
  const std::string infer_common =
      "infer --model autoreg --sc 1 --data " + base +
      "d.csv --engine gillespie --particles 25 --iters 200 --fix c3 --seed 7 "
      "--gamma 0.05 --pilot-iters 200 --pilot-particles 10 --out ";
  int rc4 = run(infer_common + base + "i1 --threads 1");
  int rc5 = run(infer_common + base + "i2 --threads 2");
  c.expect(rc4 == 0 && rc5 == 0, "infer exit codes");
  c.expect(slurp(base + "i1_chain.csv") == slurp(base + "i2_chain.csv"),
           "chain CSVs identical across thread counts");

  int rc6 = run(infer_common + base + "i3 --threads 1");
  c.expect(rc6 == 0 && slurp(base + "i1_chain.csv") == slurp(base + "i3_chain.csv"),
           "chain CSVs identical across runs");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion n] [--cli path]\n";
      return 64;
    }
  }
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const fs::path workdir =
      fs::temp_directory_path() / ("skm_acceptance_" + std::to_string(::getpid()));

  int failures = 0;
  for (int n : which) {
    std::cerr << "criterion " << n << " ...\n";
    Check c;
    try {
      switch (n) {
        case 1: c = criterion_1(); break;
        case 2: c = criterion_2(); break;
        case 3: c = criterion_3(); break;
        case 4: c = criterion_4(); break;
        case 5: c = criterion_5(); break;
        case 6: c = criterion_6(); break;
        case 7: c = criterion_7(workdir); break;
        case 8: c = criterion_8(); break;
        case 9: c = criterion_9(cli, workdir); break;
        default:
          c.expect(false, "unknown criterion");
      }
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << c.detail
              << "\n";
    std::cout.flush();
    if (!c.ok) ++failures;
  }
  std::error_code ec;
  fs::remove_all(workdir, ec);
  return failures;
}
