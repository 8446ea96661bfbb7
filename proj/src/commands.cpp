#include "skm/commands.hpp"

#include "skm/stats.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace skm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Resampling parse_resampling(const std::string& name) {
  if (name == "multinomial") return Resampling::Multinomial;
  if (name == "systematic") return Resampling::Systematic;
  throw std::invalid_argument("unknown resampling scheme '" + name + "'");
}

Engine parse_engine(const std::string& name) {
  if (name == "gillespie") return Engine::Gillespie;
  if (name == "cle") return Engine::Cle;
  if (name == "hybrid-lna") return Engine::HybridLna;
  if (name == "hybrid-sde") return Engine::HybridSde;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Gillespie: return "gillespie";
    case Engine::Cle: return "cle";
    case Engine::HybridLna: return "hybrid-lna";
    case Engine::HybridSde: return "hybrid-sde";
  }
  return "?";
}

HybridConfig EngineFlags::hybrid_config() const {
  HybridConfig cfg;
  cfg.dt_hybrid = dt_hybrid;
  cfg.dt_integrate = dt_integrate;
  cfg.n_star = n_star;
  cfg.eps_star = eps_star;
  cfg.eps_hybrid = eps_hybrid;
  cfg.bound_eps = bound_eps;
  cfg.ode.rel_tol = ode_rtol;
  cfg.ode.abs_tol = ode_atol;
  cfg.ode.dense_grid = dense_grid;
  return cfg;
}

CleConfig EngineFlags::cle_config() const {
  CleConfig cfg;
  cfg.dt_euler = dt_euler;
  cfg.dt_hybrid = dt_hybrid;
  cfg.rewind_shrink = rewind_shrink;
  cfg.min_dt_hybrid = min_dt_hybrid;
  return cfg;
}

ClassifyConfig EngineFlags::classify_config() const {
  return {n_star, eps_star, eps_hybrid, dt_hybrid};
}

nlohmann::json EngineFlags::to_json() const {
  nlohmann::json j;
  j["dt_hybrid"] = dt_hybrid;
  j["dt_integrate"] = dt_integrate;
  j["n_star"] = n_star;
  j["eps_star"] = eps_star;
  j["eps_hybrid"] = eps_hybrid;
  j["bound_eps"] = bound_eps;
  j["ode_rtol"] = ode_rtol;
  j["ode_atol"] = ode_atol;
  j["dense_grid"] = dense_grid;
  j["dt_euler"] = dt_euler;
  j["rewind_shrink"] = rewind_shrink;
  j["min_dt_hybrid"] = min_dt_hybrid;
  j["max_events"] = max_events;
  return j;
}

ParsedModel load_model(const std::string& model, double sc) {
  if (model == "autoreg") {
    ParsedModel m;
    m.network = autoreg_network(sc);
    m.x0 = Vec::Zero(2);
    m.rate_names = {"c1", "c2", "c3", "c4", "c5"};
    return m;
  }
  return parse_model_file(model, {{"sc", sc}});
}

ForwardSimulator make_simulator(Engine engine, const ReactionNetwork& net,
                                const EngineFlags& flags) {
  switch (engine) {
    case Engine::Gillespie: {
      const long max_events = flags.max_events;
      return [&net, max_events](Vec& x, double t0, double t1, const Vec& c,
                                RngStream& rng) {
        advance_gillespie(net, c, x, t0, t1, rng, max_events);
      };
    }
    case Engine::Cle: {
      const double dt = flags.dt_euler;
      return [&net, dt](Vec& x, double t0, double t1, const Vec& c, RngStream& rng) {
        advance_cle(net, c, x, t0, t1, dt, rng);
      };
    }
    case Engine::HybridLna: {
      const HybridConfig cfg = flags.hybrid_config();
      return [&net, cfg](Vec& x, double t0, double t1, const Vec& c, RngStream& rng) {
        advance_hybrid_lna(net, c, x, t0, t1, cfg, rng);
      };
    }
    case Engine::HybridSde: {
      const CleConfig ccfg = flags.cle_config();
      const ClassifyConfig kcfg = flags.classify_config();
      return [&net, ccfg, kcfg](Vec& x, double t0, double t1, const Vec& c,
                                RngStream& rng) {
        advance_hybrid_sde(net, c, x, t0, t1, ccfg, kcfg, rng);
      };
    }
  }
  throw std::logic_error("unreachable");
}

void parallel_for(int count, int threads, const std::function<void(int)>& work) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, count);
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

Trajectory run_engine_recorded(Engine engine, const ReactionNetwork& net, const Vec& c,
                               const Vec& x0, double t_end, const EngineFlags& flags,
                               const std::string& record, double grid_dt,
                               RngStream& rng) {
  switch (engine) {
    case Engine::Gillespie: {
      SsaConfig cfg;
      cfg.t_end = t_end;
      cfg.record = record == "events" ? SsaConfig::Record::AllEvents
                                      : SsaConfig::Record::Grid;
      cfg.grid_dt = grid_dt;
      cfg.max_events = flags.max_events;
      return simulate_gillespie(net, c, x0, cfg, rng);
    }
    case Engine::Cle:
      return simulate_cle(net, c, x0, t_end, flags.dt_euler, rng,
                          record == "events" ? 0.0 : grid_dt);
    case Engine::HybridLna:
      return simulate_hybrid_lna(net, c, x0, t_end, flags.hybrid_config(), rng);
    case Engine::HybridSde:
      return simulate_hybrid_sde(net, c, x0, t_end, flags.cle_config(),
                                 flags.classify_config(), rng);
  }
  throw std::logic_error("unreachable");
}

void accumulate_meta(Trajectory::Meta& total, const Trajectory::Meta& rep) {
  total.events += rep.events;
  total.reclassifications += rep.reclassifications;
  total.bound_violations += rep.bound_violations;
  total.candidates += rep.candidates;
  total.rewinds += rep.rewinds;
  total.floor_fallbacks += rep.floor_fallbacks;
  total.negativity_clamps += rep.negativity_clamps;
  total.ginv_refactorizations += rep.ginv_refactorizations;
  total.stiff_fallback = total.stiff_fallback || rep.stiff_fallback;
  total.truncated = total.truncated || rep.truncated;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt) {
  const auto t_start = Clock::now();
  ParsedModel model = load_model(opt.model, opt.sc);
  const auto& net = model.network;
  const Engine engine = parse_engine(opt.engine);
  const int k = net.num_species();

  std::vector<double> times;
  for (double t = 0.0; t <= opt.t_end + 1e-9; t += opt.grid_dt) times.push_back(t);

  // values[time][species][rep]
  std::vector<std::vector<std::vector<double>>> values(
      times.size(),
      std::vector<std::vector<double>>(k, std::vector<double>(opt.reps)));
  const int n_emit = std::min(opt.emit_paths, opt.reps);
  std::vector<Trajectory> kept(n_emit);
  std::vector<Trajectory::Meta> metas(opt.reps);

  parallel_for(opt.reps, opt.threads, [&](int rep) {
    RngStream rng(opt.seed, opt.stream + static_cast<std::uint64_t>(rep));
    Trajectory traj = run_engine_recorded(engine, net, net.rate_constants(), model.x0,
                                          opt.t_end, opt.flags, opt.record,
                                          opt.grid_dt, rng);
    const auto samples = sample_at_grid(traj, times);
    for (size_t ti = 0; ti < times.size(); ++ti)
      for (int s = 0; s < k; ++s) values[ti][s][rep] = samples[ti].x[s];
    metas[rep] = traj.meta;
    if (rep < n_emit) kept[rep] = std::move(traj);
  });

  RunManifest man;
  man.command = "simulate";
  man.config = {{"model", opt.model},       {"sc", opt.sc},
                {"engine", opt.engine},     {"reps", opt.reps},
                {"t_end", opt.t_end},       {"grid_dt", opt.grid_dt},
                {"seed", opt.seed},         {"stream", opt.stream},
                {"threads", opt.threads},
                {"record", opt.record},     {"emit_paths", opt.emit_paths},
                {"engine_flags", opt.flags.to_json()}};
  man.seed = opt.seed;
  const std::string hash = config_hash(man.config);

  for (int i = 0; i < n_emit; ++i) {
    kept[i].meta.config_hash = hash;
    const std::string path = opt.out + "_path" + std::to_string(i) + ".csv";
    write_trajectory_csv(kept[i], path);
    man.outputs.push_back(path);
  }
  const std::string qpath = opt.out + "_quantiles.csv";
  write_quantile_csv(times, net.species_names(), values, qpath);
  man.outputs.push_back(qpath);

  if (!opt.lna_debug.empty()) {
    if (engine != Engine::HybridLna)
      throw std::invalid_argument("--lna-debug requires --engine hybrid-lna");
    LnaDense dense;
    RngStream rng(opt.seed, 0);
    simulate_hybrid_lna(net, net.rate_constants(), model.x0, opt.t_end,
                        opt.flags.hybrid_config(), rng, &dense);
    write_lna_dense_csv(dense, opt.lna_debug);
    man.outputs.push_back(opt.lna_debug);
  }

  Trajectory::Meta total;
  for (const auto& m : metas) accumulate_meta(total, m);
  man.counters = meta_counters(total);
  man.wall_seconds = seconds_since(t_start);
  man.write(opt.out + "_manifest.json");
  return 0;
}

int cmd_synth_data(const SynthOptions& opt) {
  const auto t_start = Clock::now();
  ParsedModel model = load_model(opt.model, opt.sc);
  const auto& net = model.network;

  SsaConfig cfg;
  cfg.t_end = opt.t_end;
  cfg.record = SsaConfig::Record::Grid;
  cfg.grid_dt = opt.grid;
  cfg.max_events = opt.flags.max_events;
  RngStream rng(opt.seed, opt.stream);
  Trajectory truth = simulate_gillespie(net, net.rate_constants(), model.x0, cfg, rng);

  std::vector<double> times;
  for (double t = 0.0; t <= opt.t_end + 1e-9; t += opt.grid) times.push_back(t);
  const auto states = sample_at_grid(truth, times);

  Dataset data;
  data.times = times;
  for (const auto& s : states) data.y.push_back(draw_observation(model.obs, s.x, rng));

  const std::string dpath = opt.out + ".csv";
  write_dataset_csv(data, dpath);
  const std::string tpath = opt.out + "_truth.csv";
  Trajectory truth_grid;
  truth_grid.meta = truth.meta;
  truth_grid.states = states;
  write_trajectory_csv(truth_grid, tpath);

  RunManifest man;
  man.command = "synth-data";
  man.config = {{"model", opt.model}, {"sc", opt.sc},   {"t_end", opt.t_end},
                {"grid", opt.grid},   {"seed", opt.seed}, {"stream", opt.stream},
                {"engine_flags", opt.flags.to_json()}};
  man.seed = opt.seed;
  man.counters = meta_counters(truth.meta);
  man.outputs = {dpath, tpath};
  man.wall_seconds = seconds_since(t_start);
  man.write(opt.out + "_manifest.json");
  return 0;
}

int cmd_benchmark(const BenchmarkOptions& opt) {
  const auto t_start = Clock::now();
  std::vector<BenchmarkRow> rows;
  for (double sc : opt.sc_list) {
    ParsedModel model = load_model(opt.model, sc);
    const auto& net = model.network;
    for (const auto& engine_str : opt.engines) {
      const Engine engine = parse_engine(engine_str);
      ForwardSimulator sim = make_simulator(engine, net, opt.flags);
      const auto t0 = Clock::now();
      parallel_for(opt.reps, opt.threads, [&](int rep) {
        RngStream rng(opt.seed, opt.stream + static_cast<std::uint64_t>(rep));
        Vec x = model.x0;
        sim(x, 0.0, opt.t_end, net.rate_constants(), rng);
      });
      rows.push_back({sc, engine_str, seconds_since(t0) / opt.reps});
    }
  }
  const std::string path = opt.out + ".csv";
  write_benchmark_csv(rows, path);

  RunManifest man;
  man.command = "benchmark";
  man.config = {{"model", opt.model},   {"sc_list", opt.sc_list},
                {"engines", opt.engines}, {"reps", opt.reps},
                {"t_end", opt.t_end},   {"seed", opt.seed},
                {"stream", opt.stream},  {"threads", opt.threads},
                {"engine_flags", opt.flags.to_json()}};
  man.seed = opt.seed;
  man.outputs = {path};
  man.wall_seconds = seconds_since(t_start);
  man.write(opt.out + "_manifest.json");
  return 0;
}

namespace {

std::vector<char> build_mask(const ParsedModel& model,
                             const std::vector<std::string>& fix) {
  std::vector<char> mask(model.network.num_reactions(), 1);
  for (const auto& name : fix) {
    bool found = false;
    for (size_t i = 0; i < model.rate_names.size(); ++i)
      if (model.rate_names[i] == name) {
        mask[i] = 0;
        found = true;
      }
    if (!found) throw std::invalid_argument("--fix: unknown parameter '" + name + "'");
  }
  bool any_free = false;
  for (char m : mask) any_free = any_free || m;
  if (!any_free) throw std::invalid_argument("--fix: all parameters fixed");
  return mask;
}

Vec posterior_mean_c(const PmmhChain& chain) {
  const long rows = chain.log_c.rows();
  const long from = rows / 2;
  Vec mean = Vec::Zero(chain.log_c.cols());
  for (long t = from; t < rows; ++t)
    mean += chain.log_c.row(t).array().exp().matrix().transpose();
  return mean / static_cast<double>(rows - from);
}

struct PilotResult {
  PmmhChain chain;
  Mat var_hat;
  Vec c_hat;
};

PilotResult run_pilot(const ReactionNetwork& net, const ForwardSimulator& sim,
                      const Dataset& data, const ObservationModel& obs,
                      const UniformLogPrior& prior, const Vec& init_c,
                      const std::vector<char>& mask, const Vec& x0, long pilot_iters,
                      int pilot_particles, int threads, RngStream& rng,
                      Resampling resampling) {
  Mat pilot_cov = Mat::Zero(net.num_reactions(), net.num_reactions());
  for (int i = 0; i < net.num_reactions(); ++i)
    if (mask[i]) pilot_cov(i, i) = 0.01;  // log-scale std 0.1 per free coordinate
  PilotResult res;
  res.chain = pmmh(net, sim, data, obs, prior, init_c, pilot_iters, pilot_particles,
                   pilot_cov, mask, x0, rng, threads, resampling);
  res.var_hat = chain_log_covariance(res.chain);
  res.c_hat = posterior_mean_c(res.chain);
  return res;
}

}  // namespace

InferReport run_infer(const InferOptions& opt) {
  ParsedModel model = load_model(opt.model, opt.sc);
  const auto& net = model.network;
  if (opt.data.empty()) throw std::invalid_argument("infer: --data is required");
  Dataset data = read_dataset_csv(opt.data);
  data.validate(net.num_species());

  const Engine engine = parse_engine(opt.engine);
  ForwardSimulator sim = make_simulator(engine, net, opt.flags);
  const auto mask = build_mask(model, opt.fix);
  UniformLogPrior prior{opt.prior_lo, opt.prior_hi};
  const Resampling resampling = parse_resampling(opt.resampling);
  RngStream rng(opt.seed, 0);

  PilotResult pilot =
      run_pilot(net, sim, data, model.obs, prior, net.rate_constants(), mask,
                model.x0, opt.pilot_iters, opt.pilot_particles, opt.threads, rng,
                resampling);

  int particles = opt.particles;
  if (particles <= 0) {
    auto loglik_at_n = [&](int n, RngStream& r2) {
      return bootstrap_filter(net, sim, pilot.c_hat, data, model.obs, model.x0, n, r2,
                              opt.threads, resampling)
          .log_ml;
    };
    particles = tune_particle_count(loglik_at_n, rng).n;
  }

  double gamma = opt.gamma;
  if (gamma <= 0.0) {
    PmmhWindowRunner runner = [&](double g, const Mat& var, const Vec& start_log,
                                  int n_iter, RngStream& r2) {
      Vec start_c = start_log.array().exp();
      PmmhChain w = pmmh(net, sim, data, model.obs, prior, start_c, n_iter, particles,
                         g * var, mask, model.x0, r2, opt.threads, resampling);
      return WindowResult{w.acceptance_rate(),
                          w.log_c.row(w.log_c.rows() - 1).transpose()};
    };
    gamma = tune_scaling(runner, pilot.chain, rng).gamma;
  }

  const auto t0 = Clock::now();
  PmmhChain chain = pmmh(net, sim, data, model.obs, prior, pilot.c_hat, opt.iters,
                         particles, gamma * pilot.var_hat, mask, model.x0, rng,
                         opt.threads, resampling);
  const double wall = seconds_since(t0);

  InferReport rep;
  rep.acceptance = chain.acceptance_rate();
  rep.gamma = gamma;
  rep.particles = particles;
  const long burn = chain.log_c.rows() / 10;
  double min_ess = std::numeric_limits<double>::infinity();
  for (int i = 0; i < net.num_reactions(); ++i) {
    if (!mask[i]) continue;
    Vec coord = chain.log_c.col(i).segment(burn, chain.log_c.rows() - burn);
    min_ess = std::min(min_ess, ess(coord).ess);
  }
  rep.min_ess_per_sec = min_ess / std::max(wall, 1e-12);
  rep.chain = std::move(chain);
  return rep;
}

int cmd_infer(const InferOptions& opt) {
  const auto t_start = Clock::now();
  InferReport rep = run_infer(opt);
  ParsedModel model = load_model(opt.model, opt.sc);

  const std::string cpath = opt.out + "_chain.csv";
  write_chain_csv(rep.chain, cpath);

  // posterior summary over the post-burn chain
  const std::string spath = opt.out + "_summary.csv";
  {
    std::ofstream out(spath);
    if (!out) throw std::runtime_error("cannot open " + spath);
    out << "param,fixed,median_log_c,q2.5_log_c,q97.5_log_c\n";
    const long rows = rep.chain.log_c.rows();
    const long burn = rows / 10;
    for (int i = 0; i < rep.chain.log_c.cols(); ++i) {
      std::vector<double> coord;
      coord.reserve(rows - burn);
      for (long t = burn; t < rows; ++t) coord.push_back(rep.chain.log_c(t, i));
      out << model.rate_names[i] << "," << (rep.chain.free_mask[i] ? 0 : 1) << ","
          << fmt(quantile(coord, 0.5)) << "," << fmt(quantile(coord, 0.025)) << ","
          << fmt(quantile(coord, 0.975)) << "\n";
    }
  }

  const std::string stats_path = opt.out + "_stats.csv";
  {
    std::ofstream out(stats_path);
    if (!out) throw std::runtime_error("cannot open " + stats_path);
    out << "acceptance_rate,min_ess_per_sec,gamma,particles\n"
        << fmt(rep.acceptance) << "," << fmt(rep.min_ess_per_sec) << ","
        << fmt(rep.gamma) << "," << rep.particles << "\n";
  }

  RunManifest man;
  man.command = "infer";
  man.config = {{"model", opt.model},     {"sc", opt.sc},
                {"data", opt.data},       {"engine", opt.engine},
                {"particles", opt.particles}, {"iters", opt.iters},
                {"fix", opt.fix},         {"seed", opt.seed},
                {"threads", opt.threads}, {"gamma", opt.gamma},
                {"pilot_iters", opt.pilot_iters},
                {"pilot_particles", opt.pilot_particles},
                {"prior", {opt.prior_lo, opt.prior_hi}},
                {"resampling", opt.resampling},
                {"engine_flags", opt.flags.to_json()}};
  man.seed = opt.seed;
  man.counters = {{"acceptance_rate", rep.acceptance},
                  {"min_ess_per_sec", rep.min_ess_per_sec},
                  {"gamma", rep.gamma},
                  {"particles", rep.particles}};
  man.outputs = {cpath, spath, stats_path};
  man.wall_seconds = seconds_since(t_start);
  man.write(opt.out + "_manifest.json");
  return 0;
}

int cmd_tune(const TuneOptions& opt) {
  const auto t_start = Clock::now();
  ParsedModel model = load_model(opt.model, opt.sc);
  const auto& net = model.network;
  if (opt.data.empty()) throw std::invalid_argument("tune: --data is required");
  Dataset data = read_dataset_csv(opt.data);
  data.validate(net.num_species());

  const Engine engine = parse_engine(opt.engine);
  ForwardSimulator sim = make_simulator(engine, net, opt.flags);
  const auto mask = build_mask(model, opt.fix);
  UniformLogPrior prior{opt.prior_lo, opt.prior_hi};
  const Resampling resampling = parse_resampling(opt.resampling);
  RngStream rng(opt.seed, 0);

  PilotResult pilot =
      run_pilot(net, sim, data, model.obs, prior, net.rate_constants(), mask,
                model.x0, opt.pilot_iters, opt.pilot_particles, opt.threads, rng,
                resampling);

  auto loglik_at_n = [&](int n, RngStream& r2) {
    return bootstrap_filter(net, sim, pilot.c_hat, data, model.obs, model.x0, n, r2,
                            opt.threads, resampling)
        .log_ml;
  };
  ParticleCountResult pc = tune_particle_count(loglik_at_n, rng);

  PmmhWindowRunner runner = [&](double g, const Mat& var, const Vec& start_log,
                                int n_iter, RngStream& r2) {
    Vec start_c = start_log.array().exp();
    PmmhChain w = pmmh(net, sim, data, model.obs, prior, start_c, n_iter, pc.n,
                       g * var, mask, model.x0, r2, opt.threads, resampling);
    return WindowResult{w.acceptance_rate(),
                        w.log_c.row(w.log_c.rows() - 1).transpose()};
  };
  ScalingResult sc_res = tune_scaling(runner, pilot.chain, rng);

  const std::string rpath = opt.out + "_report.txt";
  {
    std::ofstream out(rpath);
    if (!out) throw std::runtime_error("cannot open " + rpath);
    out << "tune report\n===========\n";
    out << "engine: " << opt.engine << "\n";
    out << "pilot: " << opt.pilot_iters << " iterations, " << opt.pilot_particles
        << " particles, acceptance " << pilot.chain.acceptance_rate() << "\n";
    out << "c_hat:";
    for (int i = 0; i < pilot.c_hat.size(); ++i) out << " " << fmt(pilot.c_hat[i]);
    out << "\nvar_hat (log c, free block):\n";
    for (int i = 0; i < pilot.var_hat.rows(); ++i) {
      for (int j = 0; j < pilot.var_hat.cols(); ++j)
        out << fmt(pilot.var_hat(i, j)) << (j + 1 < pilot.var_hat.cols() ? " " : "");
      out << "\n";
    }
    out << "particle count schedule (N, var log-lik):\n";
    for (auto& [n, v] : pc.schedule) out << "  " << n << " " << fmt(v) << "\n";
    out << "selected N: " << pc.n << (pc.capped ? " (cap reached)" : "")
        << (pc.below_target ? " (variance already below target)" : "") << "\n";
    out << "gamma: " << fmt(sc_res.gamma) << " (acceptance " << fmt(sc_res.acceptance)
        << " over " << sc_res.windows << " windows"
        << (sc_res.converged ? "" : ", not converged")
        << (sc_res.identity_fallback ? ", identity covariance fallback" : "") << ")\n";
  }

  RunManifest man;
  man.command = "tune";
  man.config = {{"model", opt.model},   {"sc", opt.sc},
                {"data", opt.data},     {"engine", opt.engine},
                {"fix", opt.fix},       {"seed", opt.seed},
                {"threads", opt.threads},
                {"pilot_iters", opt.pilot_iters},
                {"pilot_particles", opt.pilot_particles},
                {"resampling", opt.resampling},
                {"engine_flags", opt.flags.to_json()}};
  man.seed = opt.seed;
  man.counters = {{"selected_particles", pc.n},
                  {"loglik_variance", pc.variance},
                  {"gamma", sc_res.gamma},
                  {"tuned_acceptance", sc_res.acceptance}};
  man.outputs = {rpath};
  man.wall_seconds = seconds_since(t_start);
  man.write(opt.out + "_manifest.json");
  return 0;
}

}  // namespace skm
