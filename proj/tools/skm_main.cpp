// skm: stochastic kinetic model simulation and inference.
#include "skm/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

int default_threads() {
  if (const char* env = std::getenv("SKM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void add_engine_flags(CLI::App* app, skm::EngineFlags& flags) {
  app->add_option("--dt-hybrid", flags.dt_hybrid, "reclassification interval")
      ->capture_default_str();
  app->add_option("--dt-integrate", flags.dt_integrate,
                  "LNA integration interval (<= dt-hybrid)")
      ->capture_default_str();
  app->add_option("--nstar", flags.n_star, "Gaussian-adequacy occurrence count N*")
      ->capture_default_str();
  app->add_option("--eps-star", flags.eps_star, "relative-impact epsilon*")
      ->capture_default_str();
  app->add_option("--eps-hybrid", flags.eps_hybrid, "interval-validity epsilon")
      ->capture_default_str();
  app->add_option("--bound-eps", flags.bound_eps,
                  "probable bound exceedance probability")
      ->capture_default_str();
  app->add_option("--ode-rtol", flags.ode_rtol, "ODE relative tolerance")
      ->capture_default_str();
  app->add_option("--ode-atol", flags.ode_atol, "ODE absolute tolerance")
      ->capture_default_str();
  app->add_option("--dense-grid", flags.dense_grid,
                  "interior maxima evaluations per interval")
      ->capture_default_str();
  app->add_option("--dt-euler", flags.dt_euler, "Euler-Maruyama step")
      ->capture_default_str();
  app->add_option("--rewind-shrink", flags.rewind_shrink,
                  "dt-hybrid shrink factor on rewind")
      ->capture_default_str();
  app->add_option("--min-dt-hybrid", flags.min_dt_hybrid,
                  "dt-hybrid floor before earliest-crossing fallback")
      ->capture_default_str();
  app->add_option("--max-events", flags.max_events, "event-count guard")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic kinetic models: exact, CLE and hybrid simulation, PMMH inference"};
  app.require_subcommand(1);

  skm::SimulateOptions sim_opt;
  sim_opt.threads = default_threads();
  auto* sim = app.add_subcommand("simulate", "simulate trajectories, emit quantile bands");
  sim->add_option("--model", sim_opt.model, "model file or 'autoreg'")->required();
  sim->add_option("--sc", sim_opt.sc, "autoregulatory scale parameter");
  sim->add_option("--engine", sim_opt.engine,
                  "gillespie | cle | hybrid-lna | hybrid-sde");
  sim->add_option("--reps", sim_opt.reps, "replicates")->capture_default_str();
  sim->add_option("--t-end", sim_opt.t_end, "horizon")->capture_default_str();
  sim->add_option("--grid-dt", sim_opt.grid_dt, "summary grid spacing")
      ->capture_default_str();
  sim->add_option("--seed", sim_opt.seed, "RNG seed")->capture_default_str();
  sim->add_option("--stream", sim_opt.stream, "base RNG stream id")
      ->capture_default_str();
  sim->add_option("--threads", sim_opt.threads, "replicate-level threads")
      ->capture_default_str();
  sim->add_option("--emit-paths", sim_opt.emit_paths, "trajectory CSVs to write")
      ->capture_default_str();
  sim->add_option("--record", sim_opt.record, "grid | events")->capture_default_str();
  sim->add_option("--out", sim_opt.out, "output prefix")->capture_default_str();
  sim->add_option("--lna-debug", sim_opt.lna_debug,
                  "write the dense LNA record of replicate 0 to this CSV");
  add_engine_flags(sim, sim_opt.flags);

  skm::SynthOptions synth_opt;
  auto* synth = app.add_subcommand("synth-data", "Gillespie truth plus observation noise");
  synth->add_option("--model", synth_opt.model)->required();
  synth->add_option("--sc", synth_opt.sc);
  synth->add_option("--t-end", synth_opt.t_end)->capture_default_str();
  synth->add_option("--grid", synth_opt.grid, "observation spacing")->capture_default_str();
  synth->add_option("--seed", synth_opt.seed)->capture_default_str();
  synth->add_option("--stream", synth_opt.stream)->capture_default_str();
  synth->add_option("--out", synth_opt.out)->capture_default_str();
  add_engine_flags(synth, synth_opt.flags);

  skm::BenchmarkOptions bench_opt;
  bench_opt.threads = default_threads();
  auto* bench = app.add_subcommand("benchmark", "mean wall time per trajectory per engine");
  bench->add_option("--model", bench_opt.model)->required();
  bench->add_option("--sc-list", bench_opt.sc_list, "sc values")->delimiter(',');
  bench->add_option("--engines", bench_opt.engines)->delimiter(',');
  bench->add_option("--reps", bench_opt.reps)->capture_default_str();
  bench->add_option("--t-end", bench_opt.t_end)->capture_default_str();
  bench->add_option("--seed", bench_opt.seed)->capture_default_str();
  bench->add_option("--stream", bench_opt.stream)->capture_default_str();
  bench->add_option("--threads", bench_opt.threads)->capture_default_str();
  bench->add_option("--out", bench_opt.out)->capture_default_str();
  add_engine_flags(bench, bench_opt.flags);

  skm::TuneOptions tune_opt;
  tune_opt.threads = default_threads();
  auto* tune = app.add_subcommand("tune", "pilot run, particle-count and gamma selection");
  tune->add_option("--model", tune_opt.model)->required();
  tune->add_option("--sc", tune_opt.sc);
  tune->add_option("--data", tune_opt.data, "dataset CSV")->required();
  tune->add_option("--engine", tune_opt.engine)->capture_default_str();
  tune->add_option("--fix", tune_opt.fix, "parameters held fixed")->delimiter(',');
  tune->add_option("--seed", tune_opt.seed)->capture_default_str();
  tune->add_option("--threads", tune_opt.threads)->capture_default_str();
  tune->add_option("--pilot-iters", tune_opt.pilot_iters)->capture_default_str();
  tune->add_option("--pilot-particles", tune_opt.pilot_particles)->capture_default_str();
  tune->add_option("--prior-lo", tune_opt.prior_lo)->capture_default_str();
  tune->add_option("--prior-hi", tune_opt.prior_hi)->capture_default_str();
  tune->add_option("--resampling", tune_opt.resampling, "multinomial | systematic")
      ->capture_default_str();
  tune->add_option("--out", tune_opt.out)->capture_default_str();
  add_engine_flags(tune, tune_opt.flags);

  skm::InferOptions infer_opt;
  infer_opt.threads = default_threads();
  auto* infer = app.add_subcommand("infer", "PMMH chain for the rate constants");
  infer->add_option("--model", infer_opt.model)->required();
  infer->add_option("--sc", infer_opt.sc);
  infer->add_option("--data", infer_opt.data, "dataset CSV")->required();
  infer->add_option("--engine", infer_opt.engine)->capture_default_str();
  infer->add_option("--particles", infer_opt.particles, "0 = auto-tune")
      ->capture_default_str();
  infer->add_option("--iters", infer_opt.iters)->capture_default_str();
  infer->add_option("--fix", infer_opt.fix, "parameters held fixed")->delimiter(',');
  infer->add_option("--seed", infer_opt.seed)->capture_default_str();
  infer->add_option("--threads", infer_opt.threads)->capture_default_str();
  infer->add_option("--gamma", infer_opt.gamma, "proposal scaling (0 = tune)")
      ->capture_default_str();
  infer->add_option("--pilot-iters", infer_opt.pilot_iters)->capture_default_str();
  infer->add_option("--pilot-particles", infer_opt.pilot_particles)->capture_default_str();
  infer->add_option("--prior-lo", infer_opt.prior_lo)->capture_default_str();
  infer->add_option("--prior-hi", infer_opt.prior_hi)->capture_default_str();
  infer->add_option("--resampling", infer_opt.resampling, "multinomial | systematic")
      ->capture_default_str();
  infer->add_option("--out", infer_opt.out)->capture_default_str();
  add_engine_flags(infer, infer_opt.flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return skm::cmd_simulate(sim_opt);
    if (synth->parsed()) return skm::cmd_synth_data(synth_opt);
    if (bench->parsed()) return skm::cmd_benchmark(bench_opt);
    if (tune->parsed()) return skm::cmd_tune(tune_opt);
    if (infer->parsed()) return skm::cmd_infer(infer_opt);
  } catch (const skm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const skm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
