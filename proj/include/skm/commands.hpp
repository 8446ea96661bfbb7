#pragma once

#include "skm/cle.hpp"
#include "skm/gillespie.hpp"
#include "skm/hybrid_lna.hpp"
#include "skm/manifest.hpp"
#include "skm/model_parser.hpp"
#include "skm/pmmh.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace skm {

enum class Engine { Gillespie, Cle, HybridLna, HybridSde };
Engine parse_engine(const std::string& name);
std::string engine_name(Engine e);

// Engine knobs with the Section-5 defaults.
struct EngineFlags {
  double dt_hybrid = 0.1;
  double dt_integrate = 0.1;
  double n_star = 15.0;
  double eps_star = 0.25;
  double eps_hybrid = 0.25;
  double bound_eps = 1e-6;
  double ode_rtol = 1e-4;
  double ode_atol = 1e-4;
  int dense_grid = 32;
  double dt_euler = 0.005;
  double rewind_shrink = 0.5;
  double min_dt_hybrid = 0.005;
  long max_events = 100'000'000;

  HybridConfig hybrid_config() const;
  CleConfig cle_config() const;
  ClassifyConfig classify_config() const;
  nlohmann::json to_json() const;
};

/// "autoreg" resolves to the built-in Section-5 network at the given sc;
/// file paths are parsed with `sc` bound as a symbol.
ParsedModel load_model(const std::string& model, double sc);

/// Forward-simulation closure for one engine (shared by filter and CLI).
ForwardSimulator make_simulator(Engine engine, const ReactionNetwork& net,
                                const EngineFlags& flags);

struct SimulateOptions {
  std::string model = "autoreg";
  double sc = 1.0;
  std::string engine = "gillespie";
  int reps = 1;
  double t_end = 50.0;
  double grid_dt = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;  // replicate i draws from stream + i
  int threads = 1;
  int emit_paths = 5;
  std::string record = "grid";  // gillespie/cle trajectory CSV resolution
  std::string out = "sim";
  std::string lna_debug;  // nonempty: dense LNA record of replicate 0 (hybrid-lna)
  EngineFlags flags;
};
int cmd_simulate(const SimulateOptions& opt);

struct SynthOptions {
  std::string model = "autoreg";
  double sc = 1.0;
  double t_end = 50.0;
  double grid = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::string out = "data";
  EngineFlags flags;
};
int cmd_synth_data(const SynthOptions& opt);

struct BenchmarkOptions {
  std::string model = "autoreg";
  std::vector<double> sc_list{1.0, 10.0, 100.0, 1000.0};
  std::vector<std::string> engines{"gillespie", "cle", "hybrid-lna", "hybrid-sde"};
  int reps = 1000;
  double t_end = 50.0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int threads = 1;
  std::string out = "bench";
  EngineFlags flags;
};
int cmd_benchmark(const BenchmarkOptions& opt);

struct TuneOptions {
  std::string model = "autoreg";
  double sc = 1.0;
  std::string data;
  std::string engine = "hybrid-lna";
  std::vector<std::string> fix;
  std::uint64_t seed = 1;
  int threads = 1;
  long pilot_iters = 2000;
  int pilot_particles = 50;
  std::string out = "tune";
  double prior_lo = -8.0;
  double prior_hi = 8.0;
  std::string resampling = "multinomial";  // or "systematic"
  EngineFlags flags;
};
int cmd_tune(const TuneOptions& opt);

struct InferOptions {
  std::string model = "autoreg";
  double sc = 1.0;
  std::string data;
  std::string engine = "hybrid-lna";
  int particles = 250;  // 0 -> choose by the particle-count tuner
  long iters = 20000;
  std::vector<std::string> fix;
  std::uint64_t seed = 1;
  int threads = 1;
  double gamma = 0.0;  // 0 -> tune towards ~10% acceptance
  long pilot_iters = 2000;
  int pilot_particles = 50;
  double prior_lo = -8.0;
  double prior_hi = 8.0;
  std::string resampling = "multinomial";  // or "systematic"
  std::string out = "infer";
  EngineFlags flags;
};

struct InferReport {
  PmmhChain chain;
  double acceptance = 0.0;
  double min_ess_per_sec = 0.0;
  double gamma = 0.0;
  int particles = 0;
};
int cmd_infer(const InferOptions& opt);
InferReport run_infer(const InferOptions& opt);  // library entry used by cmd_infer

/// Replicate-level parallelism with deterministic per-index work.
void parallel_for(int count, int threads, const std::function<void(int)>& work);

}  // namespace skm
