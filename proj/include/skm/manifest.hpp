#pragma once

#include "skm/lna.hpp"
#include "skm/pmmh.hpp"
#include "skm/reaction_network.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace skm {

inline constexpr const char* SKM_VERSION = "0.1.0";

// Reproducibility record emitted alongside every output file: the command,
// the full resolved config, the seed, code + RNG version, timing, counters.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  nlohmann::json counters;
  std::vector<std::string> outputs;

  void write(const std::string& path) const;
};

/// FNV-1a hash of the serialized config, recorded in trajectory metadata.
std::string config_hash(const nlohmann::json& config);

nlohmann::json meta_counters(const Trajectory::Meta& meta);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Debug export of the LNA dense record: t, eta_1.., G_11.., Psi_11.., tau_1..
void write_lna_dense_csv(const LnaDense& dense, const std::string& path);

/// Long-format quantile bands: t, species, q2.5, q25, q50, q75, q97.5.
void write_quantile_csv(const std::vector<double>& times,
                        const std::vector<std::string>& species_names,
                        const std::vector<std::vector<std::vector<double>>>& values,
                        const std::string& path);

void write_chain_csv(const PmmhChain& chain, const std::string& path);

struct BenchmarkRow {
  double sc;
  std::string engine;
  double mean_seconds;
};
void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, const std::string& path);

}  // namespace skm
