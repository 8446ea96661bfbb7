#include "skm/manifest.hpp"

#include "skm/stats.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace skm {

namespace {

void open_or_throw(std::ofstream& out, const std::string& path) {
  out.open(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
}

void print_g17(std::ofstream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void RunManifest::write(const std::string& path) const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  j["version"] = SKM_VERSION;
  j["rng"] = RNG_VERSION;
  j["wall_seconds"] = wall_seconds;
  j["counters"] = counters;
  j["outputs"] = outputs;
  std::ofstream out;
  open_or_throw(out, path);
  out << j.dump(2) << "\n";
}

std::string config_hash(const nlohmann::json& config) {
  const std::string s = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json meta_counters(const Trajectory::Meta& meta) {
  nlohmann::json j;
  j["events"] = meta.events;
  j["reclassifications"] = meta.reclassifications;
  j["bound_violations"] = meta.bound_violations;
  j["candidates"] = meta.candidates;
  j["rewinds"] = meta.rewinds;
  j["floor_fallbacks"] = meta.floor_fallbacks;
  j["negativity_clamps"] = meta.negativity_clamps;
  j["ginv_refactorizations"] = meta.ginv_refactorizations;
  j["g_det_warnings"] = meta.g_det_warnings;
  j["stiff_fallback"] = meta.stiff_fallback;
  j["truncated"] = meta.truncated;
  return j;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out;
  open_or_throw(out, path);
  const int k = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().x.size());
  out << "t";
  for (int i = 1; i <= k; ++i) out << ",x_" << i;
  out << "\n";
  for (const auto& s : traj.states) {
    print_g17(out, s.t);
    for (int i = 0; i < k; ++i) {
      out << ",";
      print_g17(out, s.x[i]);
    }
    out << "\n";
  }
}

void write_lna_dense_csv(const LnaDense& dense, const std::string& path) {
  std::ofstream out;
  open_or_throw(out, path);
  const int k = dense.states.empty() ? 0 : static_cast<int>(dense.states.front().eta.size());
  out << "t";
  for (int i = 1; i <= k; ++i) out << ",eta_" << i;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) out << ",G_" << i << j;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) out << ",Psi_" << i << j;
  for (int i = 1; i <= k; ++i) out << ",tau_" << i;
  out << "\n";
  for (const auto& s : dense.states) {
    print_g17(out, s.t);
    for (int i = 0; i < k; ++i) {
      out << ",";
      print_g17(out, s.eta[i]);
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        out << ",";
        print_g17(out, s.G(i, j));
      }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        out << ",";
        print_g17(out, s.Psi(i, j));
      }
    for (int i = 0; i < k; ++i) {
      out << ",";
      print_g17(out, s.tau[i]);
    }
    out << "\n";
  }
}

void write_quantile_csv(const std::vector<double>& times,
                        const std::vector<std::string>& species_names,
                        const std::vector<std::vector<std::vector<double>>>& values,
                        const std::string& path) {
  static const double probs[5] = {0.025, 0.25, 0.5, 0.75, 0.975};
  std::ofstream out;
  open_or_throw(out, path);
  out << "t,species,q2.5,q25,q50,q75,q97.5\n";
  for (size_t ti = 0; ti < times.size(); ++ti) {
    for (size_t si = 0; si < species_names.size(); ++si) {
      print_g17(out, times[ti]);
      out << "," << species_names[si];
      for (double p : probs) {
        out << ",";
        print_g17(out, quantile(values[ti][si], p));
      }
      out << "\n";
    }
  }
}

void write_chain_csv(const PmmhChain& chain, const std::string& path) {
  std::ofstream out;
  open_or_throw(out, path);
  const int r = static_cast<int>(chain.log_c.cols());
  out << "iter,logpost_hat,accepted";
  for (int i = 1; i <= r; ++i) out << ",log_c_" << i;
  out << "\n";
  for (long it = 0; it < chain.log_c.rows(); ++it) {
    out << it << ",";
    print_g17(out, chain.logpost[it]);
    out << "," << (it == 0 ? 1 : static_cast<int>(chain.accepted[it - 1]));
    for (int i = 0; i < r; ++i) {
      out << ",";
      print_g17(out, chain.log_c(it, i));
    }
    out << "\n";
  }
}

void write_benchmark_csv(const std::vector<BenchmarkRow>& rows,
                         const std::string& path) {
  std::ofstream out;
  open_or_throw(out, path);
  out << "sc,engine,mean_cpu_seconds\n";
  for (const auto& row : rows) {
    print_g17(out, row.sc);
    out << "," << row.engine << ",";
    print_g17(out, row.mean_seconds);
    out << "\n";
  }
}

}  // namespace skm
