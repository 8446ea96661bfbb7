#pragma once

#include "skm/reaction_network.hpp"
#include "skm/rng.hpp"

#include <vector>

namespace skm {

struct SsaConfig {
  double t_end = 0.0;
  enum class Record { AllEvents, Grid } record = Record::AllEvents;
  double grid_dt = 1.0;
  long max_events = 100'000'000;  // guard against runaway configs (sc = 1000 scale)
};

/// Exact MJP sample path by the direct method: tau ~ Exp(lambda), reaction i
/// with probability h_i/lambda. Holds the state to t_end once lambda = 0.
/// Exceeding max_events returns the partial trajectory with meta.truncated set.
Trajectory simulate_gillespie(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                              const SsaConfig& config, RngStream& rng);

/// Advance a state exactly from t0 to t1 without recording (particle-filter path).
void advance_gillespie(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                       double t1, RngStream& rng, long max_events = 100'000'000,
                       long* events = nullptr);

/// Right-continuous piecewise-constant lookup: the state at each query time is
/// the last recorded state at or before it. Queries must lie within the
/// recorded span.
std::vector<SystemState> sample_at_grid(const Trajectory& traj,
                                        const std::vector<double>& times);

}  // namespace skm
