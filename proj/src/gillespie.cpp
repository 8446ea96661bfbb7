#include "skm/gillespie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skm {

namespace {

// Core direct-method loop. on_event(t, reaction) fires after each applied
// reaction. Returns false if max_events was hit before t1.
template <class OnEvent>
bool run_direct(const ReactionNetwork& net, const Vec& c, Vec& x, double t0, double t1,
                RngStream& rng, long max_events, OnEvent&& on_event) {
  const int r = net.num_reactions();
  Vec h(r);
  double t = t0;
  long events = 0;
  for (;;) {
    double lambda = 0.0;
    for (int i = 0; i < r; ++i) {
      h[i] = hazard(net, x, i, c);
      lambda += h[i];
    }
    if (lambda <= 0.0) return true;  // absorbed; caller holds state to t1
    t += draw_exponential(rng, lambda);
    if (t >= t1) return true;
    double u = rng.uniform() * lambda;
    int chosen = r - 1;
    double cum = 0.0;
    for (int i = 0; i < r; ++i) {
      cum += h[i];
      if (u < cum) {
        chosen = i;
        break;
      }
    }
    apply_reaction_inplace(x, net, chosen);
    if (++events > max_events) return false;
    on_event(t, chosen);
  }
}

}  // namespace

Trajectory simulate_gillespie(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                              const SsaConfig& config, RngStream& rng) {
  if (!(config.t_end > 0.0)) throw std::invalid_argument("gillespie: t_end must be > 0");
  if (config.record == SsaConfig::Record::Grid && !(config.grid_dt > 0.0))
    throw std::invalid_argument("gillespie: grid_dt must be > 0");
  if (x0.minCoeff() < 0.0) throw std::invalid_argument("gillespie: x0 must be nonnegative");
  for (int i = 0; i < x0.size(); ++i)
    if (x0[i] != std::floor(x0[i]))
      throw std::invalid_argument("gillespie: x0 must be integral");

  Trajectory traj;
  traj.meta.simulator = "gillespie";
  traj.meta.seed = rng.seed();
  traj.meta.stream_id = rng.stream_id();
  traj.states.push_back({0.0, x0});

  Vec x = x0;
  bool complete = true;
  if (config.record == SsaConfig::Record::AllEvents) {
    complete = run_direct(net, c, x, 0.0, config.t_end, rng, config.max_events,
                          [&](double t, int) {
                            traj.states.push_back({t, x});
                            ++traj.meta.events;
                          });
    if (complete && traj.states.back().t < config.t_end)
      traj.states.push_back({config.t_end, x});
  } else {
    const long n_grid = static_cast<long>(std::floor(config.t_end / config.grid_dt + 1e-9));
    long g = 1;  // grid index; t=0 already recorded
    Vec x_prev = x0;
    complete = run_direct(net, c, x, 0.0, config.t_end, rng, config.max_events,
                          [&](double t, int) {
                            // grid points strictly before this event hold the
                            // pre-event state
                            while (g <= n_grid && g * config.grid_dt < t) {
                              traj.states.push_back({g * config.grid_dt, x_prev});
                              ++g;
                            }
                            x_prev = x;
                            ++traj.meta.events;
                          });
    for (; g <= n_grid; ++g) traj.states.push_back({g * config.grid_dt, x});
    if (complete && traj.states.back().t < config.t_end)
      traj.states.push_back({config.t_end, x});
  }
  traj.meta.truncated = !complete;
  return traj;
}

void advance_gillespie(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                       double t1, RngStream& rng, long max_events, long* events) {
  long n = 0;
  bool ok = run_direct(net, c, x, t0, t1, rng, max_events, [&](double, int) { ++n; });
  if (events) *events += n;
  if (!ok) throw NumericalError("gillespie: max_events exceeded during advance");
}

std::vector<SystemState> sample_at_grid(const Trajectory& traj,
                                        const std::vector<double>& times) {
  if (traj.states.empty()) throw std::invalid_argument("sample_at_grid: empty trajectory");
  const double t_first = traj.states.front().t;
  const double t_last = traj.states.back().t;
  std::vector<SystemState> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < t_first || t > t_last)
      throw std::invalid_argument("sample_at_grid: query time outside recorded span");
    // last record with time <= t (right-continuous convention)
    auto it = std::upper_bound(traj.states.begin(), traj.states.end(), t,
                               [](double q, const SystemState& s) { return q < s.t; });
    --it;
    out.push_back({t, it->x});
  }
  return out;
}

}  // namespace skm
