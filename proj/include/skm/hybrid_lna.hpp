#pragma once

#include "skm/lna.hpp"
#include "skm/rng.hpp"

namespace skm {

struct HybridConfig {
  double dt_hybrid = 0.1;
  double dt_integrate = 0.1;  // must be <= dt_hybrid
  double n_star = 15.0;
  double eps_star = 0.25;
  double eps_hybrid = 0.25;
  double bound_eps = 1e-6;  // probable bound holds with probability 1 - bound_eps
  OdeConfig ode;

  void validate() const;
  ClassifyConfig classify_config(double dt_h) const {
    return {n_star, eps_star, eps_hybrid, dt_h};
  }
};

// Probable upper bound on the total slow intensity over one interval:
// h^s_max = lambda^s_max + sum_i b^max_i u*_i  with  u*_i = -Phi^-1(eps/4k) sqrt(tau_i).
struct BoundInfo {
  double lambda_s_max = 0.0;
  Vec b_max;
  Vec u_star;
  double h_s_max = 0.0;
  long violation_count = 0;
};

BoundInfo probable_bound(const RunningMaxima& maxima, const Vec& tau, double bound_eps,
                         int k);

/// Draw the state at the LNA state's time: fast species from N(eta, G Psi G')
/// clamped at zero componentwise, slow-only species carried over from x_curr.
Vec sample_state_at(const LnaState& lna, const Partition& part, const Vec& x_curr,
                    RngStream& rng, long* clamp_count = nullptr);

/// In-place variant: overwrites the fast components of x with the draw.
void sample_state_into(Vec& x, const LnaState& lna, const Partition& part,
                       RngStream& rng, long* clamp_count = nullptr);

/// The thinning hybrid: dynamic fast/slow classification, LNA integration of
/// the fast subsystem, slow events proposed at rate h^s_max and accepted with
/// probability lambda^s(x)/h^s_max. Records at slow events and interval
/// boundaries; interior queries via sample_at_grid return the nearest recorded
/// state at or before the query time.
Trajectory simulate_hybrid_lna(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                               double t_end, const HybridConfig& config, RngStream& rng,
                               LnaDense* debug_dense = nullptr);

/// Advance without recording (particle-filter path); counters accumulate into
/// meta when provided.
void advance_hybrid_lna(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                        double t1, const HybridConfig& config, RngStream& rng,
                        Trajectory::Meta* meta = nullptr, LnaContext* ctx = nullptr);

}  // namespace skm
