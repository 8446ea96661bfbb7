#pragma once

#include "skm/partition.hpp"
#include "skm/rng.hpp"

namespace skm {

struct CleConfig {
  double dt_euler = 0.005;
  double dt_hybrid = 0.1;
  double rewind_shrink = 0.5;    // dt_hybrid multiplier on multi-crossing rewind
  double min_dt_hybrid = 0.005;  // floor; below it the earliest crossing is taken

  void validate() const;
};

/// Euler-Maruyama discretisation of the chemical Langevin equation:
/// dX = A'h dt + sqrt(A' diag(h) A) dW, state clamped at 0 after each step.
/// record_dt 0 records every Euler step; otherwise a grid plus the endpoint.
Trajectory simulate_cle(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                        double t_end, double dt_euler, RngStream& rng,
                        double record_dt = 0.0);

void advance_cle(const ReactionNetwork& net, const Vec& c, Vec& x, double t0, double t1,
                 double dt_euler, RngStream& rng);

/// Discrete/SDE hybrid in the spirit of the next-reaction hybrid: fast species
/// follow the CLE, each slow reaction carries a residual R_j with
/// dR_j/dt = h_j, R_j(t0) = log r_j; a zero crossing marks the event. One
/// crossing: linear root, replay with the same increments, fire, reset.
/// More than one: shrink dt_hybrid by rewind_shrink, restore and retry with
/// fresh increments (the published method's acknowledged conditioning flaw is
/// reproduced, not fixed). Below min_dt_hybrid only the earliest crossing is
/// processed and a floor-fallback counter increments.
Trajectory simulate_hybrid_sde(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                               double t_end, const CleConfig& cle_cfg,
                               const ClassifyConfig& classify_cfg, RngStream& rng);

void advance_hybrid_sde(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                        double t1, const CleConfig& cle_cfg,
                        const ClassifyConfig& classify_cfg, RngStream& rng,
                        Trajectory::Meta* meta = nullptr);

}  // namespace skm
