#pragma once

#include "skm/observation.hpp"
#include "skm/reaction_network.hpp"
#include "skm/rng.hpp"

#include <functional>
#include <vector>

namespace skm {

/// Forward-simulation contract shared by all four engines:
/// advance state in place from t0 to t1 under rate constants c.
using ForwardSimulator =
    std::function<void(Vec& x, double t0, double t1, const Vec& c, RngStream& rng)>;

/// N iid categorical draws from normalized weights. Expected copy count of
/// particle k is N w~_k. Throws if the weights do not sum to something positive.
std::vector<int> multinomial_resample(const Vec& weights, int n, RngStream& rng);

/// Stratified systematic resampling (one uniform, N equispaced positions).
std::vector<int> systematic_resample(const Vec& weights, int n, RngStream& rng);

enum class Resampling { Multinomial, Systematic };

struct FilterResult {
  double log_ml = 0.0;  // log pi^(y_0:T | c), -inf when the cloud degenerates
  bool degenerate = false;
};

/// Bootstrap particle filter: point-mass initialisation at x0, propagate with
/// the simulator, weight by the observation density, multinomial resampling at
/// every observation. Weight arithmetic in log space with max-shift. The
/// log marginal likelihood accumulates log of the mean unnormalized weight per
/// observation. n_threads > 1 parallelizes propagation over particles with
/// per-(step, particle) derived streams; results are identical to serial.
/// Draws an initial particle; the default is the point mass at a known x0.
using InitialStateSampler = std::function<Vec(RngStream&)>;

FilterResult bootstrap_filter(const ReactionNetwork& net, const ForwardSimulator& sim,
                              const Vec& c, const Dataset& data,
                              const ObservationModel& model, const Vec& x0, int n,
                              RngStream& rng, int n_threads = 1,
                              Resampling resampling = Resampling::Multinomial,
                              const InitialStateSampler& x0_prior = nullptr);

}  // namespace skm
