#pragma once

#include "skm/particle_filter.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace skm {

// Independent Uniform(lo, hi) priors on each free log c_i.
struct UniformLogPrior {
  double lo = -8.0;
  double hi = 8.0;
  bool in_support(const Vec& log_c, const std::vector<char>& free_mask) const;
};

/// Estimator of log pi(y | c); the bootstrap filter is one, an exact
/// likelihood another.
using LogLikEstimator = std::function<double(const Vec& c, RngStream& rng)>;

struct PmmhOptions {
  long n_iter = 0;
  Vec init_c;                   // rate constants, free log coords inside prior support
  std::vector<char> free_mask;  // size r; fixed coordinates never move
  Mat proposal_cov;             // r x r on the log-c scale; free block used
  UniformLogPrior prior;
};

struct PmmhChain {
  Mat log_c;    // (n_iter + 1) x r
  Vec logpost;  // stored log pi^ + log prior per kept state
  std::vector<char> accepted;
  std::vector<char> free_mask;

  double acceptance_rate() const;
  long n_iter() const { return static_cast<long>(accepted.size()); }
};

/// Random-walk PMMH on log c, all free coordinates in one Gaussian block.
/// Proposals outside prior support auto-reject without estimating; on
/// rejection the stored likelihood estimate is retained (pseudo-marginal
/// correctness). A proposal numerically identical to the current point is an
/// identity move and accepts with ratio 1 without re-estimating.
PmmhChain pmmh(const LogLikEstimator& loglik, const PmmhOptions& opt, RngStream& rng);

/// Bootstrap-filter-backed PMMH.
PmmhChain pmmh(const ReactionNetwork& net, const ForwardSimulator& sim,
               const Dataset& data, const ObservationModel& model,
               const UniformLogPrior& prior, const Vec& init_c, long n_iter,
               int n_particles, const Mat& proposal_cov,
               const std::vector<char>& free_mask, const Vec& x0, RngStream& rng,
               int n_threads = 1, Resampling resampling = Resampling::Multinomial);

struct ParticleCountOptions {
  int start = 50;
  int repeats = 25;
  double var_hi = 3.0;  // accept the first N whose log-likelihood variance <= var_hi
  double var_lo = 1.0;
  int cap = 100000;
};

struct ParticleCountResult {
  int n = 0;
  double variance = 0.0;
  bool capped = false;
  bool below_target = false;  // variance already under var_lo at the first N
  std::vector<std::pair<int, double>> schedule;
};

/// Doubling schedule from `start` until Var(log pi^) at c_hat drops into the
/// target band (the "around 2" rule); loglik_at_n(N, rng) runs one filter.
ParticleCountResult tune_particle_count(
    const std::function<double(int, RngStream&)>& loglik_at_n, RngStream& rng,
    const ParticleCountOptions& opt = {});

struct WindowResult {
  double acceptance = 0.0;
  Vec end_log_c;
};

/// Runs n_iter PMMH iterations from start_log_c with innovation gamma*var_hat.
using PmmhWindowRunner = std::function<WindowResult(
    double gamma, const Mat& var_hat, const Vec& start_log_c, int n_iter,
    RngStream& rng)>;

struct ScalingOptions {
  double gamma0 = 0.0;  // 0 -> 2.38^2 / d_free
  int window = 1000;
  double acc_lo = 0.07;
  double acc_hi = 0.13;
  int max_windows = 25;
};

struct ScalingResult {
  double gamma = 0.0;
  Mat var_hat;  // r x r log-c covariance estimated from the pilot chain
  double acceptance = 0.0;
  int windows = 0;
  bool identity_fallback = false;  // non-finite pilot variance estimate
  bool converged = false;
};

/// Stochastic-approximation adjustment of gamma towards ~10% acceptance,
/// measured over fixed windows. Var^(c) comes from the pilot chain's second
/// half (log scale); a non-finite estimate falls back to the identity.
ScalingResult tune_scaling(const PmmhWindowRunner& runner, const PmmhChain& pilot,
                           RngStream& rng, const ScalingOptions& opt = {});

/// Free-block sample covariance of a chain's log-c samples (second half),
/// embedded in an r x r matrix, eigenvalue-floored to be PD on the free block.
Mat chain_log_covariance(const PmmhChain& chain);

}  // namespace skm
