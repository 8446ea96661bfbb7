#include "skm/pmmh.hpp"

#include "skm/stats.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skm {

bool UniformLogPrior::in_support(const Vec& log_c,
                                 const std::vector<char>& free_mask) const {
  for (int i = 0; i < log_c.size(); ++i)
    if (free_mask[i] && !(log_c[i] > lo && log_c[i] < hi)) return false;
  return true;
}

double PmmhChain::acceptance_rate() const {
  if (accepted.empty()) return 0.0;
  long acc = 0;
  for (char a : accepted) acc += a;
  return static_cast<double>(acc) / static_cast<double>(accepted.size());
}

PmmhChain pmmh(const LogLikEstimator& loglik, const PmmhOptions& opt, RngStream& rng) {
  const int r = static_cast<int>(opt.init_c.size());
  if (static_cast<int>(opt.free_mask.size()) != r)
    throw std::invalid_argument("pmmh: free_mask size mismatch");
  if (opt.proposal_cov.rows() != r || opt.proposal_cov.cols() != r)
    throw std::invalid_argument("pmmh: proposal_cov must be r x r");
  if (opt.n_iter < 1) throw std::invalid_argument("pmmh: n_iter must be >= 1");
  for (int i = 0; i < r; ++i)
    if (!(opt.init_c[i] > 0.0))
      throw std::invalid_argument("pmmh: init_c must be positive");

  std::vector<int> free_ix;
  for (int i = 0; i < r; ++i)
    if (opt.free_mask[i]) free_ix.push_back(i);
  const int d = static_cast<int>(free_ix.size());
  if (d == 0) throw std::invalid_argument("pmmh: no free parameters");

  Vec log_c = opt.init_c.array().log();
  if (!opt.prior.in_support(log_c, opt.free_mask))
    throw std::invalid_argument("pmmh: init_c outside prior support");

  Mat cov_free(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) cov_free(a, b) = opt.proposal_cov(free_ix[a], free_ix[b]);
  if ((cov_free - cov_free.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, cov_free.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("pmmh: proposal_cov not symmetric");
  const Mat chol_like = psd_sqrt(cov_free);

  PmmhChain chain;
  chain.free_mask = opt.free_mask;
  chain.log_c.resize(opt.n_iter + 1, r);
  chain.logpost.resize(opt.n_iter + 1);
  chain.accepted.reserve(opt.n_iter);
  chain.log_c.row(0) = log_c.transpose();

  Vec c = opt.init_c;
  double cur_loglik = loglik(c, rng);
  // flat prior: only the support indicator matters in the ratio
  chain.logpost[0] = cur_loglik;

  Vec z(d), prop_log = log_c, prop_c(r);
  for (long it = 1; it <= opt.n_iter; ++it) {
    for (int a = 0; a < d; ++a) z[a] = draw_standard_normal(rng);
    Vec step = chol_like * z;
    prop_log = log_c;
    for (int a = 0; a < d; ++a) prop_log[free_ix[a]] += step[a];

    bool accept = false;
    if (prop_log == log_c) {
      // degenerate kernel: identity move, ratio exactly 1
      accept = true;
    } else if (opt.prior.in_support(prop_log, opt.free_mask)) {
      prop_c = prop_log.array().exp();
      const double prop_loglik = loglik(prop_c, rng);
      const double log_ratio = prop_loglik - cur_loglik;
      if (log_ratio >= 0.0 || rng.uniform() < std::exp(log_ratio)) {
        accept = true;
        cur_loglik = prop_loglik;  // stored estimate replaced only on accept
      }
    }
    if (accept) log_c = prop_log;
    chain.accepted.push_back(accept ? 1 : 0);
    chain.log_c.row(it) = log_c.transpose();
    chain.logpost[it] = cur_loglik;
  }
  return chain;
}

PmmhChain pmmh(const ReactionNetwork& net, const ForwardSimulator& sim,
               const Dataset& data, const ObservationModel& model,
               const UniformLogPrior& prior, const Vec& init_c, long n_iter,
               int n_particles, const Mat& proposal_cov,
               const std::vector<char>& free_mask, const Vec& x0, RngStream& rng,
               int n_threads, Resampling resampling) {
  LogLikEstimator est = [&](const Vec& c, RngStream& r2) {
    return bootstrap_filter(net, sim, c, data, model, x0, n_particles, r2, n_threads,
                            resampling)
        .log_ml;
  };
  PmmhOptions opt;
  opt.n_iter = n_iter;
  opt.init_c = init_c;
  opt.free_mask = free_mask;
  opt.proposal_cov = proposal_cov;
  opt.prior = prior;
  return pmmh(est, opt, rng);
}

ParticleCountResult tune_particle_count(
    const std::function<double(int, RngStream&)>& loglik_at_n, RngStream& rng,
    const ParticleCountOptions& opt) {
  ParticleCountResult res;
  int n = opt.start;
  for (;;) {
    double sum = 0.0, sumsq = 0.0;
    bool finite = true;
    for (int rep = 0; rep < opt.repeats; ++rep) {
      const double v = loglik_at_n(n, rng);
      if (!std::isfinite(v)) {
        finite = false;
        break;
      }
      sum += v;
      sumsq += v * v;
    }
    const double var =
        finite ? std::max(0.0, (sumsq - sum * sum / opt.repeats) / (opt.repeats - 1))
               : std::numeric_limits<double>::infinity();
    res.schedule.emplace_back(n, var);
    if (var <= opt.var_hi) {
      res.n = n;
      res.variance = var;
      res.below_target = var < opt.var_lo;
      return res;
    }
    if (n >= opt.cap) {
      res.n = opt.cap;
      res.variance = var;
      res.capped = true;
      return res;
    }
    n = std::min(2 * n, opt.cap);
  }
}

Mat chain_log_covariance(const PmmhChain& chain) {
  const long rows = chain.log_c.rows();
  const int r = static_cast<int>(chain.log_c.cols());
  const long from = rows / 2;  // second half of the pilot
  const long m = rows - from;
  Mat out = Mat::Zero(r, r);
  if (m < 2) return out;

  std::vector<int> free_ix;
  for (int i = 0; i < r; ++i)
    if (chain.free_mask[i]) free_ix.push_back(i);
  const int d = static_cast<int>(free_ix.size());
  Mat samples(m, d);
  for (long t = 0; t < m; ++t)
    for (int a = 0; a < d; ++a) samples(t, a) = chain.log_c(from + t, free_ix[a]);
  Mat centered = samples.rowwise() - samples.colwise().mean();
  Mat cov = centered.transpose() * centered / static_cast<double>(m - 1);

  // floor eigenvalues so the free block is PD even for sticky pilots
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (cov + cov.transpose()));
  Vec ev = es.eigenvalues();
  const double floor_ev = std::max(1e-12, 1e-8 * std::max(ev.maxCoeff(), 0.0) + 1e-12);
  for (int i = 0; i < d; ++i) ev[i] = std::max(ev[i], floor_ev);
  cov = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(free_ix[a], free_ix[b]) = cov(a, b);
  return out;
}

ScalingResult tune_scaling(const PmmhWindowRunner& runner, const PmmhChain& pilot,
                           RngStream& rng, const ScalingOptions& opt) {
  if (pilot.log_c.rows() < 2000)
    throw std::invalid_argument("tune_scaling: pilot chain must have >= 2000 iterations");
  ScalingResult res;
  res.var_hat = chain_log_covariance(pilot);
  if (!res.var_hat.allFinite()) {
    res.var_hat = Mat::Zero(res.var_hat.rows(), res.var_hat.cols());
    for (int i = 0; i < res.var_hat.rows(); ++i)
      if (pilot.free_mask[i]) res.var_hat(i, i) = 1.0;
    res.identity_fallback = true;
  }
  int d = 0;
  for (char f : pilot.free_mask) d += f;
  double gamma = opt.gamma0 > 0.0 ? opt.gamma0 : 2.38 * 2.38 / std::max(1, d);

  Vec at = pilot.log_c.row(pilot.log_c.rows() - 1).transpose();
  const double target = 0.5 * (opt.acc_lo + opt.acc_hi);
  for (int w = 1; w <= opt.max_windows; ++w) {
    WindowResult wr = runner(gamma, res.var_hat, at, opt.window, rng);
    res.gamma = gamma;
    res.acceptance = wr.acceptance;
    res.windows = w;
    at = wr.end_log_c;
    if (wr.acceptance >= opt.acc_lo && wr.acceptance <= opt.acc_hi) {
      res.converged = true;
      return res;
    }
    // acceptance above target means steps are too small: grow gamma
    double factor = std::exp((wr.acceptance - target) / target * 0.8);
    factor = std::clamp(factor, 0.25, 4.0);
    gamma *= factor;
  }
  return res;
}

}  // namespace skm
