#include "skm/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace skm {

std::vector<int> multinomial_resample(const Vec& weights, int n, RngStream& rng) {
  const int m = static_cast<int>(weights.size());
  if (m < 1) throw std::invalid_argument("multinomial_resample: no weights");
  if (n < 1) throw std::invalid_argument("multinomial_resample: n must be >= 1");
  Vec cum(m);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!(weights[i] >= 0.0))
      throw std::invalid_argument("multinomial_resample: negative weight");
    acc += weights[i];
    cum[i] = acc;
  }
  if (!(acc > 0.0))
    throw std::invalid_argument("multinomial_resample: total weight is zero");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform() * acc;
    int j = static_cast<int>(
        std::upper_bound(cum.data(), cum.data() + m, u) - cum.data());
    idx[i] = std::min(j, m - 1);
  }
  return idx;
}

std::vector<int> systematic_resample(const Vec& weights, int n, RngStream& rng) {
  const int m = static_cast<int>(weights.size());
  if (m < 1) throw std::invalid_argument("systematic_resample: no weights");
  if (n < 1) throw std::invalid_argument("systematic_resample: n must be >= 1");
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!(weights[i] >= 0.0))
      throw std::invalid_argument("systematic_resample: negative weight");
    acc += weights[i];
  }
  if (!(acc > 0.0))
    throw std::invalid_argument("systematic_resample: total weight is zero");
  std::vector<int> idx(n);
  const double step = acc / n;
  double pos = rng.uniform() * step;
  double cum = weights[0];
  int j = 0;
  for (int i = 0; i < n; ++i) {
    while (cum < pos && j + 1 < m) cum += weights[++j];
    idx[i] = j;
    pos += step;
  }
  return idx;
}

FilterResult bootstrap_filter(const ReactionNetwork& net, const ForwardSimulator& sim,
                              const Vec& c, const Dataset& data,
                              const ObservationModel& model, const Vec& x0, int n,
                              RngStream& rng, int n_threads, Resampling resampling,
                              const InitialStateSampler& x0_prior) {
  data.validate(net.num_species());
  if (n < 2) throw std::invalid_argument("bootstrap_filter: need N >= 2 particles");
  const int t_count = data.num_obs();

  std::vector<Vec> particles(n, x0), resampled(n);
  if (x0_prior)
    for (auto& p : particles) p = x0_prior(rng);
  Vec logw(n), w(n);
  double log_ml = 0.0;

  for (int j = 0; j < t_count; ++j) {
    if (j > 0) {
      // per-(step, particle) streams: parallel propagation is bit-identical
      // to serial regardless of thread count
      const std::uint64_t base = rng.next_u64();
      auto propagate = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
          RngStream prng(base, static_cast<std::uint64_t>(i));
          sim(particles[i], data.times[j - 1], data.times[j], c, prng);
        }
      };
      if (n_threads <= 1) {
        propagate(0, n);
      } else {
        std::vector<std::thread> pool;
        std::mutex err_mutex;
        std::exception_ptr first_error;
        const int chunk = (n + n_threads - 1) / n_threads;
        for (int tix = 0; tix < n_threads; ++tix) {
          const int lo = tix * chunk;
          const int hi = std::min(n, lo + chunk);
          if (lo < hi)
            pool.emplace_back([&, lo, hi] {
              try {
                propagate(lo, hi);
              } catch (...) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!first_error) first_error = std::current_exception();
              }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
      }
    }
    for (int i = 0; i < n; ++i) logw[i] = obs_logdensity(model, data.y[j], particles[i]);
    const double shift = logw.maxCoeff();
    if (!std::isfinite(shift))
      return {-std::numeric_limits<double>::infinity(), true};
    w = (logw.array() - shift).exp();
    const double total = w.sum();
    log_ml += shift + std::log(total / n);

    const auto ancestors = resampling == Resampling::Multinomial
                               ? multinomial_resample(w / total, n, rng)
                               : systematic_resample(w / total, n, rng);
    for (int i = 0; i < n; ++i) resampled[i] = particles[ancestors[i]];
    particles.swap(resampled);
  }
  return {log_ml, false};
}

}  // namespace skm
