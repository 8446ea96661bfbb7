#include "skm/stats.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skm {

Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Vec ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) ev[i] = ev[i] > 0.0 ? std::sqrt(ev[i]) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

Vec draw_mv_normal(RngStream& rng, const Vec& mean, const Mat& cov) {
  const int k = static_cast<int>(mean.size());
  if (cov.rows() != k || cov.cols() != k)
    throw std::invalid_argument("draw_mv_normal: cov must be k x k");
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("draw_mv_normal: cov not symmetric within tolerance");
  if (cov.isZero(0.0)) return mean;

  Mat sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  Vec z(k);
  for (int i = 0; i < k; ++i) z[i] = draw_standard_normal(rng);
  Vec ev = es.eigenvalues();
  for (int i = 0; i < k; ++i) ev[i] = ev[i] > 0.0 ? std::sqrt(ev[i]) : 0.0;
  return mean + es.eigenvectors() * (ev.asDiagonal() * z);
}

EssResult ess(const Vec& chain) {
  const long n = chain.size();
  if (n < 10) throw std::invalid_argument("ess: chain length must be >= 10");
  const double mean = chain.mean();
  Vec centered = chain.array() - mean;
  const double gamma0 = centered.squaredNorm() / static_cast<double>(n);
  if (gamma0 <= 0.0 || !std::isfinite(gamma0)) return {1.0, true, false};

  auto autocov = [&](long lag) {
    double s = 0.0;
    for (long t = 0; t + lag < n; ++t) s += centered[t] * centered[t + lag];
    return s / static_cast<double>(n);
  };

  // Geyer: sum paired autocorrelations Gamma_m = rho_{2m} + rho_{2m+1} while
  // positive, enforcing monotone non-increase.
  double sum_gamma = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (long m = 0; 2 * m + 1 < n; ++m) {
    double g = (autocov(2 * m) + autocov(2 * m + 1)) / gamma0;
    if (g <= 0.0) break;
    g = std::min(g, prev);
    sum_gamma += g;
    prev = g;
  }
  const double iact = 2.0 * sum_gamma - 1.0;
  if (iact <= 0.0) return {static_cast<double>(n), false, true};
  const double raw = static_cast<double>(n) / iact;
  if (raw > static_cast<double>(n)) return {static_cast<double>(n), false, true};
  return {raw, false, false};
}

EssResult ess(const std::vector<double>& chain) {
  return ess(Eigen::Map<const Vec>(chain.data(), static_cast<long>(chain.size())));
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0,1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const auto hi = static_cast<size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace skm
