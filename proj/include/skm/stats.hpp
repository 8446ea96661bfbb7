#pragma once

#include "skm/rng.hpp"
#include "skm/types.hpp"

#include <vector>

namespace skm {

/// Symmetric PSD square root: eigendecompose, clamp negative eigenvalues at 0.
Mat psd_sqrt(const Mat& m);

/// Draw from N(mean, cov). cov is symmetrized and eigenvalue-clamped at zero,
/// so a Psi integrated to tolerance that is indefinite at noise scale still
/// yields a valid nearby PSD draw. Throws on non-square or asymmetric input.
Vec draw_mv_normal(RngStream& rng, const Vec& mean, const Mat& cov);

struct EssResult {
  double ess = 0.0;
  bool degenerate = false;  // constant chain; ess reported as 1
  bool clamped = false;     // negative integrated autocorrelation; clamped to n
};

/// Effective sample size n / (1 + 2 sum rho_l), autocorrelation sum truncated
/// by Geyer's initial monotone positive sequence rule. Chain length >= 10.
EssResult ess(const Vec& chain);
EssResult ess(const std::vector<double>& chain);

/// Linear-interpolation sample quantile (R type 7). q in [0,1]; sorts a copy.
double quantile(std::vector<double> values, double q);

}  // namespace skm
