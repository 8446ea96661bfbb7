#include "skm/rng.hpp"
#include "skm/stats.hpp"

#include "support/test_stats.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace skm;

TEST_SUITE("rng_stats") {

TEST_CASE("identical (seed, stream) reproduces the sequence") {
  RngStream a(123, 7), b(123, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RngStream c(123, 8);
  bool any_diff = false;
  RngStream a2(123, 7);
  for (int i = 0; i < 100; ++i) any_diff = any_diff || (a2.next_u64() != c.next_u64());
  CHECK(any_diff);
}

TEST_CASE("stream independence: paired correlation below 0.01") {
  RngStream a(99, 0), b(99, 1);
  const int n = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform(), y = b.uniform();
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  CHECK(std::fabs(cov / std::sqrt(vx * vy)) < 0.01);
}

TEST_CASE("exponential draws: deterministic, mean, domain errors") {
  RngStream rng(5, 0);
  const double first = draw_exponential(rng, 1.0);
  RngStream rng2(5, 0);
  CHECK(draw_exponential(rng2, 1.0) == first);

  double sum = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += draw_exponential(rng, 2.0);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.004));

  CHECK_THROWS_AS(draw_exponential(rng, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(draw_exponential(rng, -1.0), std::invalid_argument);
}

TEST_CASE("poisson: zero mean, small and large mean moments") {
  RngStream rng(6, 0);
  for (int i = 0; i < 100; ++i) CHECK(draw_poisson(rng, 0.0) == 0);

  for (double mean : {3.0, 45.0, 400.0}) {
    double s = 0, ss = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double v = static_cast<double>(draw_poisson(rng, mean));
      s += v;
      ss += v * v;
    }
    const double m = s / n, var = ss / n - m * m;
    CHECK(m == doctest::Approx(mean).epsilon(0.01));
    CHECK(var == doctest::Approx(mean).epsilon(0.03));
  }
  CHECK_THROWS_AS(draw_poisson(rng, -1.0), std::invalid_argument);
}

TEST_CASE("bernoulli(0.1) sample mean within binomial CI") {
  RngStream rng(7, 0);
  const int n = 100000;
  long ones = 0;
  for (int i = 0; i < n; ++i) ones += draw_bernoulli(rng, 0.1);
  CHECK(static_cast<double>(ones) / n == doctest::Approx(0.1).epsilon(0.03));
  CHECK_THROWS_AS(draw_bernoulli(rng, 1.5), std::invalid_argument);
}

TEST_CASE("standard normal: variance of 1e5 draws") {
  RngStream rng(8, 0);
  const int n = 100000;
  double s = 0, ss = 0;
  for (int i = 0; i < n; ++i) {
    const double v = draw_standard_normal(rng);
    s += v;
    ss += v * v;
  }
  const double m = s / n;
  CHECK(m == doctest::Approx(0.0).epsilon(1).scale(0.01));
  CHECK(ss / n - m * m == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("normal_quantile: symmetry, known points, domain") {
  CHECK(normal_quantile(0.5) == 0.0);
  // oracle: bisection on Phi via erfc
  auto quantile_oracle = [](double p) {
    double lo = -40, hi = 40;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  CHECK(normal_quantile(1.25e-7) == doctest::Approx(quantile_oracle(1.25e-7)).epsilon(1e-9));
  CHECK(normal_quantile(1.25e-7) == doctest::Approx(-5.157).epsilon(1e-3));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("quantile round-trips the CDF to 1e-12 relative on a log grid") {
  // 1000 points spanning (1e-8, 1 - 1e-8)
  for (int i = 0; i < 1000; ++i) {
    const double frac = static_cast<double>(i) / 999.0;
    double p;
    if (i % 2 == 0)
      p = std::pow(10.0, -8.0 + 7.7 * frac);  // lower tail
    else
      p = 1.0 - std::pow(10.0, -8.0 + 7.7 * frac);
    const double back = normal_cdf(normal_quantile(p));
    CHECK(std::fabs(back - p) <= 1e-12 * std::max(p, 1.0 - p) + 1e-300);
  }
  // monotone
  double prev = normal_quantile(1e-8);
  for (double p = 1e-6; p < 1.0 - 1e-6; p += 1e-3) {
    const double z = normal_quantile(p);
    CHECK(z > prev);
    prev = z;
  }
}

TEST_CASE("draw_mv_normal: zero covariance, variance, independence, rejection") {
  RngStream rng(9, 0);
  Vec mean(2);
  mean << 3.0, -1.0;
  Mat zero = Mat::Zero(2, 2);
  CHECK(draw_mv_normal(rng, mean, zero) == mean);

  Mat cov1(1, 1);
  cov1 << 4.0;
  Vec m1(1);
  m1 << 0.0;
  const int n = 100000;
  double ss = 0;
  for (int i = 0; i < n; ++i) {
    const double v = draw_mv_normal(rng, m1, cov1)[0];
    ss += v * v;
  }
  CHECK(ss / n == doctest::Approx(4.0).epsilon(0.025));

  Mat diag(2, 2);
  diag << 2.0, 0.0, 0.0, 0.5;
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    Vec v = draw_mv_normal(rng, Vec::Zero(2), diag);
    sx += v[0];
    sy += v[1];
    sxx += v[0] * v[0];
    syy += v[1] * v[1];
    sxy += v[0] * v[1];
  }
  const double corr = (sxy / n - sx / n * sy / n) /
                      std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
  CHECK(std::fabs(corr) < 0.02);

  Mat asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(draw_mv_normal(rng, Vec::Zero(2), asym), std::invalid_argument);
  Mat rect(2, 1);
  CHECK_THROWS_AS(draw_mv_normal(rng, Vec::Zero(2), rect), std::invalid_argument);
}

TEST_CASE("draw_mv_normal clamps indefinite covariance at zero") {
  RngStream rng(10, 0);
  Mat cov(2, 2);  // eigenvalues 1 and -1e-9 (tolerance-scale indefiniteness)
  cov << 1.0, 0.0, 0.0, -1e-9;
  Vec v = draw_mv_normal(rng, Vec::Zero(2), cov);
  CHECK(std::isfinite(v[0]));
  CHECK(v[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("ess: iid chain close to n") {
  RngStream rng(11, 0);
  const int n = 10000;
  Vec chain(n);
  for (int i = 0; i < n; ++i) chain[i] = draw_standard_normal(rng);
  auto r = ess(chain);
  CHECK(!r.degenerate);
  CHECK(r.ess > 0.8 * n);
  CHECK(r.ess <= n * 1.0 + 1e-9);
}

TEST_CASE("ess: AR(1) rho=0.9 matches analytic IACT within 30%") {
  RngStream rng(12, 0);
  const int n = 20000;
  const double rho = 0.9;
  Vec chain(n);
  double x = 0;
  for (int i = 0; i < n; ++i) {
    x = rho * x + std::sqrt(1 - rho * rho) * draw_standard_normal(rng);
    chain[i] = x;
  }
  auto r = ess(chain);
  const double expected = n * (1 - rho) / (1 + rho);
  CHECK(r.ess == doctest::Approx(expected).epsilon(0.30));
}

TEST_CASE("ess: alternating chain clamps to n, constant chain degenerates") {
  Vec alt(1000);
  for (int i = 0; i < 1000; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
  auto r = ess(alt);
  CHECK(r.clamped);
  CHECK(r.ess == 1000.0);

  Vec flat = Vec::Constant(100, 3.14);
  auto d = ess(flat);
  CHECK(d.degenerate);
  CHECK(d.ess == 1.0);

  Vec tiny(5);
  tiny << 1, 2, 3, 4, 5;
  CHECK_THROWS_AS(ess(tiny), std::invalid_argument);
}

TEST_CASE("psd_sqrt reconstructs the matrix") {
  Mat m(2, 2);
  m << 4.0, 1.0, 1.0, 2.0;
  Mat root = psd_sqrt(m);
  CHECK(((root * root.transpose()) - m).cwiseAbs().maxCoeff() < 1e-10);
}

}  // TEST_SUITE
