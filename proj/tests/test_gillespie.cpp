#include "skm/gillespie.hpp"

#include "support/test_stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace skm;

namespace {

// single-species immigration (rate c1) network
ReactionNetwork immigration_net(double c1) {
  IMat u(1, 1), v(1, 1);
  u << 0;
  v << 1;
  Vec c(1);
  c << c1;
  return ReactionNetwork::create({"A"}, u, v, c);
}

// single-species death (per capita rate c) network
ReactionNetwork death_net(double rate) {
  IMat u(1, 1), v(1, 1);
  u << 1;
  v << 0;
  Vec c(1);
  c << rate;
  return ReactionNetwork::create({"A"}, u, v, c);
}

}  // namespace

TEST_SUITE("gillespie") {

TEST_CASE("absorbed state holds to t_end") {
  auto net = death_net(1.0);
  SsaConfig cfg;
  cfg.t_end = 5.0;
  RngStream rng(1, 0);
  Vec x0(1);
  x0 << 0;  // hazard zero immediately
  auto traj = simulate_gillespie(net, net.rate_constants(), x0, cfg, rng);
  CHECK(traj.states.front().t == 0.0);
  CHECK(traj.states.back().t == 5.0);
  CHECK(traj.states.back().x[0] == 0.0);
  CHECK(traj.meta.events == 0);
}

TEST_CASE("pure immigration: increment matches Poisson(c1 t) moments within 1%") {
  const double c1 = 3.0, t_end = 4.0;
  auto net = immigration_net(c1);
  SsaConfig cfg;
  cfg.t_end = t_end;
  cfg.record = SsaConfig::Record::Grid;
  cfg.grid_dt = t_end;
  const int reps = 100000;
  double s = 0, ss = 0;
  Vec x0(1);
  x0 << 0;
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(42, rep);
    auto traj = simulate_gillespie(net, net.rate_constants(), x0, cfg, rng);
    const double inc = traj.states.back().x[0];
    s += inc;
    ss += inc * inc;
  }
  const double m = s / reps, var = ss / reps - m * m;
  CHECK(m == doctest::Approx(c1 * t_end).epsilon(0.01));
  CHECK(var == doctest::Approx(c1 * t_end).epsilon(0.01));
}

TEST_CASE("pure death: extinction probability (1 - e^{-ct})^n within CI") {
  const double rate = 0.7, t = 1.3;
  const int n0 = 5, reps = 100000;
  auto net = death_net(rate);
  SsaConfig cfg;
  cfg.t_end = t;
  cfg.record = SsaConfig::Record::Grid;
  cfg.grid_dt = t;
  Vec x0(1);
  x0 << n0;
  long extinct = 0;
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(77, rep);
    auto traj = simulate_gillespie(net, net.rate_constants(), x0, cfg, rng);
    if (traj.states.back().x[0] == 0.0) ++extinct;
  }
  const double p = std::pow(1.0 - std::exp(-rate * t), n0);
  const double se = std::sqrt(p * (1 - p) / reps);
  CHECK(std::fabs(static_cast<double>(extinct) / reps - p) < 4.0 * se);
}

TEST_CASE("event count in pure immigration passes chi-square GOF vs Poisson at 1%") {
  const double c1 = 2.0, t_end = 3.0;  // mean 6
  auto net = immigration_net(c1);
  SsaConfig cfg;
  cfg.t_end = t_end;
  const int reps = 100000;
  std::vector<long> counts(40, 0);
  Vec x0(1);
  x0 << 0;
  for (int rep = 0; rep < reps; ++rep) {
    RngStream rng(4242, rep);
    auto traj = simulate_gillespie(net, net.rate_constants(), x0, cfg, rng);
    const long n = static_cast<long>(traj.meta.events);
    counts[std::min<long>(n, 39)] += 1;
  }
  // expected Poisson(6) reps, pooled tail
  const double mean = c1 * t_end;
  double stat = 0;
  int dof = -1;
  double pooled_obs = 0, pooled_exp = 0;
  double logp = -mean;  // log pmf at 0
  for (int kk = 0; kk < 40; ++kk) {
    if (kk > 0) logp += std::log(mean / kk);
    double expected = (kk < 39) ? reps * std::exp(logp)
                                : reps - pooled_exp;  // everything else
    const double observed = counts[kk];
    if (expected < 5.0) {
      pooled_obs += observed;
      pooled_exp += expected;
      continue;
    }
    stat += (observed - expected) * (observed - expected) / expected;
    pooled_exp += expected;
    pooled_obs += observed;
    ++dof;
  }
  CHECK(test_stats::chi2_sf(stat, dof) > 0.01);
}

TEST_CASE("waiting times in a constant-hazard regime are exponential (KS, 1%)") {
  const double c1 = 5.0;
  auto net = immigration_net(c1);
  SsaConfig cfg;
  cfg.t_end = 2001.0;
  cfg.max_events = 100000;
  RngStream rng(9, 0);
  Vec x0(1);
  x0 << 0;
  auto traj = simulate_gillespie(net, net.rate_constants(), x0, cfg, rng);
  std::vector<double> waits;
  for (size_t i = 1; i + 1 < traj.states.size() && waits.size() < 10000; ++i)
    waits.push_back(traj.states[i].t - traj.states[i - 1].t);
  REQUIRE(waits.size() == 10000);
  const double p = test_stats::ks_test(
      waits, [&](double t) { return 1.0 - std::exp(-c1 * t); });
  CHECK(p > 0.01);
}

TEST_CASE("max_events guard yields truncated trajectory") {
  auto net = immigration_net(100.0);
  SsaConfig cfg;
  cfg.t_end = 100.0;
  cfg.max_events = 50;
  RngStream rng(2, 0);
  Vec x0(1);
  x0 << 0;
  auto traj = simulate_gillespie(net, net.rate_constants(), x0, cfg, rng);
  CHECK(traj.meta.truncated);
  CHECK(traj.states.back().t < 100.0);
}

TEST_CASE("states stay nonnegative integers") {
  auto net = autoreg_network(1.0);
  SsaConfig cfg;
  cfg.t_end = 30.0;
  RngStream rng(3, 0);
  auto traj = simulate_gillespie(net, net.rate_constants(), Vec::Zero(2), cfg, rng);
  for (const auto& s : traj.states) {
    CHECK(s.x.minCoeff() >= 0.0);
    CHECK(s.x[0] == std::floor(s.x[0]));
    CHECK(s.x[1] == std::floor(s.x[1]));
  }
}

TEST_CASE("sample_at_grid: right-continuity and range checks") {
  Trajectory traj;
  Vec a(1), b(1);
  a << 1;
  b << 2;
  traj.states = {{0.0, a}, {1.5, b}};
  auto out = sample_at_grid(traj, {0.0, 1.0, 1.5});
  CHECK(out[0].x[0] == 1);
  CHECK(out[1].x[0] == 1);   // before the event
  CHECK(out[2].x[0] == 2);   // exactly at the event: post-event state
  CHECK_THROWS_AS(sample_at_grid(traj, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_at_grid(traj, {-0.5}), std::invalid_argument);
}

TEST_CASE("grid recording matches event recording sampled at the grid") {
  auto net = autoreg_network(1.0);
  SsaConfig ev_cfg;
  ev_cfg.t_end = 20.0;
  SsaConfig grid_cfg = ev_cfg;
  grid_cfg.record = SsaConfig::Record::Grid;
  grid_cfg.grid_dt = 1.0;
  RngStream r1(5, 3), r2(5, 3);
  auto t_ev = simulate_gillespie(net, net.rate_constants(), Vec::Zero(2), ev_cfg, r1);
  auto t_gr = simulate_gillespie(net, net.rate_constants(), Vec::Zero(2), grid_cfg, r2);
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(i);
  auto from_events = sample_at_grid(t_ev, times);
  auto from_grid = sample_at_grid(t_gr, times);
  for (size_t i = 0; i < times.size(); ++i) CHECK(from_events[i].x == from_grid[i].x);
}

TEST_CASE("determinism: same seed and stream give identical trajectories") {
  auto net = autoreg_network(10.0);
  SsaConfig cfg;
  cfg.t_end = 10.0;
  RngStream r1(100, 5), r2(100, 5);
  auto t1 = simulate_gillespie(net, net.rate_constants(), Vec::Zero(2), cfg, r1);
  auto t2 = simulate_gillespie(net, net.rate_constants(), Vec::Zero(2), cfg, r2);
  REQUIRE(t1.states.size() == t2.states.size());
  for (size_t i = 0; i < t1.states.size(); ++i) {
    CHECK(t1.states[i].t == t2.states[i].t);
    CHECK(t1.states[i].x == t2.states[i].x);
  }
}

}  // TEST_SUITE
