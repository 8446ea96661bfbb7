#include "skm/hybrid_lna.hpp"

#include "skm/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace skm {

void HybridConfig::validate() const {
  if (!(dt_hybrid > 0.0) || !(dt_integrate > 0.0))
    throw std::invalid_argument("hybrid: dt_hybrid and dt_integrate must be > 0");
  if (dt_integrate > dt_hybrid * (1.0 + 1e-12))
    throw std::invalid_argument("hybrid: dt_integrate must be <= dt_hybrid");
  if (!(n_star > 0.0)) throw std::invalid_argument("hybrid: n_star must be > 0");
  if (!(eps_star > 0.0 && eps_star < 1.0))
    throw std::invalid_argument("hybrid: eps_star must lie in (0,1)");
  if (!(eps_hybrid > 0.0 && eps_hybrid < 1.0))
    throw std::invalid_argument("hybrid: eps_hybrid must lie in (0,1)");
  if (eps_hybrid < eps_star / n_star - 1e-12)
    throw std::invalid_argument("hybrid: require eps_hybrid >= eps_star / n_star");
  if (!(bound_eps > 0.0 && bound_eps < 1.0))
    throw std::invalid_argument("hybrid: bound_eps must lie in (0,1)");
  if (!(ode.rel_tol > 0.0 && ode.abs_tol > 0.0))
    throw std::invalid_argument("hybrid: ODE tolerances must be > 0");
}

BoundInfo probable_bound(const RunningMaxima& maxima, const Vec& tau, double bound_eps,
                         int k) {
  if (!(bound_eps > 0.0 && bound_eps < 1.0))
    throw std::invalid_argument("probable_bound: bound_eps must lie in (0,1)");
  BoundInfo b;
  b.lambda_s_max = maxima.lambda_s_max;
  b.b_max = maxima.b_max;
  const double q = -normal_quantile(bound_eps / (4.0 * k));
  b.u_star.resize(k);
  for (int i = 0; i < k; ++i) b.u_star[i] = q * std::sqrt(std::max(0.0, tau[i]));
  b.h_s_max = b.lambda_s_max + b.b_max.dot(b.u_star);
  return b;
}

void sample_state_into(Vec& x, const LnaState& lna, const Partition& part,
                       RngStream& rng, long* clamp_count) {
  const int k = static_cast<int>(x.size());
  int n_fast = 0, single = -1;
  for (int i = 0; i < k; ++i)
    if (part.is_fast_species[i]) {
      ++n_fast;
      single = i;
    }
  if (n_fast == 0) return;

  if (n_fast == 1) {
    // var = row `single` of G Psi G'
    double var = 0.0;
    for (int a = 0; a < k; ++a) {
      double acc = 0.0;
      for (int b = 0; b < k; ++b) acc += lna.Psi(a, b) * lna.G(single, b);
      var += lna.G(single, a) * acc;
    }
    double v = lna.eta[single];
    if (var > 0.0) v += std::sqrt(var) * draw_standard_normal(rng);
    if (v < 0.0) {
      v = 0.0;
      if (clamp_count) ++*clamp_count;
    }
    x[single] = v;
    return;
  }

  std::vector<int> fast;
  fast.reserve(n_fast);
  for (int i = 0; i < k; ++i)
    if (part.is_fast_species[i]) fast.push_back(i);
  Mat full = lna.G * lna.Psi * lna.G.transpose();
  Vec mean(n_fast);
  Mat cov(n_fast, n_fast);
  for (int a = 0; a < n_fast; ++a) {
    mean[a] = lna.eta[fast[a]];
    for (int b = 0; b < n_fast; ++b)
      cov(a, b) = 0.5 * (full(fast[a], fast[b]) + full(fast[b], fast[a]));
  }
  Vec draw = draw_mv_normal(rng, mean, cov);
  for (int a = 0; a < n_fast; ++a) {
    if (draw[a] < 0.0) {
      draw[a] = 0.0;
      if (clamp_count) ++*clamp_count;
    }
    x[fast[a]] = draw[a];
  }
}

Vec sample_state_at(const LnaState& lna, const Partition& part, const Vec& x_curr,
                    RngStream& rng, long* clamp_count) {
  Vec out = x_curr;
  sample_state_into(out, lna, part, rng, clamp_count);
  return out;
}

namespace {

// The generic thinning loop; record(t, x) fires whenever
// t_curr advances (slow events and interval boundaries).
template <class Recorder>
void run_hybrid_lna(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                    double t1, const HybridConfig& cfg, RngStream& rng,
                    Trajectory::Meta& meta, LnaContext& ctx, Recorder&& record,
                    LnaDense* debug_dense = nullptr) {
  cfg.validate();
  if (x.minCoeff() < 0.0)
    throw std::invalid_argument("hybrid-lna: state must be nonnegative");
  const int k = net.num_species();
  double t = t0;
  Vec h_slow_ws(net.num_reactions());
  Vec b_star_ws(k);
  Partition part;
  LnaResult pre;
  LnaState at_star;
  ctx.keep_history = true;  // second integration uses the continuous extension
  const double quantile_coeff = -normal_quantile(cfg.bound_eps / (4.0 * k));

  while (t1 - t > 1e-12 * std::max(1.0, t1)) {
    const bool last = t1 - t <= cfg.dt_integrate * (1.0 + 1e-9);
    const double dt_h = std::min(cfg.dt_hybrid, t1 - t);
    const double dt_i = last ? t1 - t : cfg.dt_integrate;

    classify_reactions_into(part, net, c, x, cfg.classify_config(dt_h));
    ++meta.reclassifications;

    // Species no longer touched by fast reactions return to integer counts.
    bool rounded = false;
    for (int i = 0; i < k; ++i) {
      if (!part.is_fast_species[i]) {
        const double r = std::max(0.0, std::round(x[i]));
        if (r != x[i]) {
          x[i] = r;
          rounded = true;
        }
      }
    }
    if (rounded) classify_reactions_into(part, net, c, x, cfg.classify_config(dt_h));

    const bool trivial = !part.any_fast();

    // Steps 4-6: preliminary integration, running maxima, probable bound.
    double h_max;
    if (trivial) {
      // eta constant, G = I, Psi = 0, tau = 0: the bound is just lambda^s(x).
      double lam;
      slow_linearization(part, x, lam, b_star_ws);
      h_max = lam;
    } else {
      if (debug_dense) {
        LnaDense local;
        integrate_lna_into(net, part, c, x, dt_i, cfg.ode, ctx, pre, &local);
        for (auto& st : local.states) {
          st.t += t;
          debug_dense->states.push_back(std::move(st));
        }
      } else {
        integrate_lna_into(net, part, c, x, dt_i, cfg.ode, ctx, pre);
      }
      meta.stiff_fallback = meta.stiff_fallback || pre.stiff_fallback;
      meta.ginv_refactorizations += pre.ginv_refactorizations;
      meta.g_det_warnings += pre.det_warnings;
      h_max = pre.maxima.lambda_s_max;
      for (int i = 0; i < k; ++i)
        h_max += pre.maxima.b_max[i] *
                 (quantile_coeff * std::sqrt(std::max(0.0, pre.state.tau[i])));
    }

    // Step 7: first candidate time of the bounding Poisson process.
    const double wait = h_max > 0.0 ? draw_exponential(rng, h_max)
                                    : std::numeric_limits<double>::infinity();

    if (wait > dt_i) {  // step 8: no potential slow reaction this interval
      if (!trivial)
        sample_state_into(x, pre.state, part, rng, &meta.negativity_clamps);
      t = last ? t1 : t + dt_i;
      record(t, x);
      continue;
    }

    // Step 9: second integration to t*, via the preliminary solve's dense
    // output, and the state draw just before t*.
    ++meta.candidates;
    if (!trivial) {
      lna_state_at(ctx, k, wait, at_star);
      sample_state_into(x, at_star, part, rng, &meta.negativity_clamps);
    }

    // Step 10: thinning acceptance with the realized slow intensity.
    double lambda_x = 0.0;
    for (int j : part.slow_reactions) {
      h_slow_ws[j] = hazard(net, x, j, c);
      lambda_x += h_slow_ws[j];
    }
    const double ratio = lambda_x / h_max;
    if (ratio > 1.0) ++meta.bound_violations;  // clamped accept, never fatal

    if (rng.uniform() < ratio) {
      // Step 12: pick the slow reaction proportional to its hazard.
      double u = rng.uniform() * lambda_x;
      int chosen = part.slow_reactions.back();
      double cum = 0.0;
      for (int j : part.slow_reactions) {
        cum += h_slow_ws[j];
        if (u < cum) {
          chosen = j;
          break;
        }
      }
      apply_reaction_inplace(x, net, chosen, &meta.negativity_clamps);
      ++meta.events;
    }
    // Steps 11/13: advance to t* and loop back through classification.
    t += wait;
    record(t, x);
  }
}

}  // namespace

Trajectory simulate_hybrid_lna(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                               double t_end, const HybridConfig& config,
                               RngStream& rng, LnaDense* debug_dense) {
  if (!(t_end > 0.0)) throw std::invalid_argument("hybrid-lna: t_end must be > 0");
  Trajectory traj;
  traj.meta.simulator = "hybrid-lna";
  traj.meta.seed = rng.seed();
  traj.meta.stream_id = rng.stream_id();
  traj.states.push_back({0.0, x0});
  Vec x = x0;
  LnaContext ctx;
  run_hybrid_lna(net, c, x, 0.0, t_end, config, rng, traj.meta, ctx,
                 [&](double t, const Vec& xs) { traj.states.push_back({t, xs}); },
                 debug_dense);
  return traj;
}

void advance_hybrid_lna(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                        double t1, const HybridConfig& config, RngStream& rng,
                        Trajectory::Meta* meta, LnaContext* ctx) {
  Trajectory::Meta local_meta;
  LnaContext local_ctx;
  run_hybrid_lna(net, c, x, t0, t1, config, rng, meta ? *meta : local_meta,
                 ctx ? *ctx : local_ctx, [](double, const Vec&) {});
}

}  // namespace skm
