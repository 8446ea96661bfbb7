#include "skm/cle.hpp"

#include "skm/stats.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace skm {

void CleConfig::validate() const {
  if (!(dt_euler > 0.0)) throw std::invalid_argument("cle: dt_euler must be > 0");
  if (!(dt_hybrid > 0.0)) throw std::invalid_argument("cle: dt_hybrid must be > 0");
  if (dt_euler > dt_hybrid * (1.0 + 1e-12))
    throw std::invalid_argument("cle: dt_euler must be <= dt_hybrid");
  if (!(rewind_shrink > 0.0 && rewind_shrink < 1.0))
    throw std::invalid_argument("cle: rewind_shrink must lie in (0,1)");
  if (!(min_dt_hybrid > 0.0))
    throw std::invalid_argument("cle: min_dt_hybrid must be > 0");
}

namespace {

// One Euler-Maruyama step of the full CLE: x += A'h dt + sqrt(A'diag(h)A) z sqrt(dt).
void cle_step(const ReactionNetwork& net, const Vec& c, Vec& x, double dt, const Vec& z,
              Vec& h_ws, Mat& d_ws) {
  const int k = net.num_species();
  hazards_clamped(net, x, c, h_ws);
  d_ws.setZero(k, k);
  Vec drift = Vec::Zero(k);
  for (int j = 0; j < net.num_reactions(); ++j) {
    const double h = h_ws[j];
    if (h == 0.0) continue;
    for (const auto& p : net.changes(j)) {
      drift[p.species] += p.delta * h;
      for (const auto& q : net.changes(j))
        d_ws(p.species, q.species) += h * p.delta * q.delta;
    }
  }
  x += drift * dt + psd_sqrt(d_ws) * (z * std::sqrt(dt));
  x = x.cwiseMax(0.0);
}

}  // namespace

Trajectory simulate_cle(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                        double t_end, double dt_euler, RngStream& rng,
                        double record_dt) {
  if (!(t_end > 0.0)) throw std::invalid_argument("cle: t_end must be > 0");
  if (!(dt_euler > 0.0)) throw std::invalid_argument("cle: dt_euler must be > 0");
  if (x0.minCoeff() < 0.0) throw std::invalid_argument("cle: x0 must be nonnegative");

  Trajectory traj;
  traj.meta.simulator = "cle";
  traj.meta.seed = rng.seed();
  traj.meta.stream_id = rng.stream_id();
  traj.states.push_back({0.0, x0});

  const int k = net.num_species();
  Vec x = x0, z(k), h_ws(net.num_reactions());
  Mat d_ws(k, k);
  const long n_steps = static_cast<long>(std::ceil(t_end / dt_euler - 1e-9));
  long next_record = 1;
  for (long s = 0; s < n_steps; ++s) {
    const double t0 = s * dt_euler;
    const double dt = std::min(dt_euler, t_end - t0);
    for (int i = 0; i < k; ++i) z[i] = draw_standard_normal(rng);
    cle_step(net, c, x, dt, z, h_ws, d_ws);
    const double t1 = std::min(t0 + dt, t_end);
    if (record_dt <= 0.0) {
      traj.states.push_back({t1, x});
    } else {
      while (next_record * record_dt <= t1 + 1e-12 && next_record * record_dt < t_end) {
        traj.states.push_back({next_record * record_dt, x});
        ++next_record;
      }
    }
  }
  if (traj.states.back().t < t_end) traj.states.push_back({t_end, x});
  return traj;
}

void advance_cle(const ReactionNetwork& net, const Vec& c, Vec& x, double t0, double t1,
                 double dt_euler, RngStream& rng) {
  const int k = net.num_species();
  Vec z(k), h_ws(net.num_reactions());
  Mat d_ws(k, k);
  const double span = t1 - t0;
  const long n_steps = static_cast<long>(std::ceil(span / dt_euler - 1e-9));
  for (long s = 0; s < n_steps; ++s) {
    const double dt = std::min(dt_euler, span - s * dt_euler);
    for (int i = 0; i < k; ++i) z[i] = draw_standard_normal(rng);
    cle_step(net, c, x, dt, z, h_ws, d_ws);
  }
}

namespace {

// Fast-subsystem Euler-Maruyama step (slow species untouched by construction:
// fast reactions do not change them). Hazards evaluated at the pre-step state.
void fast_step(const ReactionNetwork& net, const Partition& part, const Vec& c, Vec& x,
               double dt, const Vec& z, Mat& d_ws) {
  if (part.fast_reactions.empty()) return;
  const int k = net.num_species();
  d_ws.setZero(k, k);
  Vec drift = Vec::Zero(k);
  for (int j : part.fast_reactions) {
    const double h = std::max(0.0, hazard(net, x, j, c));
    if (h == 0.0) continue;
    for (const auto& p : net.changes(j)) {
      drift[p.species] += p.delta * h;
      for (const auto& q : net.changes(j))
        d_ws(p.species, q.species) += h * p.delta * q.delta;
    }
  }
  x += drift * dt + psd_sqrt(d_ws) * (z * std::sqrt(dt));
  x = x.cwiseMax(0.0);
}

template <class Recorder>
void run_hybrid_sde(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                    double t1, const CleConfig& cfg, const ClassifyConfig& ccfg,
                    RngStream& rng, Trajectory::Meta& meta, Recorder&& record) {
  cfg.validate();
  if (x.minCoeff() < 0.0)
    throw std::invalid_argument("hybrid-sde: state must be nonnegative");
  const int r = net.num_reactions();
  const int k = net.num_species();

  std::vector<double> residual(r, 0.0);
  std::vector<char> has_residual(r, 0);

  double t = t0;
  double dt_h_current = cfg.dt_hybrid;
  Vec z(k);
  Mat d_ws(k, k);
  std::vector<Vec> z_cache;
  Vec x_try, x_save;
  std::vector<double> res_try, res_save;

  while (t1 - t > 1e-12 * std::max(1.0, t1)) {
    const bool last = t1 - t <= dt_h_current * (1.0 + 1e-9);
    const double dt_h = last ? t1 - t : dt_h_current;
    ClassifyConfig step_ccfg = ccfg;
    step_ccfg.dt_hybrid = dt_h;
    Partition part = classify_reactions(net, c, x, step_ccfg);
    ++meta.reclassifications;

    // residual bookkeeping: keep residuals of reactions that remain slow,
    // draw fresh log-uniforms for newly slow ones, drop fast ones
    for (int j = 0; j < r; ++j) {
      if (part.is_fast_reaction[j]) {
        has_residual[j] = 0;
      } else if (!has_residual[j]) {
        residual[j] = std::log(rng.uniform());
        has_residual[j] = 1;
      }
    }

    const long n_steps = static_cast<long>(std::ceil(dt_h / cfg.dt_euler - 1e-9));
    z_cache.resize(n_steps);

    x_save = x;
    res_save = residual;

    // integrate fast species and residuals, caching increments; record the
    // first crossing per slow reaction
    int n_crossings = 0;
    int first_reaction = -1;
    long first_step = -1;
    double first_res_pre = 0.0, first_h_pre = 0.0, first_delta = 0.0;
    x_try = x;
    res_try = residual;
    const bool any_fast = part.any_fast();
    for (long s = 0; s < n_steps; ++s) {
      const double step_dt = std::min(cfg.dt_euler, dt_h - s * cfg.dt_euler);
      if (any_fast) {
        for (int i = 0; i < k; ++i) z[i] = draw_standard_normal(rng);
        z_cache[s] = z;
      }
      // slow hazards at the pre-step state drive the residual ODEs
      for (int j : part.slow_reactions) {
        const double h = std::max(0.0, hazard(net, x_try, j, c));
        const double pre = res_try[j];
        res_try[j] = pre + h * step_dt;
        if (pre < 0.0 && res_try[j] >= 0.0) {
          ++n_crossings;
          const double delta_j = -pre / h;  // crossing offset within this step
          if (first_step < 0 || (s == first_step && delta_j < first_delta)) {
            first_reaction = j;
            first_step = s;
            first_res_pre = pre;
            first_h_pre = h;
            first_delta = delta_j;
          }
        }
      }
      fast_step(net, part, c, x_try, step_dt, z, d_ws);
    }

    if (n_crossings == 0) {
      x = x_try;
      residual = res_try;
      t = last ? t1 : t + dt_h;
      record(t, x);
      dt_h_current = cfg.dt_hybrid;  // reset after a committed interval
      continue;
    }

    bool process_single = (n_crossings == 1);
    if (!process_single) {
      const double shrunk = dt_h_current * cfg.rewind_shrink;
      if (shrunk >= cfg.min_dt_hybrid) {
        // rewind: restore state/residuals, retry with the reduced interval
        // (fresh increments by design; see module notes)
        x = x_save;
        residual = res_save;
        dt_h_current = shrunk;
        ++meta.rewinds;
        continue;
      }
      // floor reached: terminate the retry cascade by taking the earliest
      // crossing only
      ++meta.floor_fallbacks;
      process_single = true;
    }

    // single crossing of first_reaction inside step first_step:
    // linear root from the pre-crossing grid point t'
    const double t_prime = first_step * cfg.dt_euler;
    const double delta = -first_res_pre / first_h_pre;  // in (0, step_dt]
    const double tau_rel = t_prime + delta;

    // replay from the saved state with the same increments up to t', then a
    // partial step of length delta reusing the cached draw
    x = x_save;
    residual = res_save;
    for (long s = 0; s < first_step; ++s) {
      const double step_dt = std::min(cfg.dt_euler, dt_h - s * cfg.dt_euler);
      for (int j : part.slow_reactions)
        residual[j] += std::max(0.0, hazard(net, x, j, c)) * step_dt;
      fast_step(net, part, c, x, step_dt, z_cache[s], d_ws);
    }
    for (int j : part.slow_reactions)
      residual[j] += std::max(0.0, hazard(net, x, j, c)) * delta;
    fast_step(net, part, c, x, delta, z_cache[first_step], d_ws);

    apply_reaction_inplace(x, net, first_reaction, &meta.negativity_clamps);
    residual[first_reaction] = std::log(rng.uniform());
    ++meta.events;
    t += tau_rel;
    record(t, x);
    dt_h_current = cfg.dt_hybrid;
  }
}

}  // namespace

Trajectory simulate_hybrid_sde(const ReactionNetwork& net, const Vec& c, const Vec& x0,
                               double t_end, const CleConfig& cle_cfg,
                               const ClassifyConfig& classify_cfg, RngStream& rng) {
  if (!(t_end > 0.0)) throw std::invalid_argument("hybrid-sde: t_end must be > 0");
  Trajectory traj;
  traj.meta.simulator = "hybrid-sde";
  traj.meta.seed = rng.seed();
  traj.meta.stream_id = rng.stream_id();
  traj.states.push_back({0.0, x0});
  Vec x = x0;
  run_hybrid_sde(net, c, x, 0.0, t_end, cle_cfg, classify_cfg, rng, traj.meta,
                 [&](double t, const Vec& xs) { traj.states.push_back({t, xs}); });
  return traj;
}

void advance_hybrid_sde(const ReactionNetwork& net, const Vec& c, Vec& x, double t0,
                        double t1, const CleConfig& cle_cfg,
                        const ClassifyConfig& classify_cfg, RngStream& rng,
                        Trajectory::Meta* meta) {
  Trajectory::Meta local;
  run_hybrid_sde(net, c, x, t0, t1, cle_cfg, classify_cfg, rng, meta ? *meta : local,
                 [](double, const Vec&) {});
}

}  // namespace skm
