#pragma once

#include "skm/partition.hpp"

#include <utility>
#include <vector>

namespace skm {

struct OdeConfig {
  double rel_tol = 1e-4;
  double abs_tol = 1e-4;
  double max_step = 0.0;  // 0 -> interval length
  int dense_grid = 32;    // interior evaluation points for the running maxima
  bool force_implicit = false;  // debugging: run the stiff fallback unconditionally
};

// The coupled deterministic quantities defining the LNA Gaussian over one
// interval. At interval start eta = x_curr, G = Ginv = I, Psi = 0, tau = 0.
struct LnaState {
  double t = 0.0;
  Vec eta;
  Mat G;
  Mat Ginv;  // co-integrated via dGinv/dt = -Ginv F; drift-monitored
  Mat Psi;
  Vec tau;  // tau_i(t) = int_0^t sum_j [Ginv beta]^2_ij dr, nondecreasing
};

struct RunningMaxima {
  double lambda_s_max = 0.0;
  Vec b_max;  // componentwise max over the interval of |G(t)' b*(t)|
};

struct LnaDense {
  std::vector<LnaState> states;  // accepted solver steps
};

struct LnaResult {
  LnaState state;
  RunningMaxima maxima;
  long steps = 0;
  bool stiff_fallback = false;
  long ginv_refactorizations = 0;
  long det_warnings = 0;  // accepted steps where det G <= 0
};

/// Drift alpha = A_f' h_f(eta) and its exact mass-action Jacobian F, with slow
/// reaction rates zeroed.
void drift_and_jacobian(const ReactionNetwork& net, const Partition& part, const Vec& c,
                        const Vec& eta, Vec& alpha, Mat& F);

/// PSD square root of A_f' diag(h_f(eta)) A_f (fast hazards clamped at 0).
Mat diffusion_matrix(const ReactionNetwork& net, const Partition& part, const Vec& c,
                     const Vec& eta);

// Reusable integration scratch (one per simulation context / particle). Also
// carries the accepted step size across intervals so statistically similar
// intervals start at a good step, and the accepted-step records that provide
// the solver's continuous extension.
struct LnaContext {
  double h_carry = 0.0;
  struct StepRec {
    double t0 = 0.0, h = 0.0;
    Vec y0, f0, y1, f1;
  };
  std::vector<StepRec> history;  // slots reused across intervals
  size_t history_len = 0;
  bool keep_history = false;
  Vec ytmp2;  // dynamic-k scratch
  void reset() {
    h_carry = 0.0;
    history_len = 0;
  }
};

/// Jointly integrates d(eta)/dt = alpha, dG/dt = F G, dGinv/dt = -Ginv F,
/// dPsi/dt = Ginv beta beta' Ginv', dtau_i/dt = [Ginv beta beta' Ginv']_ii
/// over [0, dt], recording running maxima of lambda^s(eta(t)) and |G(t)'b*(t)|
/// at every accepted step plus dense_grid interior points (cubic Hermite).
LnaResult integrate_lna(const ReactionNetwork& net, const Partition& part, const Vec& c,
                        const Vec& x_curr, double dt, const OdeConfig& cfg,
                        LnaContext* ctx = nullptr, LnaDense* dense = nullptr);

/// Allocation-free variant for hot loops: result storage is reused. When
/// ctx.keep_history is set the accepted steps are recorded so lna_state_at can
/// evaluate the solution at interior times.
void integrate_lna_into(const ReactionNetwork& net, const Partition& part,
                        const Vec& c, const Vec& x_curr, double dt,
                        const OdeConfig& cfg, LnaContext& ctx, LnaResult& res,
                        LnaDense* dense = nullptr);

/// Continuous extension of the last history-keeping integration: cubic Hermite
/// on the accepted step containing t (the standard dense-output mechanism of
/// adaptive solvers).
void lna_state_at(const LnaContext& ctx, int k, double t, LnaState& out);

/// Gaussian marginal at the state's time: mean = eta, cov = G Psi G' symmetrized.
std::pair<Vec, Mat> gaussian_at(const LnaState& s);

}  // namespace skm
