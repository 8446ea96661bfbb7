#include "skm/lna.hpp"

#include "skm/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skm {

namespace {

// Per-reaction hazard value plus sparse derivative (at most two entries),
// clamped to the nonnegative branch.
struct HazardEval {
  double h = 0.0;
  int ds[2] = {-1, -1};
  double dv[2] = {0.0, 0.0};
};

template <class EtaT>
inline HazardEval eval_fast_hazard(const ReactionNetwork::Hazard& hf, double cj,
                                   const EtaT& eta) {
  using Order = ReactionNetwork::Order;
  HazardEval e;
  switch (hf.order) {
    case Order::Zeroth:
      e.h = cj;
      break;
    case Order::First: {
      const double raw = cj * eta[hf.s1];
      if (raw > 0.0) {
        e.h = raw;
        e.ds[0] = hf.s1;
        e.dv[0] = cj;
      }
      break;
    }
    case Order::SecondDistinct: {
      const double raw = cj * eta[hf.s1] * eta[hf.s2];
      if (raw > 0.0) {
        e.h = raw;
        e.ds[0] = hf.s1;
        e.dv[0] = cj * eta[hf.s2];
        e.ds[1] = hf.s2;
        e.dv[1] = cj * eta[hf.s1];
      }
      break;
    }
    case Order::Dimer: {
      const double xi = eta[hf.s1];
      if (xi >= 1.0) {
        e.h = 0.5 * cj * xi * (xi - 1.0);
        e.ds[0] = hf.s1;
        e.dv[0] = cj * (xi - 0.5);
      }
      break;
    }
  }
  return e;
}

// alpha (optional), F (optional), D = A_f' diag(h_f) A_f (optional), fast only.
void accumulate_fast(const ReactionNetwork& net, const Partition& part, const Vec& c,
                     const Vec& eta, Vec* alpha, Mat* F, Mat* D) {
  if (alpha) alpha->setZero();
  if (F) F->setZero();
  if (D) D->setZero();
  for (int j : part.fast_reactions) {
    const HazardEval e = eval_fast_hazard(net.hazard_form(j), c[j], eta);
    const auto& chs = net.changes(j);
    if (alpha && e.h != 0.0)
      for (const auto& ch : chs) (*alpha)[ch.species] += ch.delta * e.h;
    if (F)
      for (int d = 0; d < 2 && e.ds[d] >= 0; ++d)
        for (const auto& ch : chs) (*F)(ch.species, e.ds[d]) += ch.delta * e.dv[d];
    if (D && e.h != 0.0)
      for (const auto& p : chs)
        for (const auto& q : chs) (*D)(p.species, q.species) += e.h * p.delta * q.delta;
  }
}

// Packed state [eta(k), G(k^2), Ginv(k^2), Psi(k^2), tau(k)], K compile-time
// or Eigen::Dynamic. All hot-loop work happens on fixed-size views for the
// small K the networks here actually have.
template <int K>
struct LnaMachine {
  static constexpr bool kDynamic = (K == Eigen::Dynamic);
  static constexpr int kPacked =
      kDynamic ? Eigen::Dynamic : 2 * K + 3 * K * K;
  using MatK = Eigen::Matrix<double, K, K>;
  using VecK = Eigen::Matrix<double, K, 1>;
  using Packed = Eigen::Matrix<double, kPacked, 1>;

  const ReactionNetwork& net;
  const Partition& part;
  const Vec& c;
  const int k;
  const int n;  // 2k + 3k^2

  MatK F, D, W;
  VecK alpha, b_star, b_vec;

  LnaMachine(const ReactionNetwork& netv, const Partition& partv, const Vec& cv,
             int kv)
      : net(netv), part(partv), c(cv), k(kv), n(2 * kv + 3 * kv * kv) {
    if constexpr (kDynamic) {
      F.resize(k, k);
      D.resize(k, k);
      W.resize(k, k);
      alpha.resize(k);
      b_star.resize(k);
      b_vec.resize(k);
    }
  }

  auto eta(const double* y) const { return Eigen::Map<const VecK>(y, k); }
  auto G(const double* y) const { return Eigen::Map<const MatK>(y + k, k, k); }
  auto Ginv(const double* y) const {
    return Eigen::Map<const MatK>(y + k + k * k, k, k);
  }
  auto Psi(const double* y) const {
    return Eigen::Map<const MatK>(y + k + 2 * k * k, k, k);
  }
  auto tau(const double* y) const {
    return Eigen::Map<const VecK>(y + k + 3 * k * k, k);
  }
  auto eta_m(double* y) const { return Eigen::Map<VecK>(y, k); }
  auto G_m(double* y) const { return Eigen::Map<MatK>(y + k, k, k); }
  auto Ginv_m(double* y) const { return Eigen::Map<MatK>(y + k + k * k, k, k); }
  auto Psi_m(double* y) const {
    return Eigen::Map<MatK>(y + k + 2 * k * k, k, k);
  }
  auto tau_m(double* y) const {
    return Eigen::Map<VecK>(y + k + 3 * k * k, k);
  }

  template <class VecT>
  void rhs(double, const VecT& yv, VecT& dyv) {
    const double* y = yv.data();
    double* dy = dyv.data();
    auto etav = eta(y);
    auto Gv = G(y);
    auto Ginvv = Ginv(y);

    alpha.setZero();
    F.setZero();
    D.setZero();
    for (int j : part.fast_reactions) {
      const HazardEval e = eval_fast_hazard(net.hazard_form(j), c[j], etav);
      const auto& chs = net.changes(j);
      if (e.h != 0.0)
        for (const auto& ch : chs) alpha[ch.species] += ch.delta * e.h;
      for (int d = 0; d < 2 && e.ds[d] >= 0; ++d)
        for (const auto& ch : chs) F(ch.species, e.ds[d]) += ch.delta * e.dv[d];
      if (e.h != 0.0)
        for (const auto& p : chs)
          for (const auto& q : chs) D(p.species, q.species) += e.h * p.delta * q.delta;
    }

    eta_m(dy) = alpha;
    G_m(dy).noalias() = F * Gv;
    Ginv_m(dy).noalias() = -(Ginvv * F);
    W.noalias() = Ginvv * D;
    auto dPsi = Psi_m(dy);
    dPsi.noalias() = W * Ginvv.transpose();
    tau_m(dy) = dPsi.diagonal();
  }

  // lambda^s(eta) and |G' b*| maxima update from a packed head (eta + G only)
  void update_maxima(const double* head, RunningMaxima& maxima) {
    Eigen::Map<const VecK> etav(head, k);
    Eigen::Map<const MatK> Gv(head + k, k, k);
    double lam = 0.0;
    b_star.setZero();
    using SlowClass = Partition::SlowClass;
    for (const auto& s : part.slow_info) {
      switch (s.cls) {
        case SlowClass::Order0:
          lam += s.c_star;
          break;
        case SlowClass::Order1:
        case SlowClass::Order2OneFast:
          lam += std::max(0.0, s.c_star * etav[s.k1]);
          b_star[s.k1] += s.c_star;
          break;
        case SlowClass::Order2TwoFast:
          if (s.dimer) {
            const double e = etav[s.k1];
            lam += std::max(0.0, 0.5 * s.c_star * e * (e - 1.0));
            b_star[s.k1] += s.c_star * (e - 0.5);
          } else {
            lam += std::max(0.0, s.c_star * etav[s.k1] * etav[s.k2]);
            b_star[s.k1] += s.c_star * etav[s.k2];
            b_star[s.k2] += s.c_star * etav[s.k1];
          }
          break;
      }
    }
    if (lam > maxima.lambda_s_max) maxima.lambda_s_max = lam;
    b_vec.noalias() = Gv.transpose() * b_star;
    for (int i = 0; i < k; ++i) {
      const double a = std::abs(b_vec[i]);
      if (a > maxima.b_max[i]) maxima.b_max[i] = a;
    }
  }
};

// Dormand-Prince 5(4) coefficients.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

inline double wrms(const Vec& err, const Vec& y0, const Vec& y1, double atol,
                   double rtol) {
  double acc = 0.0;
  const long n = err.size();
  for (long i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

[[noreturn]] void throw_stiffness(const char* where, double t, double h) {
  std::ostringstream os;
  os << "lna integrator: step-size underflow (" << where << ") at t=" << t
     << ", h=" << h;
  throw NumericalError(os.str());
}

// Linearly implicit Euler with step doubling / Richardson extrapolation.
// Engaged when the explicit pair's step collapses; L-stable. Rare path: works
// on dynamic vectors internally whatever the caller uses.
template <class VecN, class Rhs, class Observer>
void rosenbrock_euler(Rhs&& rhs, VecN& y_io, double& t, double tb,
                      const OdeConfig& cfg, Observer&& observe, long& steps) {
  const long n = y_io.size();
  VecN y = y_io;
  VecN f0(n), f1(n), fe(n), yh(n), yfull(n), y2(n), yext(n), err(n);
  Mat J(n, n), A(n, n);
  VecN ypert(n), fpert(n);
  Vec rhs_ws(n);
  double h = tb - t;
  while (t < tb * (1.0 - 1e-14) && tb - t > 1e-15 * std::max(1.0, tb)) {
    h = std::min(h, tb - t);
    if (h < 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw_stiffness("implicit fallback", t, h);
    rhs(t, y, f0);
    // finite-difference Jacobian
    for (long j = 0; j < n; ++j) {
      ypert = y;
      const double dj = std::sqrt(std::numeric_limits<double>::epsilon()) *
                        std::max(std::abs(y[j]), 1.0);
      ypert[j] += dj;
      rhs(t, ypert, fpert);
      J.col(j) = (fpert - f0) / dj;
    }
    A = Mat::Identity(n, n) - h * J;
    Eigen::PartialPivLU<Mat> lu_full(A);
    yfull = y + VecN(lu_full.solve((h * f0).eval()));

    A = Mat::Identity(n, n) - 0.5 * h * J;
    Eigen::PartialPivLU<Mat> lu_half(A);
    yh = y + VecN(lu_half.solve((0.5 * h * f0).eval()));
    rhs(t + 0.5 * h, yh, f1);
    y2 = yh + VecN(lu_half.solve((0.5 * h * f1).eval()));

    err = y2 - yfull;
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      const double sc = cfg.abs_tol +
                        cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y2[i]));
      acc += (err[i] / sc) * (err[i] / sc);
    }
    const double e = std::sqrt(acc / static_cast<double>(n));
    if (e <= 1.0) {
      yext = 2.0 * y2 - yfull;
      rhs(t + h, yext, fe);
      observe(t, y, f0, t + h, yext, fe, h);
      y = yext;
      t += h;
      ++steps;
      h *= std::clamp(0.9 / std::sqrt(std::max(e, 1e-10)), 1.0, 4.0);
    } else {
      h *= std::clamp(0.9 / std::sqrt(e), 0.1, 0.9);
    }
  }
  y_io = y;
}

// Observer contract: observe(t0, y0, f0, t1, y1&, f1, h) may repair y1
// (G-inverse refactorization); returns true if it did.
template <class VecN, class Rhs, class Observer>
void dopri5(Rhs&& rhs, VecN& y, double ta, double tb, const OdeConfig& cfg,
            double& h_carry, Observer&& observe, long& steps, bool& used_fallback) {
  VecN ynew(y.size()), yerr(y.size()), ytmp(y.size());
  VecN k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()),
      k6(y.size()), k7(y.size());

  const double span = tb - ta;
  const double max_h = cfg.max_step > 0.0 ? std::min(cfg.max_step, span) : span;
  const double stiff_h = max_h * 1e-6;
  double t = ta;
  double h = (h_carry > 0.0 ? std::min(h_carry, max_h) : max_h);
  double facold = 1e-4;
  bool rejected = false;

  auto wrms_n = [&](const VecN& err, const VecN& y0, const VecN& y1) {
    double acc = 0.0;
    const long n = err.size();
    for (long i = 0; i < n; ++i) {
      const double sc = cfg.abs_tol +
                        cfg.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double q = err[i] / sc;
      acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n));
  };

  if (cfg.force_implicit) {
    used_fallback = true;
    rosenbrock_euler(rhs, y, t, tb, cfg, observe, steps);
    h_carry = max_h;
    return;
  }

  rhs(t, y, k1);
  while (t < tb && tb - t > 1e-14 * std::max(1.0, tb)) {
    if (h < stiff_h) {  // controller collapse, not end-of-interval clamping
      used_fallback = true;
      rosenbrock_euler(rhs, y, t, tb, cfg, observe, steps);
      h_carry = max_h;
      return;
    }
    const double hs = std::min(h, tb - t);

    ytmp = y + hs * (A21 * k1);
    rhs(t + 0.2 * hs, ytmp, k2);
    ytmp = y + hs * (A31 * k1 + A32 * k2);
    rhs(t + 0.3 * hs, ytmp, k3);
    ytmp = y + hs * (A41 * k1 + A42 * k2 + A43 * k3);
    rhs(t + 0.8 * hs, ytmp, k4);
    ytmp = y + hs * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4);
    rhs(t + (8.0 / 9.0) * hs, ytmp, k5);
    ytmp = y + hs * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5);
    rhs(t + hs, ytmp, k6);
    ynew = y + hs * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    rhs(t + hs, ynew, k7);  // FSAL
    yerr = hs * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);

    const double err = wrms_n(yerr, y, ynew);
    if (err <= 1.0) {
      const bool repaired = observe(t, y, k1, t + hs, ynew, k7, hs);
      t += hs;
      y.swap(ynew);
      if (repaired)
        rhs(t, y, k1);
      else
        k1.swap(k7);
      ++steps;
      const double fac11 = std::pow(std::max(err, 1e-12), 0.17);
      double fac = fac11 / std::pow(facold, 0.04);
      fac = std::max(0.1, std::min(fac / 0.9, 5.0));
      double hnew = hs / fac;
      if (rejected) hnew = std::min(hnew, hs);
      h = std::min(hnew, max_h);
      facold = std::max(err, 1e-4);
      rejected = false;
    } else {
      const double fac11 = std::pow(err, 0.17);
      h = hs / std::min(fac11 / 0.9, 10.0);
      rejected = true;
      if (h < 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, t))
        throw_stiffness("explicit pair", t, h);
    }
  }
  h_carry = std::min(h, max_h);
}

template <int K>
void integrate_lna_impl(const ReactionNetwork& net, const Partition& part,
                        const Vec& c, const Vec& x_curr, double dt,
                        const OdeConfig& cfg, LnaContext& cx, LnaResult& res,
                        LnaDense* dense) {
  const int k = net.num_species();
  LnaMachine<K> mach(net, part, c, k);
  using Packed = typename LnaMachine<K>::Packed;

  Packed y(mach.n);
  y.setZero();
  mach.eta_m(y.data()) = x_curr;
  mach.G_m(y.data()).setIdentity();
  mach.Ginv_m(y.data()).setIdentity();

  res.steps = 0;
  res.stiff_fallback = false;
  res.ginv_refactorizations = 0;
  res.det_warnings = 0;
  res.maxima.lambda_s_max = 0.0;
  if (res.maxima.b_max.size() != k)
    res.maxima.b_max.setZero(k);
  else
    res.maxima.b_max.setZero();
  mach.update_maxima(y.data(), res.maxima);

  auto record_dense = [&](double t, const Packed& yv) {
    if (!dense) return;
    LnaState s;
    s.t = t;
    s.eta = mach.eta(yv.data());
    s.G = mach.G(yv.data());
    s.Ginv = mach.Ginv(yv.data());
    s.Psi = mach.Psi(yv.data());
    s.tau = mach.tau(yv.data());
    dense->states.push_back(std::move(s));
  };
  record_dense(0.0, y);

  // interior grid times for maxima evaluation: cubic Hermite on the head
  // (eta and G are all the maxima need)
  const int ng = std::max(0, cfg.dense_grid);
  int next_g = 1;
  const int head = k + k * k;
  double head_buf[LnaMachine<K>::kDynamic ? 1 : K + K * K];
  if (LnaMachine<K>::kDynamic) cx.ytmp2.resize(head);
  double* const interp = LnaMachine<K>::kDynamic ? cx.ytmp2.data() : head_buf;

  cx.history_len = 0;

  auto rhs_fn = [&mach](double t, const auto& yv, auto& dyv) {
    mach.rhs(t, yv, dyv);
  };

  auto observer = [&](double t0, const Packed& y0, const Packed& f0, double t1,
                      Packed& y1, const Packed& f1, double h) -> bool {
    while (next_g <= ng) {
      const double tg = dt * next_g / (ng + 1);
      if (tg >= t1) break;
      if (tg > t0) {
        const double theta = (tg - t0) / h;
        const double t2 = theta * theta, t3 = t2 * theta;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = (t3 - 2 * t2 + theta) * h;
        const double h01 = -2 * t3 + 3 * t2, h11 = (t3 - t2) * h;
        const double* p0 = y0.data();
        const double* p1 = y1.data();
        const double* d0 = f0.data();
        const double* d1 = f1.data();
        for (int i = 0; i < head; ++i)
          interp[i] = h00 * p0[i] + h10 * d0[i] + h01 * p1[i] + h11 * d1[i];
        mach.update_maxima(interp, res.maxima);
      }
      ++next_g;
    }
    mach.update_maxima(y1.data(), res.maxima);
    record_dense(t1, y1);

    if (mach.G(y1.data()).determinant() <= 0.0) ++res.det_warnings;

    // G-inverse drift monitor; re-factorize on excursion past 1e-6
    bool repaired = false;
    if ((mach.G(y1.data()) * mach.Ginv(y1.data()) -
         LnaMachine<K>::MatK::Identity(k, k))
            .cwiseAbs()
            .maxCoeff() > 1e-6) {
      mach.Ginv_m(y1.data()) = mach.G(y1.data()).inverse().eval();
      ++res.ginv_refactorizations;
      repaired = true;
      if (dense) dense->states.back().Ginv = mach.Ginv(y1.data());
    }

    if (cx.keep_history) {
      if (cx.history.size() <= cx.history_len) cx.history.emplace_back();
      auto& rec = cx.history[cx.history_len++];
      rec.t0 = t0;
      rec.h = h;
      rec.y0 = y0;
      rec.f0 = f0;
      rec.y1 = y1;
      rec.f1 = f1;
    }
    return repaired;
  };

  dopri5(rhs_fn, y, 0.0, dt, cfg, cx.h_carry, observer, res.steps,
         res.stiff_fallback);

  res.state.t = dt;
  res.state.eta = mach.eta(y.data());
  res.state.G = mach.G(y.data());
  res.state.Ginv = mach.Ginv(y.data());
  res.state.Psi = mach.Psi(y.data());
  res.state.tau = mach.tau(y.data());
}

}  // namespace

void drift_and_jacobian(const ReactionNetwork& net, const Partition& part, const Vec& c,
                        const Vec& eta, Vec& alpha, Mat& F) {
  const int k = net.num_species();
  alpha.resize(k);
  F.resize(k, k);
  accumulate_fast(net, part, c, eta, &alpha, &F, nullptr);
}

Mat diffusion_matrix(const ReactionNetwork& net, const Partition& part, const Vec& c,
                     const Vec& eta) {
  const int k = net.num_species();
  Mat D(k, k);
  accumulate_fast(net, part, c, eta, nullptr, nullptr, &D);
  return psd_sqrt(D);
}

void integrate_lna_into(const ReactionNetwork& net, const Partition& part,
                        const Vec& c, const Vec& x_curr, double dt,
                        const OdeConfig& cfg, LnaContext& ctx, LnaResult& res,
                        LnaDense* dense) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_lna: dt must be > 0");
  if (!(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0))
    throw std::invalid_argument("integrate_lna: tolerances must be > 0");
  switch (net.num_species()) {
    case 1:
      integrate_lna_impl<1>(net, part, c, x_curr, dt, cfg, ctx, res, dense);
      break;
    case 2:
      integrate_lna_impl<2>(net, part, c, x_curr, dt, cfg, ctx, res, dense);
      break;
    case 3:
      integrate_lna_impl<3>(net, part, c, x_curr, dt, cfg, ctx, res, dense);
      break;
    case 4:
      integrate_lna_impl<4>(net, part, c, x_curr, dt, cfg, ctx, res, dense);
      break;
    default:
      integrate_lna_impl<Eigen::Dynamic>(net, part, c, x_curr, dt, cfg, ctx, res,
                                         dense);
  }
}

LnaResult integrate_lna(const ReactionNetwork& net, const Partition& part, const Vec& c,
                        const Vec& x_curr, double dt, const OdeConfig& cfg,
                        LnaContext* ctx, LnaDense* dense) {
  LnaContext local;
  LnaResult res;
  integrate_lna_into(net, part, c, x_curr, dt, cfg, ctx ? *ctx : local, res, dense);
  return res;
}

void lna_state_at(const LnaContext& ctx, int k, double t, LnaState& out) {
  if (ctx.history_len == 0)
    throw std::logic_error("lna_state_at: no step history recorded");
  const LnaContext::StepRec* rec = &ctx.history[ctx.history_len - 1];
  for (size_t i = 0; i < ctx.history_len; ++i) {
    if (t <= ctx.history[i].t0 + ctx.history[i].h + 1e-14) {
      rec = &ctx.history[i];
      break;
    }
  }
  const double theta = std::clamp((t - rec->t0) / rec->h, 0.0, 1.0);
  const double t2 = theta * theta, t3 = t2 * theta;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = (t3 - 2 * t2 + theta) * rec->h;
  const double h01 = -2 * t3 + 3 * t2, h11 = (t3 - t2) * rec->h;
  const long n = rec->y0.size();
  out.t = t;
  out.eta.resize(k);
  out.G.resize(k, k);
  out.Ginv.resize(k, k);
  out.Psi.resize(k, k);
  out.tau.resize(k);
  auto blend = [&](double* dst, long offset, long count) {
    const double* p0 = rec->y0.data() + offset;
    const double* d0 = rec->f0.data() + offset;
    const double* p1 = rec->y1.data() + offset;
    const double* d1 = rec->f1.data() + offset;
    for (long i = 0; i < count; ++i)
      dst[i] = h00 * p0[i] + h10 * d0[i] + h01 * p1[i] + h11 * d1[i];
  };
  blend(out.eta.data(), 0, k);
  blend(out.G.data(), k, k * k);
  blend(out.Ginv.data(), k + k * k, k * k);
  blend(out.Psi.data(), k + 2 * k * k, k * k);
  blend(out.tau.data(), k + 3 * k * k, k);
  (void)n;
}

std::pair<Vec, Mat> gaussian_at(const LnaState& s) {
  Mat cov = s.G * s.Psi * s.G.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {s.eta, cov};
}

}  // namespace skm
