#include "skm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skm {

Partition classify_reactions(const ReactionNetwork& net, const Vec& c, const Vec& x,
                             const ClassifyConfig& cfg) {
  Partition part;
  classify_reactions_into(part, net, c, x, cfg);
  return part;
}

void classify_reactions_into(Partition& part, const ReactionNetwork& net, const Vec& c,
                             const Vec& x, const ClassifyConfig& cfg) {
  const int r = net.num_reactions();
  const int k = net.num_species();
  part.fast_reactions.clear();
  part.slow_reactions.clear();
  part.slow_info.clear();
  part.is_fast_reaction.assign(r, 0);
  part.is_fast_species.assign(k, 0);

  for (int j = 0; j < r; ++j) {
    const double hj = hazard(net, x, j, c);
    const double occupancy = std::max(1.0, hj * cfg.dt_hybrid);
    bool fast = true;
    for (const auto& ch : net.changes(j)) {
      const double aji = std::abs(ch.delta);
      const double xi = x[ch.species];
      if (aji * cfg.n_star > cfg.eps_star * xi ||
          aji * occupancy > cfg.eps_hybrid * xi) {
        fast = false;
        break;
      }
    }
    part.is_fast_reaction[j] = fast ? 1 : 0;
    if (fast) {
      part.fast_reactions.push_back(j);
      for (const auto& ch : net.changes(j)) part.is_fast_species[ch.species] = 1;
    } else {
      part.slow_reactions.push_back(j);
    }
  }

  // Subclassify slow reactions: reactant factors over fast species stay in the
  // hazard; factors over slow species are absorbed into c* (they are constant
  // until the next slow event / reclassification).
  part.slow_info.reserve(part.slow_reactions.size());
  using Order = ReactionNetwork::Order;
  using SlowClass = Partition::SlowClass;
  for (int j : part.slow_reactions) {
    const auto& h = net.hazard_form(j);
    Partition::SlowInfo info;
    info.reaction = j;
    info.c_star = c[j];
    switch (h.order) {
      case Order::Zeroth:
        info.cls = SlowClass::Order0;
        break;
      case Order::First:
        if (part.is_fast_species[h.s1]) {
          info.cls = SlowClass::Order1;
          info.k1 = h.s1;
        } else {
          info.cls = SlowClass::Order0;
          info.c_star *= x[h.s1];
        }
        break;
      case Order::SecondDistinct: {
        const bool f1 = part.is_fast_species[h.s1];
        const bool f2 = part.is_fast_species[h.s2];
        if (f1 && f2) {
          info.cls = SlowClass::Order2TwoFast;
          info.k1 = h.s1;
          info.k2 = h.s2;
        } else if (f1 || f2) {
          info.cls = SlowClass::Order2OneFast;
          info.k1 = f1 ? h.s1 : h.s2;
          info.c_star *= x[f1 ? h.s2 : h.s1];
        } else {
          info.cls = SlowClass::Order0;
          info.c_star *= x[h.s1] * x[h.s2];
        }
        break;
      }
      case Order::Dimer: {
        const double xi = x[h.s1];
        if (part.is_fast_species[h.s1]) {
          info.cls = SlowClass::Order2TwoFast;
          info.k1 = info.k2 = h.s1;
          info.dimer = true;
        } else {
          info.cls = SlowClass::Order0;
          info.c_star *= xi < 1.0 ? 0.0 : 0.5 * xi * (xi - 1.0);
        }
        break;
      }
    }
    part.slow_info.push_back(info);
  }
}

void slow_linearization(const Partition& part, const Vec& eta, double& lambda_s,
                        Vec& b_star) {
  using SlowClass = Partition::SlowClass;
  lambda_s = 0.0;
  b_star.setZero(eta.size());
  for (const auto& s : part.slow_info) {
    switch (s.cls) {
      case SlowClass::Order0:
        lambda_s += s.c_star;
        break;
      case SlowClass::Order1:
      case SlowClass::Order2OneFast:
        lambda_s += std::max(0.0, s.c_star * eta[s.k1]);
        b_star[s.k1] += s.c_star;
        break;
      case SlowClass::Order2TwoFast:
        if (s.dimer) {
          const double e = eta[s.k1];
          lambda_s += std::max(0.0, 0.5 * s.c_star * e * (e - 1.0));
          b_star[s.k1] += s.c_star * (e - 0.5);
        } else {
          lambda_s += std::max(0.0, s.c_star * eta[s.k1] * eta[s.k2]);
          b_star[s.k1] += s.c_star * eta[s.k2];
          b_star[s.k2] += s.c_star * eta[s.k1];
        }
        break;
    }
  }
}

SlowLinearization slow_hazard_linearization(const ReactionNetwork& net,
                                            const Partition& part, const Vec& c,
                                            const Vec& eta) {
  (void)net;
  (void)c;  // coefficients were frozen into the partition's c* values
  SlowLinearization out;
  slow_linearization(part, eta, out.lambda_s, out.b_star);
  return out;
}

}  // namespace skm
