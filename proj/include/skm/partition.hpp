#pragma once

#include "skm/reaction_network.hpp"

#include <cstdint>
#include <vector>

namespace skm {

// Dynamic repartitioning knobs. A reaction j is fast iff for every species i
// it changes:   |a_ji| N* <= eps* x_i   and   |a_ji| max(1, h_j dt_hybrid) <= eps_h x_i.
struct ClassifyConfig {
  double n_star = 15.0;
  double eps_star = 0.25;
  double eps_hybrid = 0.25;
  double dt_hybrid = 0.1;
};

// Fast/slow labels plus, per slow reaction, the frozen-slow-species hazard
// form h_j = c*_j f_j(x_fast): c* absorbs the true rate constant and the
// counts of any slow reactants, which stay fixed between slow events.
struct Partition {
  enum class SlowClass : std::uint8_t { Order0, Order1, Order2OneFast, Order2TwoFast };
  struct SlowInfo {
    int reaction = -1;
    SlowClass cls = SlowClass::Order0;
    double c_star = 0.0;
    int k1 = -1;  // first fast reactant species
    int k2 = -1;  // second fast reactant species (k1 == k2 for a fast dimer)
    bool dimer = false;
  };

  std::vector<int> fast_reactions;
  std::vector<int> slow_reactions;
  std::vector<char> is_fast_reaction;  // size r
  std::vector<char> is_fast_species;   // size k: changed by at least one fast reaction
  std::vector<SlowInfo> slow_info;

  bool any_fast() const { return !fast_reactions.empty(); }
  bool any_slow() const { return !slow_reactions.empty(); }
};

Partition classify_reactions(const ReactionNetwork& net, const Vec& c, const Vec& x,
                             const ClassifyConfig& cfg);

/// Storage-reusing variant for per-interval reclassification loops.
void classify_reactions_into(Partition& part, const ReactionNetwork& net, const Vec& c,
                             const Vec& x, const ClassifyConfig& cfg);

/// Total slow intensity at eta and its linear coefficients in the LNA
/// deviation: lambda^s(eta + M) ~= lambda^s(eta) + sum_i b*_i M_i, with
/// M_i M_j terms dropped. Exact when no slow reaction is second order in two
/// fast species.
void slow_linearization(const Partition& part, const Vec& eta, double& lambda_s,
                        Vec& b_star);

struct SlowLinearization {
  double lambda_s;
  Vec b_star;
};
SlowLinearization slow_hazard_linearization(const ReactionNetwork& net,
                                            const Partition& part, const Vec& c,
                                            const Vec& eta);

}  // namespace skm
