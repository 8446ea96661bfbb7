#pragma once

#include "skm/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace skm {

// Mass-action reaction network. u and v are the r x k reactant and product
// stoichiometries, A = v - u the net effect. Reaction order is capped at 2;
// the slow-hazard linearization of the hybrids assumes it. Immutable after
// construction; rate constants are stored but overridable per call so that
// inference can re-evaluate hazards with proposed c without rebuilding.
class ReactionNetwork {
 public:
  // Compact hazard form of one reaction, derived from its u row.
  enum class Order : std::uint8_t { Zeroth, First, SecondDistinct, Dimer };
  struct Hazard {
    Order order = Order::Zeroth;
    int s1 = -1;  // first reactant species
    int s2 = -1;  // second reactant species (SecondDistinct only)
  };
  struct Change {
    int species;
    int delta;
  };

  static ReactionNetwork create(std::vector<std::string> species_names,
                                IMat reactant_stoich, IMat product_stoich,
                                Vec rate_constants);

  int num_species() const { return static_cast<int>(species_names_.size()); }
  int num_reactions() const { return static_cast<int>(u_.rows()); }
  int order(int reaction) const;

  const std::vector<std::string>& species_names() const { return species_names_; }
  const IMat& reactant_stoich() const { return u_; }
  const IMat& product_stoich() const { return v_; }
  const IMat& net_effect() const { return a_; }
  const Vec& rate_constants() const { return c_; }
  const Hazard& hazard_form(int reaction) const { return hazards_[reaction]; }
  const std::vector<Change>& changes(int reaction) const { return changes_[reaction]; }

 private:
  std::vector<std::string> species_names_;
  IMat u_, v_, a_;
  Vec c_;
  std::vector<Hazard> hazards_;
  std::vector<std::vector<Change>> changes_;
};

struct SystemState {
  double t = 0.0;
  Vec x;
};

struct Trajectory {
  struct Meta {
    std::string simulator;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
    std::string config_hash;
    bool truncated = false;
    long events = 0;
    long reclassifications = 0;
    long bound_violations = 0;
    long candidates = 0;
    long rewinds = 0;
    long floor_fallbacks = 0;
    long negativity_clamps = 0;
    long ginv_refactorizations = 0;
    long g_det_warnings = 0;
    bool stiff_fallback = false;
  };
  std::vector<SystemState> states;  // times strictly increasing, first at t=0
  Meta meta;
};

// Mass-action hazard h_i = c_i prod_j C(x_j, u_ij), extended to real x:
// order 0 -> c; order 1 -> c x; order 2 distinct -> c x y;
// dimerization -> c x(x-1)/2 clamped at 0 for x < 1.
double hazard(const ReactionNetwork& net, const Vec& x, int reaction);
double hazard(const ReactionNetwork& net, const Vec& x, int reaction, const Vec& c);
double total_hazard(const ReactionNetwork& net, const Vec& x);
double total_hazard(const ReactionNetwork& net, const Vec& x, const Vec& c);

/// All hazards at once, each clamped at 0 (for continuous states that may
/// excurse slightly negative inside the LNA/CLE).
void hazards_clamped(const ReactionNetwork& net, const Vec& x, const Vec& c, Vec& out);

/// Apply the net effect of a reaction. Components driven below zero by
/// floating-point interaction with continuous species are clamped to 0 and
/// counted through clamp_count when provided.
SystemState apply_reaction(const SystemState& state, const ReactionNetwork& net,
                           int reaction, long* clamp_count = nullptr);
void apply_reaction_inplace(Vec& x, const ReactionNetwork& net, int reaction,
                            long* clamp_count = nullptr);

/// The Section-5 autoregulatory network with c = (2, sc, 1/50, 1, 1/(50 sc)).
ReactionNetwork autoreg_network(double sc = 1.0);

/// MRE fixed point of the autoregulatory network:
/// [50(1+sc-sqrt(1+sc^2)), 1+sqrt(1+sc^2)]. Rejects sc <= 0.
Vec equilibrium_mre(double sc);

}  // namespace skm
