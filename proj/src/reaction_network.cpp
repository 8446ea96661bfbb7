#include "skm/reaction_network.hpp"

#include <cmath>
#include <stdexcept>

namespace skm {

ReactionNetwork ReactionNetwork::create(std::vector<std::string> species_names,
                                        IMat reactant_stoich, IMat product_stoich,
                                        Vec rate_constants) {
  const int k = static_cast<int>(species_names.size());
  const int r = static_cast<int>(reactant_stoich.rows());
  if (k < 1) throw std::invalid_argument("network: need at least one species");
  if (r < 1) throw std::invalid_argument("network: need at least one reaction");
  if (reactant_stoich.cols() != k || product_stoich.rows() != r ||
      product_stoich.cols() != k)
    throw std::invalid_argument("network: stoichiometry dimensions disagree");
  if (rate_constants.size() != r)
    throw std::invalid_argument("network: need one rate constant per reaction");
  if (reactant_stoich.minCoeff() < 0 || product_stoich.minCoeff() < 0)
    throw std::invalid_argument("network: stoichiometries must be nonnegative");
  for (int i = 0; i < r; ++i)
    if (!(rate_constants[i] > 0.0))
      throw std::invalid_argument("network: rate constants must be positive");

  ReactionNetwork net;
  net.species_names_ = std::move(species_names);
  net.u_ = std::move(reactant_stoich);
  net.v_ = std::move(product_stoich);
  net.a_ = net.v_ - net.u_;
  net.c_ = std::move(rate_constants);

  net.hazards_.resize(r);
  net.changes_.resize(r);
  for (int i = 0; i < r; ++i) {
    int order = 0;
    Hazard h;
    for (int j = 0; j < net.u_.cols(); ++j) {
      const int uij = net.u_(i, j);
      if (uij == 0) continue;
      order += uij;
      if (order > 2)
        throw std::invalid_argument("network: reaction order above 2 not supported");
      if (uij == 2) {
        h = {Order::Dimer, j, j};
      } else if (h.s1 < 0) {
        h.order = Order::First;
        h.s1 = j;
      } else {
        h.order = Order::SecondDistinct;
        h.s2 = j;
      }
    }
    if (order == 0) h = {Order::Zeroth, -1, -1};
    net.hazards_[i] = h;
    for (int j = 0; j < net.a_.cols(); ++j)
      if (net.a_(i, j) != 0) net.changes_[i].push_back({j, net.a_(i, j)});
  }
  return net;
}

int ReactionNetwork::order(int reaction) const {
  return u_.row(reaction).sum();
}

namespace {

inline double hazard_value(const ReactionNetwork::Hazard& h, double c, const Vec& x) {
  using Order = ReactionNetwork::Order;
  switch (h.order) {
    case Order::Zeroth:
      return c;
    case Order::First:
      return c * x[h.s1];
    case Order::SecondDistinct:
      return c * x[h.s1] * x[h.s2];
    case Order::Dimer: {
      const double xi = x[h.s1];
      return xi < 1.0 ? 0.0 : 0.5 * c * xi * (xi - 1.0);
    }
  }
  return 0.0;
}

}  // namespace

double hazard(const ReactionNetwork& net, const Vec& x, int reaction) {
  return hazard_value(net.hazard_form(reaction), net.rate_constants()[reaction], x);
}

double hazard(const ReactionNetwork& net, const Vec& x, int reaction, const Vec& c) {
  return hazard_value(net.hazard_form(reaction), c[reaction], x);
}

double total_hazard(const ReactionNetwork& net, const Vec& x) {
  return total_hazard(net, x, net.rate_constants());
}

double total_hazard(const ReactionNetwork& net, const Vec& x, const Vec& c) {
  double sum = 0.0;
  for (int i = 0; i < net.num_reactions(); ++i)
    sum += hazard_value(net.hazard_form(i), c[i], x);
  return sum;
}

void hazards_clamped(const ReactionNetwork& net, const Vec& x, const Vec& c, Vec& out) {
  out.resize(net.num_reactions());
  for (int i = 0; i < net.num_reactions(); ++i)
    out[i] = std::max(0.0, hazard_value(net.hazard_form(i), c[i], x));
}

void apply_reaction_inplace(Vec& x, const ReactionNetwork& net, int reaction,
                            long* clamp_count) {
  for (const auto& ch : net.changes(reaction)) {
    x[ch.species] += ch.delta;
    if (x[ch.species] < 0.0) {
      x[ch.species] = 0.0;
      if (clamp_count) ++*clamp_count;
    }
  }
}

SystemState apply_reaction(const SystemState& state, const ReactionNetwork& net,
                           int reaction, long* clamp_count) {
  SystemState out = state;
  apply_reaction_inplace(out.x, net, reaction, clamp_count);
  return out;
}

ReactionNetwork autoreg_network(double sc) {
  if (!(sc > 0.0)) throw std::invalid_argument("autoreg_network: sc must be > 0");
  // R1: 0 -> X1   R2: 0 -> X2   R3: X1 -> 0   R4: X2 -> 0   R5: X1+X2 -> 2X2
  IMat u(5, 2), v(5, 2);
  u << 0, 0, 0, 0, 1, 0, 0, 1, 1, 1;
  v << 1, 0, 0, 1, 0, 0, 0, 0, 0, 2;
  Vec c(5);
  c << 2.0, sc, 1.0 / 50.0, 1.0, 1.0 / (50.0 * sc);
  return ReactionNetwork::create({"X1", "X2"}, u, v, c);
}

Vec equilibrium_mre(double sc) {
  if (!(sc > 0.0)) throw std::invalid_argument("equilibrium_mre: sc must be > 0");
  const double root = std::sqrt(1.0 + sc * sc);
  Vec eq(2);
  eq << 50.0 * (1.0 + sc - root), 1.0 + root;
  return eq;
}

}  // namespace skm
