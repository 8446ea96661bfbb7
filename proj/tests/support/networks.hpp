// Small networks and partition configs shared across suites.
#pragma once

#include "skm/partition.hpp"
#include "skm/reaction_network.hpp"

namespace test_nets {

/// Immigration-death on one species plus (optionally) a pure readout species:
/// R1: 0 -> A (c1), R2: A -> 0 (c3), and with readout, R3: A -> A + B (cs).
inline skm::ReactionNetwork imm_death(double c1, double c3) {
  skm::IMat u(2, 1), v(2, 1);
  u << 0, 1;
  v << 1, 0;
  skm::Vec c(2);
  c << c1, c3;
  return skm::ReactionNetwork::create({"A"}, u, v, c);
}

inline skm::ReactionNetwork imm_death_readout(double c1, double c3, double cs) {
  skm::IMat u(3, 2), v(3, 2);
  u << 0, 0, 1, 0, 1, 0;
  v << 1, 0, 0, 0, 1, 1;
  skm::Vec c(3);
  c << c1, c3, cs;
  return skm::ReactionNetwork::create({"A", "B"}, u, v, c);
}

inline skm::ReactionNetwork immigration_only(double c1) {
  skm::IMat u(1, 1), v(1, 1);
  u << 0;
  v << 1;
  skm::Vec c(1);
  c << c1;
  return skm::ReactionNetwork::create({"A"}, u, v, c);
}

/// Classification configs that force a verdict regardless of state.
inline skm::ClassifyConfig force_fast() {
  // thresholds so loose that any reaction on a positive state passes
  return {1e-300, 0.999, 0.999, 1e-300};
}

inline skm::ClassifyConfig force_slow() { return {1e300, 0.999, 0.999, 0.1}; }

}  // namespace test_nets
