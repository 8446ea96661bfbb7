#pragma once

#include "skm/observation.hpp"
#include "skm/reaction_network.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace skm {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct ParsedModel {
  ReactionNetwork network;
  Vec x0;
  ObservationModel obs;
  std::vector<std::string> rate_names;  // parameter name per reaction, unique
};

// Line-oriented model format:
//   species: X1 X2
//   reactions:
//     -> X1 @ c1
//     X1 + X2 -> 2 X2 @ c5
//   params:
//     c1 = 2
//     c5 = 1/(50*sc)
//   init = (0, 0)
//   obs: poisson-bern 0.1
// Param values are arithmetic expressions over literals and bound symbols
// (`sc` from the CLI). Reactions above order 2 are rejected.
ParsedModel parse_model(const std::string& text,
                        const std::map<std::string, double>& symbols = {});

ParsedModel parse_model_file(const std::string& path,
                             const std::map<std::string, double>& symbols = {});

/// Canonical text with resolved numeric parameters; parse(serialize(m)) == m.
std::string serialize_model(const ParsedModel& model);

}  // namespace skm
