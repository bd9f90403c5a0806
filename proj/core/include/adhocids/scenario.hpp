#pragma once

#include <stdexcept>
#include <string>

#include "adhocids/simulator.hpp"

namespace adhocids {

struct ScenarioError : std::runtime_error {
  enum class Kind { Parse, Validation };

  ScenarioError(Kind kind, int line, const std::string& message)
      : std::runtime_error(message), kind(kind), line(line) {}

  Kind kind;
  int line;  // 0 when the error is not tied to a line
};

// Line-oriented key-value scenario text; see README for the key set. Unknown
// keys are parse errors; violated invariants become validation errors naming
// the invariant.
ScenarioConfig parse_scenario(const std::string& text);

// Emits the fully resolved configuration, defaults included, in a fixed key
// order. parse_scenario(serialize_scenario(cfg)) == cfg.
std::string serialize_scenario(const ScenarioConfig& cfg);

}  // namespace adhocids
