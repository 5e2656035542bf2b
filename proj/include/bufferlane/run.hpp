#pragma once

#include <optional>

#include "bufferlane/journey.hpp"
#include "bufferlane/oracle.hpp"
#include "bufferlane/scenario.hpp"

namespace bufferlane {

struct RunResult {
  SimLog log;
  std::optional<CarLog> car;
  std::optional<double> oracle_error;  // when the scenario names an oracle
};

std::optional<ExactTrajectory> oracle_for(OracleKind kind);

/// Simulates the scenario, then tracks its car (if any) and scores the
/// trajectory against the named oracle.
RunResult run_scenario(const ScenarioDoc& doc);

/// Tracks the scenario's car against an existing log of the same network.
CarLog track_scenario_car(const ScenarioDoc& doc, const SimLog& log);

}  // namespace bufferlane
