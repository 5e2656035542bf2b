#pragma once

#include <optional>
#include <string>

#include "bufferlane/journey.hpp"
#include "bufferlane/scenario.hpp"

namespace bufferlane {

inline constexpr const char* kVersion = "0.1.0";

/// JSON record of a run: the effective scenario (after command-line
/// overrides) in canonical text form, the derived discretization and the
/// outcome.
std::string manifest_json(const ScenarioDoc& doc, const std::string& scenario_path, const SimLog& log,
                          const CarLog* car, std::optional<double> oracle_error);

}  // namespace bufferlane
