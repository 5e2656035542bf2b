#pragma once

#include <cstdint>
#include <random>

#include "bufferlane/scenario.hpp"

namespace bufferlane {

struct RandomScenarioOptions {
  std::size_t max_nodes = 8;
  double h = 0.1;
  double horizon_min = 2.0;
  double horizon_max = 6.0;
};

/// Random valid scenario built from a chain of stages: one-to-one links,
/// diamonds (split then merge), merges with a second source, and a final sink
/// or fork onto two sinks. Capacities, rates, densities and loads are drawn
/// at random; no [car] section.
ScenarioDoc random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& options = {});

}  // namespace bufferlane
