#pragma once

#include "bufferlane/scenario.hpp"

namespace bufferlane::builtin {

/// Three unit roads, densities 0.3 / 0.5 / 0.7, buffers 0.1 and 0 with
/// capacity 0.3, inflow 0.21, T = 8; car from the start of road 1.
ScenarioDoc linear_network(double h = 0.1);

/// Rarefaction 0.4 | 0.2 at x = 0.5 with inflow 0.24. Setting 1 is one road
/// of length 2, setting 2 two unit roads joined by an unbounded one-to-one
/// junction.
ScenarioDoc single_road(int setting, double h = 0.1);

/// Seven-node network with two equally long paths and a half-full buffer at
/// the second dispersing junction; car at x = 0.5 on road 1 bound for node 6.
ScenarioDoc small_network(double departure = 0.0, PolicyKind policy = PolicyKind::Fastest, double h = 0.01);

/// Symmetric grid of blocks with one source and two sinks.
ScenarioDoc block_network(PolicyKind policy = PolicyKind::Shortest, double h = 0.01);

/// Merge with priorities 1/2, mu = 0.2 and densities 0.4, 0.1 | 0.5 at an
/// empty buffer.
ScenarioDoc merge_example(DemandMode mode = DemandMode::Original);

}  // namespace bufferlane::builtin
