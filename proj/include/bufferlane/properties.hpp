#pragma once

#include <cstddef>
#include <random>

#include "bufferlane/scenario.hpp"

namespace bufferlane {

struct ConservationReport {
  std::size_t steps = 0;
  double worst_balance = 0.0;  // |mass change - tau (inflow - outflow)| over all steps
  double worst_bound = 0.0;    // largest excursion of a buffer outside [0, r_max]
};

/// Steps the scenario's simulation and measures the global mass balance
/// (roads plus non-sink buffers against source inflow and sink outflow) and
/// the buffer bounds after every step.
ConservationReport check_conservation(const ScenarioDoc& doc);

struct FifoReport {
  std::size_t pairs = 0;     // departure pairs that completed before the horizon
  double worst_gap = 0.0;    // max over pairs of exit(t) - exit(t~), t < t~
};

/// For every edge, draws `pairs` departure pairs t < t~ at its tail node and
/// compares the exit times of wait + drive with the given tracker. Departures
/// are drawn from [0, T - L_e] so that free-flowing cars can finish the road.
FifoReport check_fifo(const ScenarioDoc& doc, std::mt19937_64& rng, std::size_t pairs,
                      TrackerKind tracker = TrackerKind::Complex);

}  // namespace bufferlane
