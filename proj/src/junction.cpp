#include "bufferlane/junction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bufferlane/error.hpp"
#include "bufferlane/flux.hpp"

namespace bufferlane {

namespace {

constexpr double kRoundOff = 1e-12;

using flux::demand;
using flux::supply;

void check_load(double r, double r_max) {
  if (!(r >= -kRoundOff && r <= r_max + kRoundOff)) {
    throw Error(ErrorKind::BufferOutOfRange, "buffer load " + std::to_string(r));
  }
}

bool is_empty(double r) { return r <= kBufferTolerance; }
bool is_full(double r, double r_max) { return r >= r_max - kBufferTolerance; }

JunctionFluxes diverge(double rho1, double rho2, double rho3, bool empty, bool full, const JunctionSpec& spec) {
  const double mu = spec.mu;
  const auto [a2, a3] = spec.alpha;
  JunctionFluxes q;
  q.buffer_demand = empty ? std::min(demand(rho1), mu) : mu;
  q.in[0] = std::min(a2 * q.buffer_demand, supply(rho2));
  q.in[1] = std::min(a3 * q.buffer_demand, supply(rho3));
  q.buffer_supply = full ? std::min(supply(rho2), a2 * mu) + std::min(supply(rho3), a3 * mu) : mu;
  q.out[0] = std::min(q.buffer_supply, demand(rho1));
  return q;
}

JunctionFluxes merge(double rho1, double rho2, double rho3, bool empty, bool full, const JunctionSpec& spec,
                     DemandMode mode) {
  const double mu = spec.mu;
  const double d1 = demand(rho1);
  const double d2 = demand(rho2);
  const double s3 = supply(rho3);
  std::array<double, 2> c{};
  if (const auto* fixed = std::get_if<FixedPriority>(&spec.priority)) {
    c = {fixed->first, fixed->second};
  } else {
    c = dynamic_priorities(d1, d2);
  }
  JunctionFluxes q;
  q.buffer_supply = full ? std::min(s3, mu) : mu;
  q.out[0] = std::min(c[0] * q.buffer_supply, d1);
  q.out[1] = std::min(c[1] * q.buffer_supply, d2);
  if (!empty) {
    q.buffer_demand = mu;
  } else if (mode == DemandMode::Standard) {
    q.buffer_demand = std::min(d1, c[0] * mu) + std::min(d2, c[1] * mu);
  } else {
    q.buffer_demand = std::min(d1 + d2, mu);
  }
  q.in[0] = std::min(q.buffer_demand, s3);
  return q;
}

JunctionFluxes series(double rho1, double rho2, bool empty, bool full, double mu) {
  JunctionFluxes q;
  q.buffer_demand = empty ? std::min(demand(rho1), mu) : mu;
  q.in[0] = std::min(q.buffer_demand, supply(rho2));
  q.buffer_supply = full ? std::min(supply(rho2), mu) : mu;
  q.out[0] = std::min(q.buffer_supply, demand(rho1));
  return q;
}

JunctionFluxes inflow_node(double inflow, double rho_first, bool empty, double mu) {
  if (!(inflow >= 0.0)) throw Error(ErrorKind::NegativeInflow, "inflow " + std::to_string(inflow));
  JunctionFluxes q;
  q.external_inflow = inflow;
  q.buffer_demand = empty ? std::min(inflow, mu) : mu;
  q.buffer_supply = kUnbounded;
  q.in[0] = std::min(q.buffer_demand, supply(rho_first));
  return q;
}

JunctionFluxes blend(const JunctionFluxes& a, const JunctionFluxes& b, double theta) {
  auto mix = [theta](double x, double y) { return theta * x + (1.0 - theta) * y; };
  JunctionFluxes q;
  for (std::size_t k = 0; k < 2; ++k) {
    q.out[k] = mix(a.out[k], b.out[k]);
    q.in[k] = mix(a.in[k], b.in[k]);
  }
  q.external_inflow = a.external_inflow;
  q.buffer_demand = mix(a.buffer_demand, b.buffer_demand);
  q.buffer_supply = std::isfinite(a.buffer_supply) ? mix(a.buffer_supply, b.buffer_supply) : a.buffer_supply;
  return q;
}

}  // namespace

std::array<double, 2> dynamic_priorities(double d1, double d2) {
  const double total = d1 + d2;
  if (!(total > 0.0)) return {0.5, 0.5};
  return {d1 / total, d2 / total};
}

JunctionFluxes one_to_two_fluxes(double rho1_end, double rho2_start, double rho3_start, double r,
                                 const JunctionSpec& spec) {
  check_load(r, spec.r_max);
  return diverge(rho1_end, rho2_start, rho3_start, is_empty(r), is_full(r, spec.r_max), spec);
}

JunctionFluxes two_to_one_fluxes(double rho1_end, double rho2_end, double rho3_start, double r,
                                 const JunctionSpec& spec, DemandMode mode) {
  if (mode == DemandMode::Standard) check_load(r, spec.r_max);
  return merge(rho1_end, rho2_end, rho3_start, is_empty(r), is_full(r, spec.r_max), spec, mode);
}

JunctionFluxes one_to_one_fluxes(double rho1_end, double rho2_start, double r, const JunctionSpec& spec) {
  check_load(r, spec.r_max);
  return series(rho1_end, rho2_start, is_empty(r), is_full(r, spec.r_max), spec.mu);
}

JunctionFluxes source_fluxes(double inflow, double rho_first, double r, double mu) {
  check_load(r, kUnbounded);
  return inflow_node(inflow, rho_first, is_empty(r), mu);
}

JunctionFluxes sink_flux(double rho_last) {
  JunctionFluxes q;
  q.out[0] = flux::flux(rho_last);
  return q;
}

JunctionFluxes evaluate_junction(const JunctionSpec& spec, const JunctionInputs& inputs, bool empty, bool full,
                                 DemandMode mode, double inflow) {
  const auto& in_end = inputs.incoming_end;
  const auto& out_start = inputs.outgoing_start;
  switch (spec.kind) {
    case NodeKind::Source: return inflow_node(inflow, out_start[0], empty, spec.mu);
    case NodeKind::Sink: return sink_flux(in_end[0]);
    case NodeKind::OneToOne: return series(in_end[0], out_start[0], empty, full, spec.mu);
    case NodeKind::OneToTwo: return diverge(in_end[0], out_start[0], out_start[1], empty, full, spec);
    case NodeKind::TwoToOne: return merge(in_end[0], in_end[1], out_start[0], empty, full, spec, mode);
  }
  return {};
}

JunctionFluxes step_fluxes(const JunctionSpec& spec, const JunctionInputs& inputs, double r, double tau,
                           DemandMode mode, double inflow) {
  const bool empty = is_empty(r);
  const bool full = is_full(r, spec.r_max);
  JunctionFluxes q = evaluate_junction(spec, inputs, empty, full, mode, inflow);
  if (spec.kind == NodeKind::Sink) return q;

  const double rate = q.buffer_rate();
  const double trial = r + tau * rate;
  if (!empty && rate < 0.0 && trial < 0.0) {
    const double theta = std::clamp(r / (-tau * rate), 0.0, 1.0);
    JunctionFluxes drained = evaluate_junction(spec, inputs, true, false, mode, inflow);
    return blend(q, drained, theta);
  }
  if (!full && rate > 0.0 && trial > spec.r_max) {
    const double theta = std::clamp((spec.r_max - r) / (tau * rate), 0.0, 1.0);
    JunctionFluxes filled = evaluate_junction(spec, inputs, false, true, mode, inflow);
    return blend(q, filled, theta);
  }
  return q;
}

BufferUpdate buffer_step(double r, double inflow, double outflow, double tau, double r_max, DemandMode mode) {
  BufferUpdate update;
  update.load = r + tau * (inflow - outflow);
  if (update.load < 0.0) {
    if (update.load >= -kRoundOff) {
      update.load = 0.0;
    } else if (mode == DemandMode::Original) {
      update.negative = true;
    } else {
      throw Error(ErrorKind::BufferUnderflow, "load " + std::to_string(update.load));
    }
  }
  if (update.load > r_max) {
    if (update.load <= r_max + kRoundOff) {
      update.load = r_max;
    } else {
      throw Error(ErrorKind::BufferOverflow, "load " + std::to_string(update.load));
    }
  }
  return update;
}

}  // namespace bufferlane
