#include "bufferlane/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bufferlane/error.hpp"
#include "bufferlane/flux.hpp"

namespace bufferlane {

namespace {
constexpr double kArrivalSlack = 1e-14;
}

Instant make_instant(double t, double tau) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidParameter, "negative time");
  double steps = std::floor(t / tau);
  double offset = t - steps * tau;
  if (offset < 0.0) {
    steps -= 1.0;
    offset += tau;
  }
  if (offset >= tau || std::abs(offset - tau) <= 1e-12 * tau) {
    steps += 1.0;
    offset = 0.0;
  }
  if (std::abs(offset) <= 1e-12 * tau) offset = 0.0;
  return {static_cast<std::size_t>(steps), offset};
}

namespace wave {

double shock_speed(double rho_minus, double rho_plus) { return 1.0 - rho_minus - rho_plus; }

namespace {

Crossing meet_front(double x, double origin, double car_speed, double front_speed, double start) {
  const double front = origin + front_speed * start;
  if (x >= front) return {start, x};
  const double dt = (front - x) / (car_speed - front_speed);
  return {start + dt, x + car_speed * dt};
}

}  // namespace

Crossing shock_intersection(double x, double origin, double rho_minus, double rho_plus, double start) {
  if (!(rho_minus < rho_plus)) throw Error(ErrorKind::NotAShock, "left density must be below right density");
  return meet_front(x, origin, flux::velocity(rho_minus), shock_speed(rho_minus, rho_plus), start);
}

Crossing rarefaction_entry(double x, double origin, double rho_minus, double rho_plus, double start) {
  if (!(rho_minus > rho_plus)) {
    throw Error(ErrorKind::NotARarefaction, "left density must exceed right density");
  }
  return meet_front(x, origin, flux::velocity(rho_minus), flux::flux_derivative(rho_minus), start);
}

double fan_position(double origin, const Crossing& entry, double s) {
  if (entry.tau <= 0.0) return origin + s;
  const double k = (entry.tau + origin - entry.x) / std::sqrt(entry.tau);
  return origin + s - std::sqrt(s) * k;
}

std::optional<Crossing> rarefaction_exit(const Crossing& entry, double origin, double rho_minus, double rho_plus) {
  if (!(rho_minus > rho_plus)) {
    throw Error(ErrorKind::NotARarefaction, "left density must exceed right density");
  }
  if (rho_plus <= 0.0) return std::nullopt;
  if (entry.tau <= 0.0) return Crossing{0.0, origin};
  const double k = (entry.tau + origin - entry.x) / std::sqrt(entry.tau);
  const double root = k / (1.0 - flux::flux_derivative(rho_plus));
  Crossing exit;
  exit.tau = root * root;
  exit.x = origin + flux::flux_derivative(rho_plus) * exit.tau;
  return exit;
}

}  // namespace wave

std::size_t locate_cell(std::span<const double> points, double x) {
  const std::size_t cells = points.size() - 1;
  auto it = std::upper_bound(points.begin(), points.end(), x);
  if (it == points.begin()) return 0;
  return std::min<std::size_t>(static_cast<std::size_t>(it - points.begin()) - 1, cells - 1);
}

double naive_step(double x, std::span<const double> density, std::span<const double> points, double tau,
                  double start) {
  const std::size_t j = locate_cell(points, x);
  return x + (tau - start) * flux::velocity(density[j]);
}

ComplexStep complex_step(double x, std::span<const double> density, std::span<const double> points, double tau,
                         double start) {
  const std::size_t j = locate_cell(points, x);
  const double rho_minus = density[j];
  const double rho_plus = j + 1 < density.size() ? density[j + 1] : rho_minus;
  const double origin = points[j + 1];
  const double v_minus = flux::velocity(rho_minus);
  const double v_plus = flux::velocity(rho_plus);
  ComplexStep step;

  if (rho_minus == rho_plus) {
    step.x = x + (tau - start) * v_minus;
    return step;
  }

  if (rho_minus < rho_plus) {
    const double front = origin + wave::shock_speed(rho_minus, rho_plus) * start;
    if (x >= front) {
      step.x = x + (tau - start) * v_plus;
      return step;
    }
    const wave::Crossing hit = wave::shock_intersection(x, origin, rho_minus, rho_plus, start);
    if (hit.tau >= tau) {
      step.x = x + (tau - start) * v_minus;
    } else {
      step.events.push_back({hit.tau, hit.x});
      step.x = hit.x + v_plus * (tau - hit.tau);
    }
    return step;
  }

  const double left_front = origin + flux::flux_derivative(rho_minus) * start;
  const double right_front = origin + flux::flux_derivative(rho_plus) * start;
  wave::Crossing entry;
  if (x < left_front) {
    entry = wave::rarefaction_entry(x, origin, rho_minus, rho_plus, start);
    if (entry.tau >= tau) {
      step.x = x + (tau - start) * v_minus;
      return step;
    }
    step.events.push_back({entry.tau, entry.x});
  } else if (x < right_front) {
    entry = {start, x};
  } else {
    step.x = x + (tau - start) * v_plus;
    return step;
  }
  const auto exit = wave::rarefaction_exit(entry, origin, rho_minus, rho_plus);
  if (exit && exit->tau < tau) {
    step.events.push_back({exit->tau, exit->x});
    step.x = exit->x + v_plus * (tau - exit->tau);
  } else {
    step.x = wave::fan_position(origin, entry, tau);
  }
  return step;
}

double end_of_road_time(double x, double rho_last, double road_end) {
  if (x >= road_end) return 0.0;
  const double v = flux::velocity(rho_last);
  if (!(v > 0.0)) throw Error(ErrorKind::ZeroSpeedAtBoundary, "car cannot reach the road end");
  return (road_end - x) / v;
}

const char* to_string(CarStatus status) {
  switch (status) {
    case CarStatus::Driving: return "driving";
    case CarStatus::Waiting: return "waiting";
    case CarStatus::Arrived: return "arrived";
    case CarStatus::HorizonExceeded: return "horizon_exceeded";
  }
  return "unknown";
}

CarTracker::CarTracker(const SimLog& log, TrackerKind kind) : log_(&log), kind_(kind) {
  const RoadNetwork& net = log.network();
  if (log.grid().tau > cfl_timestep(net) * (1.0 + 1e-12)) {
    throw Error(ErrorKind::CflViolation, "tracker requires tau <= h/2 on every road");
  }
  grids_.reserve(net.edge_count());
  for (const auto& edge : net.edges()) grids_.push_back(build_grid(edge));
}

EdgeTraversal CarTracker::drive(EdgeIndex e, Instant entry, double x0, bool keep_samples) const {
  const double tau = this->tau();
  const double road_end = log_->network().edge(e).length;
  const std::span<const double> points = grids_[e].points;
  const std::size_t horizon = log_->steps();

  EdgeTraversal result;
  auto sample = [&](double time, double x, bool on_grid) {
    if (keep_samples) result.samples.push_back({time, e, x, 0.0, CarStatus::Driving, on_grid});
  };
  sample(entry.time(tau), x0, entry.offset == 0.0);
  if (x0 >= road_end) {
    result.completed = true;
    result.exit = entry;
    return result;
  }

  std::size_t n = entry.step;
  double start = entry.offset;
  double x = x0;
  while (true) {
    if (n >= horizon) return result;
    const auto density = log_->density(e, n);
    std::vector<StepEvent> events;
    double next;
    if (kind_ == TrackerKind::Naive) {
      next = naive_step(x, density, points, tau, start);
    } else {
      ComplexStep step = complex_step(x, density, points, tau, start);
      next = step.x;
      events = std::move(step.events);
    }
    const double t0 = log_->grid().time(n);
    if (next >= road_end - kArrivalSlack) {
      const double arrive = std::max(start, start + end_of_road_time(x, density.back(), road_end));
      for (const auto& ev : events) {
        if (ev.dt < arrive && ev.x < road_end) sample(t0 + ev.dt, ev.x, false);
      }
      result.completed = true;
      result.exit = arrive >= tau ? Instant{n + 1, 0.0} : Instant{n, arrive};
      sample(result.exit.time(tau), road_end, result.exit.offset == 0.0);
      return result;
    }
    for (const auto& ev : events) sample(t0 + ev.dt, ev.x, false);
    x = std::max(x, next);
    ++n;
    start = 0.0;
    sample(log_->grid().time(n), x, true);
  }
}

double CarTracker::buffer_at(NodeIndex v, Instant at) const {
  if (at.step >= log_->steps()) return log_->buffer(v, log_->steps());
  return log_->buffer(v, at.step) + at.offset * (log_->node_inflow(v, at.step) - log_->node_outflow(v, at.step));
}

std::optional<Instant> CarTracker::leave_node(NodeIndex v, Instant arrival) const {
  const double tau = this->tau();
  const std::size_t horizon = log_->steps();
  double remaining = std::max(0.0, buffer_at(v, arrival));
  if (remaining <= kBufferTolerance) return arrival;
  if (arrival.step >= horizon) return std::nullopt;

  std::size_t n = arrival.step;
  double from = arrival.offset;
  while (n < horizon) {
    const double outflow = log_->node_outflow(v, n);
    const double capacity = (tau - from) * outflow;
    if (outflow > 0.0 && capacity >= remaining) {
      const double offset = from + remaining / outflow;
      return offset >= tau ? Instant{n + 1, 0.0} : Instant{n, offset};
    }
    remaining -= capacity;
    ++n;
    from = 0.0;
  }
  return std::nullopt;
}

}  // namespace bufferlane
