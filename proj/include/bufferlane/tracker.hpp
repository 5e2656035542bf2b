#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bufferlane/network.hpp"
#include "bufferlane/solver.hpp"

namespace bufferlane {

enum class TrackerKind { Naive, Complex };

/// A time t^step + offset on the simulation grid, offset in [0, tau).
struct Instant {
  std::size_t step = 0;
  double offset = 0.0;

  double time(double tau) const { return static_cast<double>(step) * tau + offset; }
  auto operator<=>(const Instant&) const = default;
};

/// Splits a time into grid step and remainder.
Instant make_instant(double t, double tau);

/// Speed field and wave geometry below use the closed forms of
/// f(rho) = rho(1 - rho), v(rho) = 1 - rho.
namespace wave {

/// Where the car meets a wave front.
struct Crossing {
  double tau = 0.0;  // time after the wave started
  double x = 0.0;
};

/// Rankine-Hugoniot speed of the jump (left, right).
double shock_speed(double rho_minus, double rho_plus);

/// First meeting of a car at `x` with the shock starting at `origin`.
/// `start` is the car's time relative to the wave start (0 at grid times).
/// Throws NotAShock unless rho_minus < rho_plus.
Crossing shock_intersection(double x, double origin, double rho_minus, double rho_plus, double start = 0.0);

/// First meeting with the left front of the rarefaction starting at `origin`.
/// Throws NotARarefaction unless rho_minus > rho_plus.
Crossing rarefaction_entry(double x, double origin, double rho_minus, double rho_plus, double start = 0.0);

/// Car position inside the fan, s time units after the wave started, given
/// the point where it entered.
double fan_position(double origin, const Crossing& entry, double s);

/// Where the car leaves the fan through its right front, or nullopt when it
/// can never catch it (rho_plus = 0).
std::optional<Crossing> rarefaction_exit(const Crossing& entry, double origin, double rho_minus, double rho_plus);

}  // namespace wave

/// Cell of `points` containing x, with x in [points[j], points[j+1]).
std::size_t locate_cell(std::span<const double> points, double x);

/// Explicit Euler step at the speed of the Godunov cell containing x.
double naive_step(double x, std::span<const double> density, std::span<const double> points, double tau,
                  double start = 0.0);

struct StepEvent {
  double dt = 0.0;  // time since the start of the grid step
  double x = 0.0;
};

struct ComplexStep {
  double x = 0.0;
  std::vector<StepEvent> events;  // wave hits and fan exits inside the step
};

/// Exact trajectory over one step through the Riemann problem at the right
/// boundary of the car's cell; the last cell sees no wave at the road end.
ComplexStep complex_step(double x, std::span<const double> density, std::span<const double> points, double tau,
                         double start = 0.0);

/// Time needed to reach road end b at the speed of the last cell.
double end_of_road_time(double x, double rho_last, double road_end);

enum class CarStatus { Driving, Waiting, Arrived, HorizonExceeded };

const char* to_string(CarStatus status);

struct TrajectorySample {
  double time = 0.0;
  EdgeIndex edge = 0;
  double x = 0.0;
  double distance = 0.0;  // cumulative along the path
  CarStatus status = CarStatus::Driving;
  bool on_grid = false;  // sample taken at some t^n
};

struct EdgeTraversal {
  bool completed = false;
  Instant exit;  // arrival at the road end when completed
  std::vector<TrajectorySample> samples;
};

/// Tracks single cars against a finished simulation.
class CarTracker {
 public:
  CarTracker(const SimLog& log, TrackerKind kind);

  const SimLog& log() const { return *log_; }
  TrackerKind kind() const { return kind_; }
  double tau() const { return log_->grid().tau; }

  /// Drives edge e from position x0 at `entry` until its end or the horizon.
  EdgeTraversal drive(EdgeIndex e, Instant entry, double x0, bool keep_samples = true) const;

  /// FIFO departure from node v for a car reaching it at `arrival`;
  /// nullopt when the queue ahead does not clear before the horizon.
  std::optional<Instant> leave_node(NodeIndex v, Instant arrival) const;

  /// Interpolated load at an arbitrary instant.
  double buffer_at(NodeIndex v, Instant at) const;

 private:
  const SimLog* log_;
  TrackerKind kind_;
  std::vector<Grid> grids_;
};

}  // namespace bufferlane
