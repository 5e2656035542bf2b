#pragma once

#include <span>
#include <vector>

#include "bufferlane/tracker.hpp"

namespace bufferlane {

/// Piecewise closed-form trajectory; piece k is x(t) = p + q t + s sqrt(t) on
/// [start_k, start_{k+1}], the last piece ends at `end`.
class ExactTrajectory {
 public:
  struct Piece {
    double start = 0.0;
    double p = 0.0;
    double q = 0.0;
    double s = 0.0;
  };

  ExactTrajectory(std::vector<Piece> pieces, double end);

  double start() const { return pieces_.front().start; }
  double end() const { return end_; }
  bool contains(double t) const { return t >= start() && t <= end_; }
  /// Throws OutOfDomain outside [start, end].
  double operator()(double t) const;
  const std::vector<Piece>& pieces() const { return pieces_; }

 private:
  std::vector<Piece> pieces_;
  double end_;
};

/// Three unit roads with densities 0.3, 0.5, 0.7 and buffers 0.1, 0 at the
/// inner nodes: drive, wait 6/35, drive, wait 24/35, drive.
ExactTrajectory linear_network_exact();

/// Road of length 2 with data 0.4 | 0.2 split at x = 0.5: the car drives at
/// 0.6 until it meets the fan at t = 1.25 and then follows it.
ExactTrajectory rarefaction_exact();

struct TimedPosition {
  double time = 0.0;
  double x = 0.0;
};

/// max |x(t^n) - x^n| over the samples that fall inside the exact domain.
/// Every sample time must lie on the grid t^n = n tau (GridMismatch).
double truncation_error(std::span<const TimedPosition> numeric, const ExactTrajectory& exact, double tau);

/// On-grid positions of a tracked car, cumulative distance along its path.
std::vector<TimedPosition> grid_positions(std::span<const TrajectorySample> samples);

}  // namespace bufferlane
