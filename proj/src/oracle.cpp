#include "bufferlane/oracle.hpp"

#include <cmath>
#include <string>

#include "bufferlane/error.hpp"

namespace bufferlane {

ExactTrajectory::ExactTrajectory(std::vector<Piece> pieces, double end) : pieces_(std::move(pieces)), end_(end) {
  if (pieces_.empty()) throw Error(ErrorKind::InvalidParameter, "exact trajectory needs a piece");
  for (std::size_t k = 1; k < pieces_.size(); ++k) {
    if (!(pieces_[k].start > pieces_[k - 1].start)) {
      throw Error(ErrorKind::InvalidParameter, "exact trajectory breakpoints must increase");
    }
  }
  if (!(end_ > pieces_.back().start)) throw Error(ErrorKind::InvalidParameter, "exact trajectory ends too early");
}

double ExactTrajectory::operator()(double t) const {
  if (!contains(t)) throw Error(ErrorKind::OutOfDomain, "time " + std::to_string(t) + " outside the exact solution");
  std::size_t k = pieces_.size() - 1;
  while (k > 0 && t < pieces_[k].start) --k;
  const Piece& piece = pieces_[k];
  return piece.p + piece.q * t + piece.s * std::sqrt(t);
}

// Road 1 at speed 0.7 reaches node 2 at 10/7. Its buffer drains at 0.04 from
// 0.1 and releases the car at 8/5. Road 2 at speed 0.5 brings it to node 3 at
// 18/5, where the buffer has filled at 0.04 since t = 0 and drains at 0.21:
// release at 30/7. Road 3 at speed 0.3 ends at 160/21.
ExactTrajectory linear_network_exact() {
  return ExactTrajectory({{0.0, 0.0, 0.7, 0.0},
                          {10.0 / 7.0, 1.0, 0.0, 0.0},
                          {8.0 / 5.0, 1.0 - 0.5 * 1.6, 0.5, 0.0},
                          {18.0 / 5.0, 2.0, 0.0, 0.0},
                          {30.0 / 7.0, 2.0 - 0.3 * 30.0 / 7.0, 0.3, 0.0}},
                         160.0 / 21.0);
}

// The left front of the fan leaves x = 0.5 at speed f'(0.4) = 0.2 and meets
// the car (speed 0.6) at t = 1.25, x = 0.75. Inside the fan
// x' = (1 + (x - 0.5)/t) / 2, whose solution through that point is
// t - (2 sqrt 5 / 5) sqrt t + 0.5; it reaches x = 2 at (19 + 2 sqrt 34)/10.
ExactTrajectory rarefaction_exact() {
  return ExactTrajectory({{0.0, 0.0, 0.6, 0.0}, {1.25, 0.5, 1.0, -2.0 * std::sqrt(5.0) / 5.0}},
                         (19.0 + 2.0 * std::sqrt(34.0)) / 10.0);
}

double truncation_error(std::span<const TimedPosition> numeric, const ExactTrajectory& exact, double tau) {
  double worst = 0.0;
  for (const auto& s : numeric) {
    const double n = std::round(s.time / tau);
    if (std::abs(s.time - n * tau) > 1e-9 * std::max(1.0, s.time)) {
      throw Error(ErrorKind::GridMismatch, "sample at t=" + std::to_string(s.time) + " is not a grid time");
    }
    if (!exact.contains(s.time)) continue;
    worst = std::max(worst, std::abs(exact(s.time) - s.x));
  }
  return worst;
}

std::vector<TimedPosition> grid_positions(std::span<const TrajectorySample> samples) {
  std::vector<TimedPosition> out;
  for (const auto& s : samples) {
    if (s.on_grid) out.push_back({s.time, s.distance});
  }
  return out;
}

}  // namespace bufferlane
