#include <doctest.h>

#include <cmath>
#include <random>

#include "bufferlane/builtin.hpp"
#include "bufferlane/error.hpp"
#include "bufferlane/flux.hpp"
#include "bufferlane/scenario.hpp"
#include "bufferlane/tracker.hpp"

using namespace bufferlane;
using doctest::Approx;

namespace {

SimLog run(const ScenarioDoc& doc) {
  const RoadNetwork net = build_network(doc);
  return simulate(net, build_initial_state(doc, net), build_time_grid(doc, net));
}

ErrorKind failure_of(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidParameter;
}

}  // namespace

TEST_CASE("instants split a time into step and offset") {
  CHECK(make_instant(0.0, 0.05) == Instant{0, 0.0});
  CHECK(make_instant(0.15, 0.05) == Instant{3, 0.0});
  const Instant mid = make_instant(0.17, 0.05);
  CHECK(mid.step == 3);
  CHECK(mid.offset == Approx(0.02));
  CHECK(Instant{2, 0.01} < Instant{3, 0.0});
  CHECK(Instant{3, 0.0} < Instant{3, 0.01});
}

TEST_CASE("cell lookup") {
  const std::vector<double> points{0.0, 0.5, 1.0, 1.5};
  CHECK(locate_cell(points, 0.0) == 0);
  CHECK(locate_cell(points, 0.49) == 0);
  CHECK(locate_cell(points, 0.5) == 1);
  CHECK(locate_cell(points, 1.5) == 2);
}

TEST_CASE("naive step") {
  const std::vector<double> points{0.0, 0.1, 0.2};
  const std::vector<double> rho{0.3, 0.3};
  CHECK(naive_step(0.0, rho, points, 0.05) == Approx(0.035));
  CHECK(naive_step(0.05, std::vector<double>{1.0, 1.0}, points, 0.05) == 0.05);
  const std::vector<double> long_points{0.0, 0.5, 1.0};
  CHECK(naive_step(0.5, std::vector<double>{0.0, 0.0}, long_points, 0.05) == Approx(0.55));
}

TEST_CASE("complex step without a wave is the naive step") {
  const std::vector<double> points{0.0, 0.1, 0.2, 0.3};
  const std::vector<double> rho{0.3, 0.3, 0.3};
  const ComplexStep step = complex_step(0.2, rho, points, 0.05);
  CHECK(step.x == Approx(0.235));
  CHECK(step.events.empty());
}

TEST_CASE("complex step through a shock") {
  const std::vector<double> points{0.9, 1.0, 1.1};
  const std::vector<double> rho{0.2, 0.6};
  const ComplexStep step = complex_step(0.95, rho, points, 0.1);
  CHECK(step.x == Approx(0.95 + 0.8 / 12.0 + 0.4 * (0.1 - 1.0 / 12.0)).epsilon(1e-14));
  CHECK(step.x == Approx(1.02333).epsilon(1e-5));
  REQUIRE(step.events.size() == 1);
  CHECK(step.events[0].dt == Approx(1.0 / 12.0));
}

TEST_CASE("complex step into a rarefaction fan") {
  const std::vector<double> points{0.5, 1.0, 1.5};
  const std::vector<double> rho{0.8, 0.4};
  const ComplexStep step = complex_step(0.9, rho, points, 0.25);
  CHECK(step.x == Approx(1.25 - 0.5 * 0.2 / std::sqrt(0.125)).epsilon(1e-14));
  CHECK(step.x == Approx(0.96716).epsilon(1e-5));
  REQUIRE(step.events.size() == 1);
  CHECK(step.events[0].dt == Approx(0.125));
}

TEST_CASE("shock intersection") {
  const auto hit = wave::shock_intersection(0.95, 1.0, 0.2, 0.6);
  CHECK(wave::shock_speed(0.2, 0.6) == Approx(0.2));
  CHECK(hit.tau == Approx(1.0 / 12.0));
  CHECK(hit.x == Approx(0.95 + 0.8 / 12.0));

  const auto at_origin = wave::shock_intersection(1.0, 1.0, 0.2, 0.6);
  CHECK(at_origin.tau == 0.0);
  CHECK(at_origin.x == 1.0);

  const auto standing = wave::shock_intersection(0.9, 1.0, 0.0, 1.0);
  CHECK(standing.tau == Approx(0.1));
  CHECK(standing.x == Approx(1.0));

  CHECK(failure_of([] { wave::shock_intersection(0.9, 1.0, 0.6, 0.2); }) == ErrorKind::NotAShock);
  CHECK(failure_of([] { wave::shock_intersection(0.9, 1.0, 0.4, 0.4); }) == ErrorKind::NotAShock);
}

TEST_CASE("rarefaction entry and exit") {
  const auto entry = wave::rarefaction_entry(0.9, 1.0, 0.8, 0.4);
  CHECK(entry.tau == Approx(0.125));
  CHECK(entry.x == Approx(0.925));
  const auto exit = wave::rarefaction_exit(entry, 1.0, 0.8, 0.4);
  REQUIRE(exit);
  CHECK(exit->tau == Approx(0.5));
  CHECK(exit->x == Approx(1.1));
  CHECK(wave::fan_position(1.0, entry, exit->tau) == Approx(exit->x));
  CHECK(wave::fan_position(1.0, entry, entry.tau) == Approx(entry.x));

  CHECK_FALSE(wave::rarefaction_exit(wave::rarefaction_entry(0.9, 1.0, 0.8, 0.0), 1.0, 0.8, 0.0));
  CHECK(failure_of([] { wave::rarefaction_entry(0.9, 1.0, 0.2, 0.6); }) == ErrorKind::NotARarefaction);
}

TEST_CASE("time to the road end") {
  CHECK(end_of_road_time(0.98, 0.5, 1.0) == Approx(0.04));
  CHECK(end_of_road_time(1.0, 0.5, 1.0) == 0.0);
  CHECK(failure_of([] { end_of_road_time(0.5, 1.0, 1.0); }) == ErrorKind::ZeroSpeedAtBoundary);
}

TEST_CASE("cars meet waves on their fronts and leave fans later than they enter") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    const double origin = 1.0;
    const double x = origin - 0.1 * u(rng);
    if (a < b) {
      const auto hit = wave::shock_intersection(x, origin, a, b);
      CHECK(hit.tau >= 0.0);
      CHECK(hit.x == Approx(origin + wave::shock_speed(a, b) * hit.tau).epsilon(1e-12));
      CHECK(hit.x >= x);
    } else {
      const auto entry = wave::rarefaction_entry(x, origin, a, b);
      CHECK(entry.x == Approx(origin + flux::flux_derivative(a) * entry.tau).epsilon(1e-12));
      const auto exit = wave::rarefaction_exit(entry, origin, a, b);
      if (!exit) {
        CHECK(b == 0.0);
        continue;
      }
      CHECK(exit->tau >= entry.tau);
      CHECK(exit->x >= entry.x - 1e-12);
      CHECK(exit->x == Approx(origin + flux::flux_derivative(b) * exit->tau).epsilon(1e-12));
    }
  }
}

TEST_CASE("splitting a step at an intermediate offset changes nothing") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<double> points{0.0, 0.1, 0.2, 0.3};
  const double tau = 0.05;
  int checked = 0;
  for (int k = 0; k < 5000; ++k) {
    const std::vector<double> rho{u(rng), u(rng), u(rng)};
    const double x = 0.1 + 0.1 * u(rng) * 0.999;
    const double s = tau * u(rng);
    const double x_s = complex_step(x, rho, points, s).x;
    if (locate_cell(points, x_s) != locate_cell(points, x)) continue;
    const double whole = complex_step(x, rho, points, tau).x;
    const double split = complex_step(x_s, rho, points, tau, s).x;
    CHECK(split == Approx(whole).epsilon(1e-12));
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("both trackers are exact on constant data") {
  ScenarioDoc doc = builtin::single_road(1);
  doc.densities = {{"1", {{0.0, 0.3}}}};
  doc.nodes[0].inflow = InflowProfile(0.21);
  const SimLog log = run(doc);
  for (TrackerKind kind : {TrackerKind::Naive, TrackerKind::Complex}) {
    const CarTracker tracker(log, kind);
    const EdgeTraversal pass = tracker.drive(0, {0, 0.0}, 0.0);
    REQUIRE(pass.completed);
    CHECK(pass.exit.time(tracker.tau()) == Approx(2.0 / 0.7).epsilon(1e-13));
    for (const auto& sample : pass.samples) {
      if (sample.on_grid && sample.x < 2.0) CHECK(sample.x == Approx(0.7 * sample.time).epsilon(1e-13));
    }
  }
}

TEST_CASE("linear network arrival and waiting at node 2") {
  const SimLog log = run(builtin::linear_network());
  const CarTracker tracker(log, TrackerKind::Complex);
  const EdgeTraversal first = tracker.drive(0, {0, 0.0}, 0.0);
  REQUIRE(first.completed);
  CHECK(first.exit.time(tracker.tau()) == Approx(10.0 / 7.0).epsilon(1e-12));
  const auto leave = tracker.leave_node(log.network().node_index("2"), first.exit);
  REQUIRE(leave);
  CHECK(leave->time(tracker.tau()) == Approx(8.0 / 5.0).epsilon(1e-12));
}

TEST_CASE("an empty buffer is passed without waiting") {
  const SimLog log = run(builtin::single_road(2));
  const CarTracker tracker(log, TrackerKind::Complex);
  const Instant at{7, 0.01};
  CHECK(tracker.leave_node(log.network().node_index("2"), at) == at);
  CHECK(tracker.buffer_at(log.network().node_index("2"), at) == 0.0);
}

TEST_CASE("tracker refuses a log beyond the CFL bound") {
  const ScenarioDoc doc = builtin::linear_network();
  const RoadNetwork net = build_network(doc);
  const SimLog log(net, fit_time_grid(0.1, 1.0), DemandMode::Standard);
  CHECK(failure_of([&] { CarTracker tracker(log, TrackerKind::Naive); }) == ErrorKind::CflViolation);
}
