// One line per acceptance criterion; exits nonzero when any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bufferlane/builtin.hpp"
#include "bufferlane/flux.hpp"
#include "bufferlane/junction.hpp"
#include "bufferlane/properties.hpp"
#include "bufferlane/random_network.hpp"
#include "bufferlane/run.hpp"
#include "bufferlane/tracker.hpp"

using namespace bufferlane;

namespace {

// Tolerances, fixed here and nowhere else.
// 1: the inputs are decimal fractions, so "exact" means equal up to the
// rounding of the flux formula in binary (d(0.1) = 0.1 * 0.9 lands one ulp
// above 0.09): four ulps relative.
constexpr double kMergeUlps = 4.0;
constexpr double kLemmaTol = 1e-14;           // 2: standard vs original buffer demand
constexpr double kLinearTrajectoryTol = 1e-12;  // 3
constexpr double kLinearWaitTol = 1e-9;         // 3
constexpr double kLadderRelTol = 0.30;          // 4
constexpr double kSmallWait = 0.78;             // 5
constexpr double kSmallWaitTol = 0.05;          // 5
constexpr double kBlockArrivalTol = 0.2;        // 6
constexpr double kBlockWaitTol = 0.3;           // 6
constexpr double kBalanceTol = 1e-12;           // 7
constexpr double kBoundTol = 1e-12;             // 7
constexpr double kFifoTol = 1e-9;               // 8
constexpr double kWaveTol = 1e-4;               // 9
constexpr double kEulerStep = 1e-6;             // 9

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<std::string> ids(const RoadNetwork& net, const std::vector<EdgeIndex>& path) {
  std::vector<std::string> out;
  for (EdgeIndex e : path) out.push_back(net.edge(e).id);
  return out;
}

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

SimLog simulate_doc(const ScenarioDoc& doc) {
  const RoadNetwork net = build_network(doc);
  return simulate(net, build_initial_state(doc, net), build_time_grid(doc, net), doc.run.demand_mode);
}

bool same(double value, double expected) {
  return std::abs(value - expected) <= kMergeUlps * std::numeric_limits<double>::epsilon() * std::abs(expected);
}

Outcome merge_example() {
  JunctionSpec spec;
  spec.kind = NodeKind::TwoToOne;
  spec.r_max = 1.0;
  spec.mu = 0.2;
  spec.priority = FixedPriority{0.5, 0.5};
  const auto h = two_to_one_fluxes(0.4, 0.1, 0.5, 0.0, spec, DemandMode::Original);
  const auto s = two_to_one_fluxes(0.4, 0.1, 0.5, 0.0, spec, DemandMode::Standard);
  const bool original =
      same(h.out[0], 0.1) && same(h.out[1], 0.09) && same(h.in[0], 0.2) && same(h.buffer_rate(), -0.01);
  const bool standard = same(s.in[0], 0.19) && s.buffer_rate() == 0.0;
  return {original && standard, fmt("original (%.17g, %.17g, %.17g) rate %.3g; standard q3 %.17g rate %.3g", h.out[0],
                                 h.out[1], h.in[0], h.buffer_rate(), s.in[0], s.buffer_rate())};
}

Outcome merge_rules_agree() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rho(0.0, 1.0);
  std::uniform_real_distribution<double> mu(1e-3, 0.5);
  JunctionSpec spec;
  spec.kind = NodeKind::TwoToOne;
  spec.r_max = 1.0;
  spec.priority = DemandProportional{};
  double worst = 0.0;
  int states = 0;
  while (states < 10000) {
    const double a = rho(rng), b = rho(rng), c = rho(rng);
    if (!(flux::demand(a) > 0.0 && flux::demand(b) > 0.0)) continue;
    spec.mu = mu(rng);
    const auto s = two_to_one_fluxes(a, b, c, 0.0, spec, DemandMode::Standard);
    const auto h = two_to_one_fluxes(a, b, c, 0.0, spec, DemandMode::Original);
    worst = std::max(worst, std::abs(s.buffer_demand - h.buffer_demand));
    ++states;
  }
  return {worst <= kLemmaTol, fmt("%d states, worst |difference| %.3e", states, worst)};
}

Outcome linear_network() {
  bool pass = true;
  std::string detail;
  for (TrackerKind tracker : {TrackerKind::Naive, TrackerKind::Complex}) {
    ScenarioDoc doc = builtin::linear_network(0.1);
    doc.car->tracker = tracker;
    const RunResult r = run_scenario(doc);
    const double eps = r.oracle_error.value();
    const auto& stops = r.car->stops;
    const bool waits = stops.size() == 2 && std::abs(stops[0].wait - 6.0 / 35.0) <= kLinearWaitTol &&
                       std::abs(stops[1].wait - 24.0 / 35.0) <= kLinearWaitTol;
    pass = pass && eps <= kLinearTrajectoryTol && waits && r.log.grid().tau == 0.05;
    detail += fmt("%s eps %.2e waits %.9f %.9f; ", std::string(to_string(tracker)).c_str(), eps,
                  stops.size() > 0 ? stops[0].wait : -1.0, stops.size() > 1 ? stops[1].wait : -1.0);
  }
  return {pass, detail};
}

Outcome error_ladder() {
  // Reference truncation errors for n = 0, 2, 4, 6.
  const double table[2][2][4] = {{{3.59e-02, 1.74e-02, 7.04e-03, 2.51e-03}, {4.14e-02, 1.83e-02, 7.29e-03, 2.58e-03}},
                                 {{3.67e-02, 1.74e-02, 7.05e-03, 2.51e-03}, {4.17e-02, 1.84e-02, 7.30e-03, 2.58e-03}}};
  bool pass = true;
  double worst_rel = 0.0;
  std::string detail;
  for (int setting : {1, 2}) {
    for (TrackerKind tracker : {TrackerKind::Naive, TrackerKind::Complex}) {
      const int t = tracker == TrackerKind::Naive ? 0 : 1;
      double prev = INFINITY;
      std::string row;
      for (int k = 0; k < 4; ++k) {
        ScenarioDoc doc = builtin::single_road(setting, 0.1 * std::ldexp(1.0, -2 * k));
        doc.car->tracker = tracker;
        const double eps = run_scenario(doc).oracle_error.value();
        const double rel = std::abs(eps - table[setting - 1][t][k]) / table[setting - 1][t][k];
        worst_rel = std::max(worst_rel, rel);
        pass = pass && rel <= kLadderRelTol && eps < prev;
        prev = eps;
        row += fmt(" %.2e", eps);
      }
      detail += fmt("S%d %s:%s; ", setting, std::string(to_string(tracker)).c_str(), row.c_str());
    }
  }
  return {pass, detail + fmt("worst rel. deviation %.3f", worst_rel)};
}

Outcome small_network() {
  const SimLog log = simulate_doc(builtin::small_network());
  const RoadNetwork& net = log.network();
  const std::vector<std::string> p1{"1", "2", "4", "7"}, p2{"1", "3", "5", "7"};
  auto car = [&](double t, PolicyKind policy) { return track_scenario_car(builtin::small_network(t, policy), log); };
  const CarLog fast0 = car(0.0, PolicyKind::Fastest), fast5 = car(5.0, PolicyKind::Fastest);
  const CarLog online0 = car(0.0, PolicyKind::Online), online5 = car(5.0, PolicyKind::Online);
  const CarLog agg0 = car(0.0, PolicyKind::Aggregated);
  const bool choices = ids(net, fast0.path) == p1 && ids(net, fast5.path) == p2 && ids(net, online0.path) == p1 &&
                       ids(net, online5.path) == p2 && ids(net, agg0.path) == p2;
  const double wait = agg0.total_wait();
  const bool wait_ok = std::abs(wait - kSmallWait) <= kSmallWaitTol;
  return {choices && wait_ok,
          fmt("fastest t0 [%s] t5 [%s], online t0 [%s] t5 [%s], aggregated [%s] wait %.4f", joined(ids(net, fast0.path)).c_str(),
              joined(ids(net, fast5.path)).c_str(), joined(ids(net, online0.path)).c_str(),
              joined(ids(net, online5.path)).c_str(), joined(ids(net, agg0.path)).c_str(), wait)};
}

Outcome block_network() {
  const SimLog log = simulate_doc(builtin::block_network());
  const RoadNetwork& net = log.network();
  auto car = [&](PolicyKind policy) { return track_scenario_car(builtin::block_network(policy), log); };
  const CarLog shortest = car(PolicyKind::Shortest);
  const CarLog fastest = car(PolicyKind::Fastest);
  const CarLog aggregated = car(PolicyKind::Aggregated);
  const CarLog online = car(PolicyKind::Online);
  auto arrival = [](const CarLog& c) { return c.arrival.value_or(NAN); };
  const bool short_ok = shortest.path_length(net) == 13.0 && std::abs(arrival(shortest) - 32.92) <= kBlockArrivalTol &&
                        std::abs(shortest.total_wait() - 2.5) <= kBlockWaitTol;
  const bool fast_ok = fastest.path_length(net) == 15.0 && std::abs(arrival(fastest) - 28.19) <= kBlockArrivalTol &&
                       std::abs(fastest.total_wait() - 1.1) <= kBlockWaitTol;
  const bool static_ok = aggregated.path == shortest.path && online.path == shortest.path;
  return {short_ok && fast_ok && static_ok,
          fmt("shortest L=%g arr %.3f wait %.3f; fastest L=%g arr %.3f wait %.3f; aggregated L=%g arr %.3f; "
              "online L=%g arr %.3f",
              shortest.path_length(net), arrival(shortest), shortest.total_wait(), fastest.path_length(net),
              arrival(fastest), fastest.total_wait(), aggregated.path_length(net), arrival(aggregated),
              online.path_length(net), arrival(online))};
}

Outcome conservation() {
  std::mt19937_64 rng(7007);
  double balance = 0.0, bound = 0.0;
  std::size_t steps = 0;
  for (int k = 0; k < 50; ++k) {
    const ConservationReport r = check_conservation(random_scenario(rng));
    balance = std::max(balance, r.worst_balance);
    bound = std::max(bound, r.worst_bound);
    steps += r.steps;
  }
  return {balance <= kBalanceTol && bound <= kBoundTol,
          fmt("50 networks, %zu steps, worst balance %.2e, worst bound excursion %.2e", steps, balance, bound)};
}

Outcome fifo() {
  std::mt19937_64 rng(8008);
  // Longer horizons than the default so that most departures get through
  // the queues and both exits of a pair can be compared.
  RandomScenarioOptions options;
  options.horizon_min = 8.0;
  options.horizon_max = 15.0;
  double worst = -INFINITY;
  std::size_t pairs = 0;
  for (int k = 0; k < 20; ++k) {
    const ScenarioDoc doc = random_scenario(rng, options);
    const FifoReport r = check_fifo(doc, rng, 10);
    if (r.pairs > 0) worst = std::max(worst, r.worst_gap);
    pairs += r.pairs;
  }
  return {pairs > 0 && worst <= kFifoTol, fmt("20 scenarios, %zu completed pairs, worst exit gap %.2e", pairs, worst)};
}

// Explicit Euler through the Riemann solution at `origin`, started at x at the
// wave's start; returns the first time and place where `past(t, x)` holds,
// interpolated inside the final step.
wave::Crossing integrate_until(double x, double origin, double rho_minus, double rho_plus,
                               const std::function<bool(double, double)>& past) {
  auto speed = [&](double t, double pos) {
    if (rho_minus < rho_plus) {
      return pos < origin + wave::shock_speed(rho_minus, rho_plus) * t ? flux::velocity(rho_minus)
                                                                      : flux::velocity(rho_plus);
    }
    if (t <= 0.0 || pos <= origin + flux::flux_derivative(rho_minus) * t) return flux::velocity(rho_minus);
    if (pos >= origin + flux::flux_derivative(rho_plus) * t) return flux::velocity(rho_plus);
    const double xi = (pos - origin) / t;  // f'(rho) = xi inside the fan
    return flux::velocity((1.0 - xi) / 2.0);
  };
  double t = 0.0;
  while (true) {
    const double next = x + kEulerStep * speed(t, x);
    const double t_next = t + kEulerStep;
    if (past(t_next, next)) {
      // Bisect the linear step against the moving front.
      double lo = 0.0, hi = 1.0;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (past(t + mid * kEulerStep, x + mid * (next - x)) ? hi : lo) = mid;
      }
      return {t + hi * kEulerStep, x + hi * (next - x)};
    }
    x = next;
    t = t_next;
  }
}

Outcome wave_geometry() {
  std::mt19937_64 rng(9009);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double origin = 1.0;
  double worst = 0.0;
  int shocks = 0, fans = 0;
  for (int k = 0; k < 100; ++k) {
    const double x = origin - 0.1 * (0.05 + 0.95 * u(rng));
    if (k % 2 == 0) {
      const double a = 0.9 * u(rng);
      const double b = a + 0.05 + (0.95 - a) * u(rng);
      const auto exact = wave::shock_intersection(x, origin, a, b);
      const double lambda = wave::shock_speed(a, b);
      const auto brute =
          integrate_until(x, origin, a, b, [&](double t, double pos) { return pos >= origin + lambda * t; });
      worst = std::max({worst, std::abs(exact.tau - brute.tau), std::abs(exact.x - brute.x)});
      ++shocks;
    } else {
      const double b = 0.1 + 0.8 * u(rng);
      const double a = b + 0.05 + (0.95 - b) * u(rng);
      const auto entry = wave::rarefaction_entry(x, origin, a, b);
      const auto exact = wave::rarefaction_exit(entry, origin, a, b);
      const double front = flux::flux_derivative(b);
      const auto brute =
          integrate_until(x, origin, a, b, [&](double t, double pos) { return t > 0.0 && pos >= origin + front * t; });
      if (!exact) return {false, "rarefaction exit missing for a positive right density"};
      worst = std::max({worst, std::abs(exact->tau - brute.tau), std::abs(exact->x - brute.x)});
      ++fans;
    }
  }
  return {worst <= kWaveTol,
          fmt("%d shocks, %d rarefactions, worst deviation from Euler dt=%.0e: %.2e", shocks, fans, kEulerStep, worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "merge example fluxes", merge_example},
      {2, "standard and original merge demand agree", merge_rules_agree},
      {3, "linear network exact trajectory", linear_network},
      {4, "rarefaction error ladder", error_ladder},
      {5, "small network route choice", small_network},
      {6, "block network routes", block_network},
      {7, "conservation on random networks", conservation},
      {8, "FIFO on random networks", fifo},
      {9, "wave geometry vs brute-force integration", wave_geometry},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d %s (%.2fs): %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
