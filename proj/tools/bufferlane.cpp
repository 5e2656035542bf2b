#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "bufferlane/builtin.hpp"
#include "bufferlane/error.hpp"
#include "bufferlane/manifest.hpp"
#include "bufferlane/properties.hpp"
#include "bufferlane/random_network.hpp"
#include "bufferlane/run.hpp"

namespace fs = std::filesystem;
using namespace bufferlane;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kHorizon = 3, kUnreachable = 4 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError:
    case ErrorKind::SemanticError: return kParse;
    case ErrorKind::HorizonExceeded: return kHorizon;
    case ErrorKind::Unreachable: return kUnreachable;
    default: return kFailure;
  }
}

struct RunFlags {
  std::string scenario;
  std::string out = "out";
  std::optional<double> h;
  std::optional<std::string> tracker;
  std::optional<std::string> policy;
  std::optional<double> w_rho;
  std::optional<double> w_r;
  std::optional<std::string> demand_mode;
  std::optional<std::size_t> log_stride;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidParameter, "cannot write '" + path.string() + "'");
  out << content;
}

void apply_overrides(ScenarioDoc& doc, const RunFlags& f) {
  if (f.h) {
    doc.run.h = *f.h;
    for (auto& e : doc.edges) e.cells.reset();
  }
  if (f.demand_mode) doc.run.demand_mode = parse_demand_mode(*f.demand_mode);
  if (f.log_stride) {
    if (*f.log_stride == 0) throw Error(ErrorKind::InvalidParameter, "--log-stride must be positive");
    doc.run.log_stride = *f.log_stride;
  }
  const bool car_flags = f.tracker || f.policy || f.w_rho || f.w_r;
  if (!doc.car) {
    if (car_flags) std::cerr << "warning: scenario has no [car] section; car flags ignored\n";
    return;
  }
  CarSection& car = *doc.car;
  if (f.tracker) car.tracker = parse_tracker(*f.tracker);
  if (f.policy) car.policy = parse_policy(*f.policy);
  if (f.w_rho) {
    car.w_rho = *f.w_rho;
    car.w_r = f.w_r ? *f.w_r : 1.0 - *f.w_rho;
  } else if (f.w_r) {
    car.w_r = *f.w_r;
    car.w_rho = 1.0 - *f.w_r;
  }
  RoutePolicy{car.policy, car.w_rho, car.w_r}.validate();
}

int run_command(const RunFlags& flags) {
  ScenarioDoc doc = load_scenario(flags.scenario);
  try {
    apply_overrides(doc, flags);
    doc = parse_scenario(serialize_scenario(doc));
  } catch (const Error& e) {
    throw Error(ErrorKind::SemanticError, e.what());
  }
  const RunResult result = run_scenario(doc);
  const SimLog& log = result.log;

  const fs::path out(flags.out);
  fs::create_directories(out);
  write_file(out / "density.csv", density_csv(log, doc.run.log_stride));
  write_file(out / "buffers.csv", buffer_csv(log, doc.run.log_stride));
  const CarLog* car = result.car ? &*result.car : nullptr;
  if (car) {
    write_file(out / "trajectory.csv", trajectory_csv(log, *car));
    write_file(out / "route.csv", route_csv(log, *car));
  }
  write_file(out / "manifest.json", manifest_json(doc, flags.scenario, log, car, result.oracle_error));

  const RoadNetwork& net = log.network();
  std::printf("tau %.10g, %zu steps, finest cell width %.6g\n", log.grid().tau, log.steps(), net.min_cell_width());
  if (!log.negativity_events().empty()) {
    const auto& first = log.negativity_events().front();
    std::printf("negativity events: %zu (first at t=%.6g, node %s, load %.6g)\n", log.negativity_events().size(),
                log.grid().time(first.step), net.node(first.node).id.c_str(), first.load);
  }
  if (!car) return kOk;

  std::string path;
  for (EdgeIndex e : car->path) path += (path.empty() ? "" : " ") + net.edge(e).id;
  std::printf("policy %s, path [%s], length %.6g\n", std::string(to_string(doc.car->policy)).c_str(), path.c_str(),
              car->path_length(net));
  std::printf("status %s", to_string(car->status));
  if (car->arrival) std::printf(", arrival %.6g", *car->arrival);
  std::printf(", total wait %.6g\n", car->total_wait());
  if (result.oracle_error) std::printf("trajectory error vs %s oracle: %.3e\n",
                                       std::string(to_string(doc.car->oracle)).c_str(), *result.oracle_error);
  return car->status == CarStatus::HorizonExceeded ? kHorizon : kOk;
}

int verify_command() {
  {
    for (auto tracker : {TrackerKind::Naive, TrackerKind::Complex}) {
      ScenarioDoc doc = builtin::linear_network(0.1);
      doc.car->tracker = tracker;
      const RunResult r = run_scenario(doc);
      std::printf("linear network  %-7s h=0.1       eps=%.3e  waits %.6f %.6f\n",
                  std::string(to_string(tracker)).c_str(), *r.oracle_error, r.car->stops.at(0).wait,
                  r.car->stops.at(1).wait);
    }
  }
  for (int setting : {1, 2}) {
    for (auto tracker : {TrackerKind::Naive, TrackerKind::Complex}) {
      for (int n : {0, 2, 4, 6}) {
        const double h = 0.1 * std::ldexp(1.0, -n);
        ScenarioDoc doc = builtin::single_road(setting, h);
        doc.car->tracker = tracker;
        const RunResult r = run_scenario(doc);
        std::printf("setting %d       %-7s h=%-10.6g eps=%.3e\n", setting, std::string(to_string(tracker)).c_str(),
                    h, *r.oracle_error);
      }
    }
  }
  return kOk;
}

int check_command(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  double worst_balance = 0.0, worst_bound = 0.0, worst_fifo = -1.0;
  std::size_t pairs = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const ScenarioDoc doc = random_scenario(rng);
    const ConservationReport c = check_conservation(doc);
    const FifoReport f = check_fifo(doc, rng, 10);
    worst_balance = std::max(worst_balance, c.worst_balance);
    worst_bound = std::max(worst_bound, c.worst_bound);
    if (f.pairs > 0) worst_fifo = std::max(worst_fifo, f.worst_gap);
    pairs += f.pairs;
  }
  const bool ok = worst_balance <= 1e-12 && worst_bound <= 1e-12 && worst_fifo <= 1e-9;
  std::printf("%zu scenarios, seed %llu\n", count, static_cast<unsigned long long>(seed));
  std::printf("mass balance     worst %.3e (limit 1e-12)\n", worst_balance);
  std::printf("buffer bounds    worst %.3e (limit 1e-12)\n", worst_bound);
  std::printf("fifo             worst %.3e over %zu pairs (limit 1e-9)\n", worst_fifo, pairs);
  std::printf("%s\n", ok ? "ok" : "FAILED");
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traffic network simulator with junction buffers and car tracking"};
  app.require_subcommand(1);

  RunFlags flags;
  auto* run = app.add_subcommand("run", "simulate a scenario and track its car");
  run->set_help_flag("--help", "print this help message and exit");
  run->add_option("scenario", flags.scenario, "scenario file")->required();
  run->add_option("--out", flags.out, "output directory")->capture_default_str();
  run->add_option("--h", flags.h, "target cell width (recomputes all cell counts)");
  run->add_option("--tracker", flags.tracker, "naive|complex");
  run->add_option("--policy", flags.policy, "shortest|fastest|aggregated|online");
  run->add_option("--wrho", flags.w_rho, "density weight");
  run->add_option("--wr", flags.w_r, "buffer weight");
  run->add_option("--demand-mode", flags.demand_mode, "standard|original");
  run->add_option("--log-stride", flags.log_stride, "write every N-th step to the CSVs");

  auto* verify = app.add_subcommand("verify", "trajectory errors of the built-in oracle scenarios");

  std::uint64_t seed = 1;
  std::size_t count = 20;
  auto* check = app.add_subcommand("check", "randomized conservation, buffer-bound and FIFO checks");
  check->add_option("--seed", seed, "random seed")->capture_default_str();
  check->add_option("--count", count, "number of random scenarios")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*run) return run_command(flags);
    if (*verify) return verify_command();
    if (*check) return check_command(seed, count);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
