#include "bufferlane/builtin.hpp"

#include <cmath>
#include <string>

#include "bufferlane/flux.hpp"

namespace bufferlane::builtin {

namespace {

JunctionSpec node(std::string id, NodeKind kind, double r_max = kUnbounded, double mu = 0.25) {
  JunctionSpec spec;
  spec.id = std::move(id);
  spec.kind = kind;
  spec.r_max = r_max;
  spec.mu = mu;
  return spec;
}

JunctionSpec source(std::string id, double inflow, double mu = 0.25) {
  JunctionSpec spec = node(std::move(id), NodeKind::Source, kUnbounded, mu);
  spec.inflow = InflowProfile(inflow);
  return spec;
}

JunctionSpec diverge(std::string id, double r_max, double a, double b) {
  JunctionSpec spec = node(std::move(id), NodeKind::OneToTwo, r_max);
  spec.alpha = {a, b};
  return spec;
}

JunctionSpec merge(std::string id, double r_max, Priority priority = DemandProportional{}, double mu = 0.25) {
  JunctionSpec spec = node(std::move(id), NodeKind::TwoToOne, r_max, mu);
  spec.priority = priority;
  return spec;
}

CarSection car(std::string edge, double x, double t, std::string destination, PolicyKind policy) {
  CarSection c;
  c.start_edge = std::move(edge);
  c.x = x;
  c.t = t;
  c.destination = std::move(destination);
  c.policy = policy;
  return c;
}

}  // namespace

ScenarioDoc linear_network(double h) {
  ScenarioDoc doc;
  doc.nodes = {source("1", 0.21), node("2", NodeKind::OneToOne, 0.3), node("3", NodeKind::OneToOne, 0.3),
               node("4", NodeKind::Sink)};
  doc.edges = {{"1", "1", "2", 1.0, {}}, {"2", "2", "3", 1.0, {}}, {"3", "3", "4", 1.0, {}}};
  doc.densities = {{"1", {{0.0, 0.3}}}, {"2", {{0.0, 0.5}}}, {"3", {{0.0, 0.7}}}};
  doc.buffers = {{"2", 0.1}, {"3", 0.0}};
  doc.run = {8.0, h, DemandMode::Standard, 1};
  doc.car = car("1", 0.0, 0.0, "4", PolicyKind::Shortest);
  doc.car->oracle = OracleKind::LinearNetwork;
  return doc;
}

ScenarioDoc single_road(int setting, double h) {
  ScenarioDoc doc;
  const std::vector<DensityPiece> jump{{0.0, 0.4}, {0.5, 0.2}};
  if (setting == 1) {
    doc.nodes = {source("1", 0.24), node("2", NodeKind::Sink)};
    doc.edges = {{"1", "1", "2", 2.0, {}}};
    doc.densities = {{"1", jump}};
    doc.car = car("1", 0.0, 0.0, "2", PolicyKind::Shortest);
  } else {
    doc.nodes = {source("1", 0.24), node("2", NodeKind::OneToOne), node("3", NodeKind::Sink)};
    doc.edges = {{"1", "1", "2", 1.0, {}}, {"2", "2", "3", 1.0, {}}};
    doc.densities = {{"1", jump}, {"2", {{0.0, 0.2}}}};
    doc.car = car("1", 0.0, 0.0, "3", PolicyKind::Shortest);
  }
  doc.run = {4.0, h, DemandMode::Standard, 1};
  doc.car->oracle = OracleKind::Rarefaction;
  return doc;
}

ScenarioDoc small_network(double departure, PolicyKind policy, double h) {
  ScenarioDoc doc;
  doc.nodes = {source("1", 0.2),
               diverge("2", 0.5, 0.6, 0.4),
               node("3", NodeKind::OneToOne, 0.5),
               diverge("4", 0.5, 0.4, 0.6),
               merge("5", 0.5),
               node("6", NodeKind::Sink),
               node("7", NodeKind::Sink)};
  doc.edges = {{"1", "1", "2", 1.0, {}}, {"2", "2", "3", 1.0, {}}, {"3", "2", "4", 1.0, {}},
               {"4", "3", "5", 1.0, {}}, {"5", "4", "5", 1.0, {}}, {"6", "4", "7", 1.0, {}},
               {"7", "5", "6", 1.0, {}}};
  // Every road starts on the free branch of the flow it carries while the
  // buffer at node 4 drains.
  const std::pair<const char*, double> flows[] = {{"1", 0.2},  {"2", 0.12}, {"3", 0.08}, {"4", 0.12},
                                                  {"5", 0.1},  {"6", 0.15}, {"7", 0.22}};
  for (const auto& [edge, q] : flows) doc.densities.push_back({edge, {{0.0, flux::free_flow_density(q)}}});
  doc.buffers = {{"4", 0.5}};
  doc.run = {15.0, h, DemandMode::Standard, 1};
  doc.car = car("1", 0.5, departure, "6", policy);
  return doc;
}

// Two mirrored halves around the axis S -> A ... M -> D. Each half has an
// inner row P -> I1 -> I2 -> I3 -> M and an outer row O0 .. O3 one unit
// further out that feeds the inner row through one-unit cross streets and
// ends at the exit merge Z in front of the sink K. D splits the axis traffic
// onto both exits. The inner route to D is 13 long, each detour over a cross
// street 15.
ScenarioDoc block_network(PolicyKind policy, double h) {
  constexpr double kCapacity = 0.3;
  ScenarioDoc doc;
  doc.nodes.push_back(source("S", flux::flux(0.3)));
  doc.nodes.push_back(diverge("A", kCapacity, 0.5, 0.5));
  for (const char* side : {"n", "s"}) {
    const std::string p(side);
    doc.nodes.push_back(diverge(p + "P", kCapacity, 0.5, 0.5));
    doc.nodes.push_back(node(p + "O0", NodeKind::OneToOne, kCapacity));
    doc.nodes.push_back(diverge(p + "O1", kCapacity, 0.5, 0.5));
    doc.nodes.push_back(diverge(p + "O2", kCapacity, 0.5, 0.5));
    doc.nodes.push_back(node(p + "O3", NodeKind::OneToOne, kCapacity));
    doc.nodes.push_back(merge(p + "I1", kCapacity));
    doc.nodes.push_back(merge(p + "I2", kCapacity));
    doc.nodes.push_back(node(p + "I3", NodeKind::OneToOne, kCapacity));
    doc.nodes.push_back(merge(p + "Z", kCapacity));
    doc.nodes.push_back(node(p + "K", NodeKind::Sink));
  }
  doc.nodes.push_back(merge("M", kCapacity));
  doc.nodes.push_back(diverge("D", kCapacity, 0.5, 0.5));

  auto edge = [&](std::string from, std::string to, double length) {
    doc.edges.push_back({from + "-" + to, from, to, length, {}});
  };
  edge("S", "A", 2.0);
  edge("A", "nP", 1.0);
  edge("A", "sP", 1.0);
  for (const char* side : {"n", "s"}) {
    const std::string p(side);
    edge(p + "P", p + "I1", 2.0);
    edge(p + "P", p + "O0", 1.0);
    edge(p + "O0", p + "O1", 2.0);
    edge(p + "O1", p + "O2", 2.0);
    edge(p + "O1", p + "I1", 1.0);
    edge(p + "O2", p + "O3", 2.0);
    edge(p + "O2", p + "I2", 1.0);
    edge(p + "O3", p + "Z", 2.0);
    edge(p + "I1", p + "I2", 2.0);
    edge(p + "I2", p + "I3", 2.0);
    edge(p + "I3", "M", 2.0);
    edge(p + "Z", p + "K", 1.0);
  }
  edge("M", "D", 2.0);
  edge("D", "nZ", 2.0);
  edge("D", "sZ", 2.0);
  for (const auto& e : doc.edges) doc.densities.push_back({e.id, {{0.0, 0.3}}});
  doc.run = {40.0, h, DemandMode::Standard, 1};
  doc.car = car("S-A", 0.0, 0.0, "D", policy);
  return doc;
}

ScenarioDoc merge_example(DemandMode mode) {
  ScenarioDoc doc;
  doc.nodes = {source("1", 0.24), source("2", 0.09),
               merge("3", 1.0, FixedPriority{0.5, 0.5}, 0.2), node("4", NodeKind::Sink)};
  doc.edges = {{"1", "1", "3", 1.0, {}}, {"2", "2", "3", 1.0, {}}, {"3", "3", "4", 1.0, {}}};
  doc.densities = {{"1", {{0.0, 0.4}}}, {"2", {{0.0, 0.1}}}, {"3", {{0.0, 0.5}}}};
  doc.run = {1.0, 0.1, mode, 1};
  return doc;
}

}  // namespace bufferlane::builtin
