#include "bufferlane/random_network.hpp"

#include <algorithm>
#include <string>

#include "bufferlane/flux.hpp"

namespace bufferlane {

namespace {

class Builder {
 public:
  Builder(std::mt19937_64& rng, const RandomScenarioOptions& options) : rng_(rng), options_(options) {}

  ScenarioDoc build() {
    std::size_t budget = std::max<std::size_t>(options_.max_nodes, 4);
    std::string tail = add_source();
    budget -= 1;
    while (true) {
      // Leave room for a fork onto two sinks.
      const std::size_t room = budget >= 3 ? budget - 3 : 0;
      const int stage = room == 0 ? -1 : pick(0, 3);
      if (stage == 0 && room >= 1) {
        const std::string v = add_node(NodeKind::OneToOne);
        add_edge(tail, v);
        tail = v;
        budget -= 1;
      } else if (stage == 1 && room >= 3) {
        const std::string d = add_node(NodeKind::OneToTwo);
        const std::string x = add_node(NodeKind::OneToOne);
        const std::string m = add_node(NodeKind::TwoToOne);
        add_edge(tail, d);
        if (pick(0, 1) == 0) {
          add_edge(d, x);
          add_edge(d, m);
        } else {
          add_edge(d, m);
          add_edge(d, x);
        }
        add_edge(x, m);
        tail = m;
        budget -= 3;
      } else if (stage == 2 && room >= 2) {
        const std::string s = add_source();
        const std::string m = add_node(NodeKind::TwoToOne);
        if (pick(0, 1) == 0) {
          add_edge(tail, m);
          add_edge(s, m);
        } else {
          add_edge(s, m);
          add_edge(tail, m);
        }
        tail = m;
        budget -= 2;
      } else if (stage == 3 || room == 0) {
        break;
      }
    }
    if (budget >= 3 && pick(0, 1) == 0) {
      const std::string f = add_node(NodeKind::OneToTwo);
      add_edge(tail, f);
      add_edge(f, add_node(NodeKind::Sink));
      add_edge(f, add_node(NodeKind::Sink));
    } else {
      add_edge(tail, add_node(NodeKind::Sink));
    }
    finish();
    return std::move(doc_);
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::string add_node(NodeKind kind) {
    JunctionSpec spec;
    spec.id = "v" + std::to_string(doc_.nodes.size());
    spec.kind = kind;
    if (kind != NodeKind::Source && kind != NodeKind::Sink) {
      spec.r_max = pick(0, 4) == 0 ? kUnbounded : uniform(0.05, 1.0);
    }
    spec.mu = uniform(0.05, 0.25);
    if (kind == NodeKind::OneToTwo) {
      const double a = uniform(0.1, 0.9);
      spec.alpha = {a, 1.0 - a};
    }
    if (kind == NodeKind::TwoToOne) {
      if (pick(0, 1) == 0) {
        spec.priority = DemandProportional{};
      } else {
        const double c = uniform(0.1, 0.9);
        spec.priority = FixedPriority{c, 1.0 - c};
      }
    }
    doc_.nodes.push_back(spec);
    return spec.id;
  }

  std::string add_source() {
    const std::string id = add_node(NodeKind::Source);
    JunctionSpec& spec = doc_.nodes.back();
    if (pick(0, 2) == 0) {
      spec.inflow = InflowProfile({{0.0, uniform(0.0, 0.3)}, {uniform(0.5, 2.0), uniform(0.0, 0.3)}});
    } else {
      spec.inflow = InflowProfile(uniform(0.0, 0.3));
    }
    return id;
  }

  void add_edge(const std::string& from, const std::string& to) {
    static constexpr double kLengths[] = {0.5, 1.0, 1.5, 2.0};
    EdgeDecl edge;
    edge.id = "e" + std::to_string(doc_.edges.size());
    edge.from = from;
    edge.to = to;
    edge.length = kLengths[pick(0, 3)];
    doc_.edges.push_back(edge);
  }

  void finish() {
    for (const auto& e : doc_.edges) {
      DensityDecl d{e.id, {{0.0, uniform(0.0, 1.0)}}};
      const int extra = pick(0, 2);
      double at = 0.0;
      for (int k = 0; k < extra; ++k) {
        at += uniform(0.05, e.length / 3.0);
        if (at >= e.length) break;
        d.pieces.push_back({at, uniform(0.0, 1.0)});
      }
      doc_.densities.push_back(std::move(d));
    }
    for (const auto& n : doc_.nodes) {
      if (n.kind == NodeKind::Sink || pick(0, 1) == 0) continue;
      const double cap = std::isfinite(n.r_max) ? n.r_max : 1.0;
      doc_.buffers.push_back({n.id, pick(0, 3) == 0 ? cap : uniform(0.0, cap)});
    }
    doc_.run.horizon = uniform(options_.horizon_min, options_.horizon_max);
    doc_.run.h = options_.h;
  }

  std::mt19937_64& rng_;
  RandomScenarioOptions options_;
  ScenarioDoc doc_;
};

}  // namespace

ScenarioDoc random_scenario(std::mt19937_64& rng, const RandomScenarioOptions& options) {
  return Builder(rng, options).build();
}

}  // namespace bufferlane
