#include <doctest.h>

#include <json.hpp>
#include <random>
#include <sstream>
#include <algorithm>

#include "bufferlane/builtin.hpp"
#include "bufferlane/error.hpp"
#include "bufferlane/manifest.hpp"
#include "bufferlane/random_network.hpp"
#include "bufferlane/run.hpp"
#include "bufferlane/scenario.hpp"

using namespace bufferlane;

namespace {

std::string path_of(const char* name) { return std::string(BUFFERLANE_SCENARIO_DIR) + "/" + name; }

const char* kMinimal = R"([network]
node a kind=source inflow=0.1
node b kind=sink
edge 1 from=a to=b length=1

[run]
T = 1
h = 0.1
)";

Error parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("scenario was accepted");
  return Error(ErrorKind::InvalidParameter, "");
}

std::size_t lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("bundled scenarios are the built-in setups") {
  CHECK(load_scenario(path_of("linear.scn")) == builtin::linear_network());
  CHECK(load_scenario(path_of("setting1.scn")) == builtin::single_road(1));
  CHECK(load_scenario(path_of("setting2.scn")) == builtin::single_road(2));
  CHECK(load_scenario(path_of("small_network.scn")) == builtin::small_network());
  CHECK(load_scenario(path_of("block.scn")) == builtin::block_network());
  CHECK(load_scenario(path_of("merge_example.scn")) == builtin::merge_example(DemandMode::Original));
}

TEST_CASE("bundled linear scenario describes three unit roads") {
  const ScenarioDoc doc = load_scenario(path_of("linear.scn"));
  const RoadNetwork net = build_network(doc);
  for (const auto& edge : net.edges()) CHECK(edge.length == 1.0);
  CHECK(net.node(net.node_index("2")).r_max == 0.3);
  CHECK(net.node(net.node_index("3")).mu == 0.25);
  const SimState state = build_initial_state(doc, net);
  CHECK(state.buffer[net.node_index("2")] == 0.1);
  CHECK(state.buffer[net.node_index("3")] == 0.0);
}

TEST_CASE("bundled block network uses equal rates and demand priorities") {
  const ScenarioDoc doc = load_scenario(path_of("block.scn"));
  for (const auto& node : doc.nodes) {
    if (node.kind == NodeKind::OneToTwo) CHECK(node.alpha == std::array<double, 2>{0.5, 0.5});
    if (node.kind == NodeKind::TwoToOne) CHECK(std::holds_alternative<DemandProportional>(node.priority));
    if (node.kind != NodeKind::Sink) CHECK(node.mu == 0.25);
  }
  for (const auto& d : doc.densities) CHECK(d.pieces == std::vector<DensityPiece>{{0.0, 0.3}});
}

TEST_CASE("serialization round trip") {
  for (const ScenarioDoc& doc : {builtin::linear_network(), builtin::single_road(2), builtin::small_network(5.0),
                                 builtin::block_network(PolicyKind::Online), builtin::merge_example()}) {
    const std::string text = serialize_scenario(doc);
    CHECK(parse_scenario(text) == doc);
    CHECK(serialize_scenario(parse_scenario(text)) == text);
  }
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100; ++k) {
    const ScenarioDoc doc = random_scenario(rng);
    CHECK(parse_scenario(serialize_scenario(doc)) == doc);
  }
}

TEST_CASE("number formatting round trips") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(8.0) == "8");
  CHECK(format_number(kUnbounded) == "inf");
  const double awkward = 1.0 / 3.0;
  CHECK(std::stod(format_number(awkward)) == awkward);
}

TEST_CASE("optional parts of the format") {
  const ScenarioDoc doc = parse_scenario(std::string(kMinimal) +
                                         "[initial]\n"
                                         "density 1 0.4@0 congested:0.16@0.5  # comment\n");
  REQUIRE(doc.densities.size() == 1);
  CHECK(doc.densities[0].pieces[0].value == 0.4);
  CHECK(doc.densities[0].pieces[1].start == 0.5);
  CHECK(doc.densities[0].pieces[1].value == doctest::Approx(0.8));
  CHECK_FALSE(doc.car);
  CHECK(doc.run.log_stride == 1);
  CHECK(doc.run.demand_mode == DemandMode::Standard);
  CHECK_FALSE(doc.edges[0].cells);
  CHECK(build_network(doc).edge(0).cells == 10);

  const ScenarioDoc stepped = parse_scenario(
      "[network]\nnode a kind=source inflow=0:0.1,2:0.2\nnode b kind=sink\nedge 1 from=a to=b length=2 cells=5\n"
      "[run]\nT=3\nh=0.5\n");
  CHECK(stepped.nodes[0].inflow.at(2.5) == 0.2);
  CHECK(build_network(stepped).edge(0).cells == 5);
}

TEST_CASE("syntax errors carry line and column") {
  struct Case {
    std::string text;
    std::string where;
  };
  const Case cases[] = {
      {"", "1:1:"},
      {"[nowhere]\n", "1:1:"},
      {"node a kind=source\n", "1:1:"},
      {"[network]\nnode a kind=wheel\n", "2:13:"},
      {"[network]\nnode a kind=source inflow=fast\n", "2:27:"},
      {"[network]\nnode a kind=source\n  edge 1 from=a to=b\n", "3:3:"},
      {"[network]\nnode a kind=sink mu=1 mu=2\n", "2:23:"},
      {std::string(kMinimal) + "[run]\n", "9:1:"},
      {std::string(kMinimal) + "[car]\nspeed = 3\n", "10:1:"},
      {std::string(kMinimal) + "[car]\nx =\n", "10:4:"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.text);
    const Error e = parse_error(c.text);
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.detail().rfind(c.where, 0) == 0);
  }
}

TEST_CASE("semantic errors") {
  const std::string base = kMinimal;
  const std::string cases[] = {
      "[network]\nnode a kind=source\nnode b kind=sink\nedge 1 from=a to=b length=1\n[run]\nh = 0.1\n",
      base + "[initial]\ndensity 9 0.3\n",
      base + "[initial]\ndensity 1 1.5\n",
      base + "[initial]\nbuffer b 0.1\n",
      base + "[car]\nstart_edge = 1\ndestination = zz\n",
      base + "[car]\nstart_edge = 1\n",
      "[network]\nnode a kind=source\nnode b kind=sink\nedge 1 from=a to=b length=-1\n[run]\nT=1\nh=0.1\n",
  };
  for (const std::string& text : cases) {
    CAPTURE(text);
    CHECK(parse_error(text).kind() == ErrorKind::SemanticError);
  }
}

TEST_CASE("file errors name the file") {
  try {
    load_scenario(path_of("does_not_exist.scn"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("does_not_exist.scn") != std::string::npos);
  }
}

TEST_CASE("result files") {
  ScenarioDoc doc = builtin::linear_network();
  const RunResult result = run_scenario(doc);
  const SimLog& log = result.log;

  const std::string density = density_csv(log, 1);
  CHECK(density.rfind("t,edge_id,cell_index,rho\n", 0) == 0);
  CHECK(lines(density) == 1 + 161 * 30);
  const std::string strided = density_csv(log, 7);
  CHECK(lines(strided) == 1 + (160 / 7 + 2) * 30);

  const std::string buffers = buffer_csv(log, 1);
  CHECK(buffers.rfind("t,node_id,r\n", 0) == 0);
  CHECK(buffers.find("\n0,2,0.1\n") != std::string::npos);
  CHECK(lines(buffers) == 1 + 161 * 4);

  const std::string trajectory = trajectory_csv(log, *result.car);
  CHECK(trajectory.rfind("t,edge_id,x_on_edge,cumulative_distance,status\n", 0) == 0);
  CHECK(trajectory.find(",waiting\n") != std::string::npos);

  const std::string route = route_csv(log, *result.car);
  std::istringstream rows(route);
  std::string row;
  std::vector<std::string> items;
  while (std::getline(rows, row)) items.push_back(row.substr(0, row.find(',')));
  CHECK(items == std::vector<std::string>{"item", "edge", "wait", "edge", "wait", "edge", "arrival"});
}

TEST_CASE("manifest") {
  const ScenarioDoc doc = builtin::merge_example(DemandMode::Original);
  const RunResult result = run_scenario(doc);
  const auto m = nlohmann::json::parse(manifest_json(doc, "merge.scn", result.log, nullptr, std::nullopt));
  CHECK(m["tool"] == "bufferlane");
  CHECK(m["version"] == kVersion);
  CHECK(parse_scenario(m["scenario"].get<std::string>()) == doc);
  CHECK(m["discretization"]["tau"].get<double>() == result.log.grid().tau);
  CHECK(m["discretization"]["steps"].get<std::size_t>() == result.log.steps());
  CHECK(m["negativity_events"].size() == result.log.negativity_events().size());
  CHECK_FALSE(m.contains("car"));

  const ScenarioDoc linear = builtin::linear_network();
  const RunResult lr = run_scenario(linear);
  const auto lm = nlohmann::json::parse(manifest_json(linear, "linear.scn", lr.log, &*lr.car, lr.oracle_error));
  CHECK(lm["car"]["status"] == "arrived");
  CHECK(lm["car"]["path"] == nlohmann::json::array({"1", "2", "3"}));
  CHECK(lm["car"]["path_length"].get<double>() == 3.0);
  CHECK(lm["car"]["oracle_error"].get<double>() <= 1e-12);
}
