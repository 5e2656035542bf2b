#include "bufferlane/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bufferlane/error.hpp"
#include "bufferlane/flux.hpp"

namespace bufferlane {

std::string_view to_string(TrackerKind kind) { return kind == TrackerKind::Naive ? "naive" : "complex"; }

TrackerKind parse_tracker(std::string_view text) {
  if (text == "naive") return TrackerKind::Naive;
  if (text == "complex") return TrackerKind::Complex;
  throw Error(ErrorKind::InvalidParameter, "unknown tracker '" + std::string(text) + "'");
}

std::string_view to_string(DemandMode mode) { return mode == DemandMode::Original ? "original" : "standard"; }

DemandMode parse_demand_mode(std::string_view text) {
  if (text == "standard") return DemandMode::Standard;
  if (text == "original") return DemandMode::Original;
  throw Error(ErrorKind::InvalidParameter, "unknown demand mode '" + std::string(text) + "'");
}

std::string_view to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::None: return "none";
    case OracleKind::LinearNetwork: return "linear";
    case OracleKind::Rarefaction: return "rarefaction";
  }
  return "none";
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 1;
};

[[noreturn]] void syntax(std::size_t line, std::size_t column, const std::string& message) {
  throw Error(ErrorKind::SyntaxError, std::to_string(line) + ":" + std::to_string(column) + ": " + message);
}

[[noreturn]] void semantic(const std::string& message) { throw Error(ErrorKind::SemanticError, message); }

std::vector<Token> split(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(begin, i - begin), begin + 1});
  }
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ScenarioDoc parse() {
    std::size_t pos = 0;
    bool any = false;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      ++line_;
      std::string_view raw = text_.substr(pos, end - pos);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      auto tokens = split(raw);
      if (!tokens.empty()) {
        any = true;
        line(raw, tokens);
      }
      pos = end + 1;
    }
    if (!any) syntax(1, 1, "empty scenario");
    if (!seen_.count("network")) syntax(line_, 1, "missing [network] section");
    if (!run_keys_.count("T")) semantic("[run] needs T");
    if (!run_keys_.count("h")) semantic("[run] needs h");
    if (doc_.car) {
      for (const char* key : {"start_edge", "destination"}) {
        if (!car_keys_.count(key)) semantic(std::string("[car] needs ") + key);
      }
    }
    return std::move(doc_);
  }

 private:
  void line(std::string_view raw, const std::vector<Token>& tokens) {
    if (tokens.front().text.front() == '[') {
      const Token& t = tokens.front();
      if (tokens.size() != 1 || t.text.back() != ']') syntax(line_, t.column, "malformed section header");
      section_ = std::string(t.text.substr(1, t.text.size() - 2));
      if (section_ != "network" && section_ != "initial" && section_ != "run" && section_ != "car") {
        syntax(line_, t.column, "unknown section [" + section_ + "]");
      }
      if (!seen_.insert(section_).second) syntax(line_, t.column, "duplicate section [" + section_ + "]");
      if (section_ == "car") doc_.car.emplace();
      return;
    }
    if (section_.empty()) syntax(line_, tokens.front().column, "content before the first section");
    if (section_ == "network") return network_line(tokens);
    if (section_ == "initial") return initial_line(tokens);
    assignment(raw);
  }

  double number(const Token& t, std::string_view text) const {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+') ++first;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || std::isnan(value)) {
      syntax(line_, t.column + static_cast<std::size_t>(text.data() - t.text.data()),
             "expected a number, found '" + std::string(text) + "'");
    }
    return value;
  }

  double number(const Token& t) const { return number(t, t.text); }

  std::pair<double, double> pair(const Token& t, std::string_view text, char sep) const {
    const auto cut = text.find(sep);
    if (cut == std::string_view::npos) {
      syntax(line_, t.column, std::string("expected two numbers separated by '") + sep + "'");
    }
    return {number(t, text.substr(0, cut)), number(t, text.substr(cut + 1))};
  }

  static NodeKind node_kind(std::string_view text, std::size_t line, std::size_t column) {
    for (auto k : {NodeKind::Source, NodeKind::Sink, NodeKind::OneToOne, NodeKind::OneToTwo, NodeKind::TwoToOne}) {
      if (text == to_string(k)) return k;
    }
    syntax(line, column, "unknown node kind '" + std::string(text) + "'");
  }

  void network_line(const std::vector<Token>& tokens) {
    const Token& head = tokens.front();
    if (head.text != "node" && head.text != "edge") {
      syntax(line_, head.column, "expected 'node' or 'edge', found '" + std::string(head.text) + "'");
    }
    if (tokens.size() < 2 || tokens[1].text.find('=') != std::string_view::npos) {
      syntax(line_, head.column, std::string(head.text) + " needs an id");
    }
    std::vector<std::pair<Token, std::string_view>> attrs;
    std::set<std::string_view> keys;
    for (std::size_t k = 2; k < tokens.size(); ++k) {
      const auto eq = tokens[k].text.find('=');
      if (eq == std::string_view::npos || eq == 0) syntax(line_, tokens[k].column, "expected key=value");
      Token key{tokens[k].text.substr(0, eq), tokens[k].column};
      if (!keys.insert(key.text).second) syntax(line_, key.column, "duplicate key '" + std::string(key.text) + "'");
      attrs.emplace_back(key, tokens[k].text.substr(eq + 1));
    }
    if (head.text == "node") {
      node_line(std::string(tokens[1].text), head, attrs, tokens);
    } else {
      edge_line(std::string(tokens[1].text), head, attrs, tokens);
    }
  }

  template <class Attrs>
  void node_line(std::string id, const Token& head, const Attrs& attrs, const std::vector<Token>& tokens) {
    JunctionSpec spec;
    spec.id = std::move(id);
    bool has_kind = false;
    for (const auto& [key, value] : attrs) {
      if (key.text == "kind") {
        spec.kind = node_kind(value, line_, key.column + key.text.size() + 1);
        has_kind = true;
      }
    }
    if (!has_kind) syntax(line_, head.column, "node needs kind=");
    for (const auto& [key, value] : attrs) {
      const Token full = find_token(tokens, key);
      if (key.text == "kind") continue;
      if (key.text == "rmax") {
        spec.r_max = number(full, value);
      } else if (key.text == "mu") {
        spec.mu = number(full, value);
      } else if (key.text == "alpha") {
        if (spec.kind != NodeKind::OneToTwo) syntax(line_, key.column, "alpha only applies to one_to_two");
        auto [a, b] = pair(full, value, ',');
        spec.alpha = {a, b};
      } else if (key.text == "priority") {
        if (spec.kind != NodeKind::TwoToOne) syntax(line_, key.column, "priority only applies to two_to_one");
        if (value == "demand") {
          spec.priority = DemandProportional{};
        } else {
          auto [a, b] = pair(full, value, ',');
          spec.priority = FixedPriority{a, b};
        }
      } else if (key.text == "inflow") {
        if (spec.kind != NodeKind::Source) syntax(line_, key.column, "inflow only applies to sources");
        spec.inflow = inflow(full, value);
      } else {
        syntax(line_, key.column, "unknown node key '" + std::string(key.text) + "'");
      }
    }
    doc_.nodes.push_back(std::move(spec));
  }

  InflowProfile inflow(const Token& t, std::string_view text) const {
    if (text.find(':') == std::string_view::npos) return InflowProfile(number(t, text));
    std::vector<InflowProfile::Piece> pieces;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      auto [start, value] = pair(t, text.substr(pos, comma - pos), ':');
      if (!pieces.empty() && !(start > pieces.back().start)) syntax(line_, t.column, "inflow times must increase");
      pieces.push_back({start, value});
      pos = comma + 1;
    }
    return InflowProfile(std::move(pieces));
  }

  template <class Attrs>
  void edge_line(std::string id, const Token& head, const Attrs& attrs, const std::vector<Token>& tokens) {
    EdgeDecl edge;
    edge.id = std::move(id);
    bool from = false, to = false, length = false;
    for (const auto& [key, value] : attrs) {
      const Token full = find_token(tokens, key);
      if (key.text == "from") {
        edge.from = std::string(value);
        from = true;
      } else if (key.text == "to") {
        edge.to = std::string(value);
        to = true;
      } else if (key.text == "length") {
        edge.length = number(full, value);
        length = true;
      } else if (key.text == "cells") {
        const double cells = number(full, value);
        if (cells != std::floor(cells) || cells < 1 || cells > 1e9) {
          syntax(line_, key.column, "cells must be a positive integer");
        }
        edge.cells = static_cast<int>(cells);
      } else {
        syntax(line_, key.column, "unknown edge key '" + std::string(key.text) + "'");
      }
    }
    if (!from || !to || !length) syntax(line_, head.column, "edge needs from=, to= and length=");
    doc_.edges.push_back(std::move(edge));
  }

  static Token find_token(const std::vector<Token>& tokens, const Token& key) {
    for (const auto& t : tokens) {
      if (t.column == key.column) return t;
    }
    return key;
  }

  double density_value(const Token& t, std::string_view text) const {
    auto branch = [&](std::string_view prefix, double (*fn)(double)) -> std::optional<double> {
      if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
      const double q = number(t, text.substr(prefix.size()));
      if (!(q >= 0.0 && q <= flux::kCapacity)) syntax(line_, t.column, "flow must lie in [0, 0.25]");
      return fn(q);
    };
    if (auto v = branch("free:", flux::free_flow_density)) return *v;
    if (auto v = branch("congested:", flux::congested_density)) return *v;
    return number(t, text);
  }

  void initial_line(const std::vector<Token>& tokens) {
    const Token& head = tokens.front();
    if (head.text == "density") {
      if (tokens.size() < 3) syntax(line_, head.column, "density needs an edge and at least one value");
      DensityDecl decl;
      decl.edge = std::string(tokens[1].text);
      for (std::size_t k = 2; k < tokens.size(); ++k) {
        const Token& t = tokens[k];
        const auto at = t.text.find('@');
        DensityPiece piece;
        if (at == std::string_view::npos) {
          if (tokens.size() != 3) syntax(line_, t.column, "pieces need value@position");
          piece.value = density_value(t, t.text);
        } else {
          piece.value = density_value(t, t.text.substr(0, at));
          piece.start = number(t, t.text.substr(at + 1));
        }
        decl.pieces.push_back(piece);
      }
      doc_.densities.push_back(std::move(decl));
    } else if (head.text == "buffer") {
      if (tokens.size() != 3) syntax(line_, head.column, "expected: buffer <node> <load>");
      doc_.buffers.push_back({std::string(tokens[1].text), number(tokens[2])});
    } else {
      syntax(line_, head.column, "expected 'density' or 'buffer', found '" + std::string(head.text) + "'");
    }
  }

  void assignment(std::string_view raw) {
    const auto eq = raw.find('=');
    const auto first = raw.find_first_not_of(" \t");
    if (eq == std::string_view::npos) syntax(line_, first + 1, "expected key = value");
    auto trim = [](std::string_view s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string_view::npos) return std::string_view{};
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    const std::string_view key = trim(raw.substr(0, eq));
    const std::string_view value = trim(raw.substr(eq + 1));
    const std::size_t vcol = value.empty() ? eq + 2 : static_cast<std::size_t>(value.data() - raw.data()) + 1;
    const Token vt{value, vcol};
    if (key.empty() || key.find_first_of(" \t") != std::string_view::npos) syntax(line_, first + 1, "malformed key");
    if (value.empty()) syntax(line_, vcol, "missing value");
    auto& seen = section_ == "run" ? run_keys_ : car_keys_;
    if (!seen.insert(std::string(key)).second) syntax(line_, first + 1, "duplicate key '" + std::string(key) + "'");
    auto choice = [&](auto parse) {
      try {
        return parse(value);
      } catch (const Error& e) {
        syntax(line_, vcol, e.what());
      }
    };

    if (section_ == "run") {
      RunSection& run = doc_.run;
      if (key == "T") {
        run.horizon = number(vt);
      } else if (key == "h") {
        run.h = number(vt);
      } else if (key == "demand_mode") {
        run.demand_mode = choice(parse_demand_mode);
      } else if (key == "log_stride") {
        const double s = number(vt);
        if (s != std::floor(s) || s < 1 || s > 1e12) syntax(line_, vcol, "log_stride must be a positive integer");
        run.log_stride = static_cast<std::size_t>(s);
      } else {
        syntax(line_, first + 1, "unknown run key '" + std::string(key) + "'");
      }
      return;
    }
    CarSection& car = *doc_.car;
    if (key == "start_edge") {
      car.start_edge = std::string(value);
    } else if (key == "x") {
      car.x = number(vt);
    } else if (key == "t") {
      car.t = number(vt);
    } else if (key == "destination") {
      car.destination = std::string(value);
    } else if (key == "tracker") {
      car.tracker = choice(parse_tracker);
    } else if (key == "policy") {
      car.policy = choice(parse_policy);
    } else if (key == "w_rho") {
      car.w_rho = number(vt);
    } else if (key == "w_r") {
      car.w_r = number(vt);
    } else if (key == "oracle") {
      if (value == "linear") {
        car.oracle = OracleKind::LinearNetwork;
      } else if (value == "rarefaction") {
        car.oracle = OracleKind::Rarefaction;
      } else if (value == "none") {
        car.oracle = OracleKind::None;
      } else {
        syntax(line_, vcol, "unknown oracle '" + std::string(value) + "'");
      }
    } else {
      syntax(line_, first + 1, "unknown car key '" + std::string(key) + "'");
    }
  }

  std::string_view text_;
  std::size_t line_ = 0;
  std::string section_;
  std::set<std::string> seen_;
  std::set<std::string> run_keys_;
  std::set<std::string> car_keys_;
  ScenarioDoc doc_;
};

void check_semantics(const ScenarioDoc& doc) {
  const RoadNetwork net = build_network(doc);
  const RunSection& run = doc.run;
  if (!(run.horizon > 0.0) || !std::isfinite(run.horizon)) semantic("T must be positive");
  if (!(run.h > 0.0) || !std::isfinite(run.h)) semantic("h must be positive");

  std::set<std::string> seen;
  for (const auto& d : doc.densities) {
    if (!net.has_edge(d.edge)) semantic("density for unknown edge '" + d.edge + "'");
    if (!seen.insert(d.edge).second) semantic("duplicate density for edge '" + d.edge + "'");
    const double length = net.edge(net.edge_index(d.edge)).length;
    for (std::size_t k = 0; k < d.pieces.size(); ++k) {
      const auto& p = d.pieces[k];
      if (!(p.value >= 0.0 && p.value <= 1.0)) semantic("density on edge '" + d.edge + "' outside [0, 1]");
      if (!(p.start >= 0.0 && p.start < length)) semantic("breakpoint on edge '" + d.edge + "' outside the road");
      if (k > 0 && !(p.start > d.pieces[k - 1].start)) {
        semantic("breakpoints on edge '" + d.edge + "' must increase");
      }
    }
  }
  seen.clear();
  for (const auto& b : doc.buffers) {
    if (!net.has_node(b.node)) semantic("buffer for unknown node '" + b.node + "'");
    if (!seen.insert(b.node).second) semantic("duplicate buffer for node '" + b.node + "'");
    const JunctionSpec& spec = net.node(net.node_index(b.node));
    if (spec.kind == NodeKind::Sink) semantic("sink '" + b.node + "' has no buffer");
    if (!(b.load >= 0.0 && b.load <= spec.r_max)) semantic("load of node '" + b.node + "' outside [0, rmax]");
  }
  if (doc.car) {
    const CarSection& car = *doc.car;
    if (!net.has_edge(car.start_edge)) semantic("car starts on unknown edge '" + car.start_edge + "'");
    if (!net.has_node(car.destination)) semantic("unknown destination '" + car.destination + "'");
    const double length = net.edge(net.edge_index(car.start_edge)).length;
    if (!(car.x >= 0.0 && car.x <= length)) semantic("car position outside its road");
    if (!(car.t >= 0.0 && car.t <= run.horizon)) semantic("car start time outside [0, T]");
    RoutePolicy policy{car.policy, car.w_rho, car.w_r};
    try {
      policy.validate();
    } catch (const Error& e) {
      semantic(e.what());
    }
  }
}

}  // namespace

ScenarioDoc parse_scenario(std::string_view text) {
  ScenarioDoc doc = Parser(text).parse();
  check_semantics(doc);
  return doc;
}

ScenarioDoc load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SyntaxError) throw Error(ErrorKind::SyntaxError, path + ":" + e.detail());
    throw;
  }
}

std::string serialize_scenario(const ScenarioDoc& doc) {
  std::ostringstream out;
  auto num = format_number;
  out << "[network]\n";
  for (const auto& n : doc.nodes) {
    out << "node " << n.id << " kind=" << to_string(n.kind) << " rmax=" << num(n.r_max) << " mu=" << num(n.mu);
    if (n.kind == NodeKind::OneToTwo) out << " alpha=" << num(n.alpha[0]) << "," << num(n.alpha[1]);
    if (n.kind == NodeKind::TwoToOne) {
      if (const auto* f = std::get_if<FixedPriority>(&n.priority)) {
        out << " priority=" << num(f->first) << "," << num(f->second);
      } else {
        out << " priority=demand";
      }
    }
    const auto& pieces = n.inflow.pieces();
    if (!pieces.empty()) {
      out << " inflow=";
      if (pieces.size() == 1 && pieces.front().start == 0.0) {
        out << num(pieces.front().value);
      } else {
        for (std::size_t k = 0; k < pieces.size(); ++k) {
          out << (k ? "," : "") << num(pieces[k].start) << ":" << num(pieces[k].value);
        }
      }
    }
    out << "\n";
  }
  for (const auto& e : doc.edges) {
    out << "edge " << e.id << " from=" << e.from << " to=" << e.to << " length=" << num(e.length);
    if (e.cells) out << " cells=" << *e.cells;
    out << "\n";
  }
  if (!doc.densities.empty() || !doc.buffers.empty()) {
    out << "\n[initial]\n";
    for (const auto& d : doc.densities) {
      out << "density " << d.edge;
      if (d.pieces.size() == 1 && d.pieces.front().start == 0.0) {
        out << " " << num(d.pieces.front().value);
      } else {
        for (const auto& p : d.pieces) out << " " << num(p.value) << "@" << num(p.start);
      }
      out << "\n";
    }
    for (const auto& b : doc.buffers) out << "buffer " << b.node << " " << num(b.load) << "\n";
  }
  out << "\n[run]\n";
  out << "T = " << num(doc.run.horizon) << "\n";
  out << "h = " << num(doc.run.h) << "\n";
  out << "demand_mode = " << to_string(doc.run.demand_mode) << "\n";
  out << "log_stride = " << doc.run.log_stride << "\n";
  if (doc.car) {
    const CarSection& c = *doc.car;
    out << "\n[car]\n";
    out << "start_edge = " << c.start_edge << "\n";
    out << "x = " << num(c.x) << "\n";
    out << "t = " << num(c.t) << "\n";
    out << "destination = " << c.destination << "\n";
    out << "tracker = " << to_string(c.tracker) << "\n";
    out << "policy = " << to_string(c.policy) << "\n";
    out << "w_rho = " << num(c.w_rho) << "\n";
    out << "w_r = " << num(c.w_r) << "\n";
    if (c.oracle != OracleKind::None) out << "oracle = " << to_string(c.oracle) << "\n";
  }
  return out.str();
}

RoadNetwork build_network(const ScenarioDoc& doc) {
  std::vector<Edge> edges;
  edges.reserve(doc.edges.size());
  for (const auto& d : doc.edges) {
    Edge e;
    e.id = d.id;
    e.from = d.from;
    e.to = d.to;
    e.length = d.length;
    e.cells = d.cells ? *d.cells : (d.length > 0.0 ? cells_for(d.length, doc.run.h) : 2);
    edges.push_back(std::move(e));
  }
  try {
    return RoadNetwork::validate(doc.nodes, std::move(edges));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SemanticError) throw;
    throw Error(ErrorKind::SemanticError, std::string(to_string(e.kind())) + ": " + e.detail());
  }
}

SimState build_initial_state(const ScenarioDoc& doc, const RoadNetwork& network) {
  SimState state;
  state.density.resize(network.edge_count());
  for (EdgeIndex e = 0; e < network.edge_count(); ++e) {
    state.density[e].assign(static_cast<std::size_t>(network.edge(e).cells), 0.0);
  }
  for (const auto& d : doc.densities) {
    const EdgeIndex e = network.edge_index(d.edge);
    state.density[e] = project_density(network.edge(e), d.pieces);
  }
  state.buffer.assign(network.node_count(), 0.0);
  for (const auto& b : doc.buffers) state.buffer[network.node_index(b.node)] = b.load;
  return state;
}

TimeGrid build_time_grid(const ScenarioDoc& doc, const RoadNetwork& network) {
  return fit_time_grid(cfl_timestep(network), doc.run.horizon);
}

CarStart build_car_start(const ScenarioDoc& doc, const RoadNetwork& network) {
  if (!doc.car) throw Error(ErrorKind::InvalidParameter, "scenario has no [car] section");
  const CarSection& c = *doc.car;
  return {network.edge_index(c.start_edge), c.x, c.t, network.node_index(c.destination)};
}

namespace {

template <class Row>
std::string snapshots_csv(const SimLog& log, std::size_t stride, const char* header, Row row) {
  if (stride == 0) throw Error(ErrorKind::InvalidParameter, "log stride must be positive");
  std::string out = header;
  for (std::size_t n = 0; n <= log.steps(); ++n) {
    if (n % stride != 0 && n != log.steps()) continue;
    row(out, n, format_number(log.grid().time(n)));
  }
  return out;
}

}  // namespace

std::string density_csv(const SimLog& log, std::size_t stride) {
  const RoadNetwork& net = log.network();
  return snapshots_csv(log, stride, "t,edge_id,cell_index,rho\n", [&](std::string& out, std::size_t n,
                                                                        const std::string& t) {
    for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
      const auto cells = log.density(e, n);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out += t + "," + net.edge(e).id + "," + std::to_string(i) + "," + format_number(cells[i]) + "\n";
      }
    }
  });
}

std::string buffer_csv(const SimLog& log, std::size_t stride) {
  const RoadNetwork& net = log.network();
  return snapshots_csv(log, stride, "t,node_id,r\n", [&](std::string& out, std::size_t n, const std::string& t) {
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
      out += t + "," + net.node(v).id + "," + format_number(log.buffer(v, n)) + "\n";
    }
  });
}

std::string trajectory_csv(const SimLog& log, const CarLog& car) {
  const RoadNetwork& net = log.network();
  std::string out = "t,edge_id,x_on_edge,cumulative_distance,status\n";
  for (const auto& s : car.trajectory) {
    out += format_number(s.time) + "," + net.edge(s.edge).id + "," + format_number(s.x) + "," +
           format_number(s.distance) + "," + to_string(s.status) + "\n";
  }
  return out;
}

std::string route_csv(const SimLog& log, const CarLog& car) {
  const RoadNetwork& net = log.network();
  const double tau = log.grid().tau;
  std::string out = "item,id,t_start,t_end,duration\n";
  for (std::size_t k = 0; k < car.legs.size(); ++k) {
    const Leg& leg = car.legs[k];
    out += "edge," + net.edge(leg.edge).id + "," + format_number(leg.entry.time(tau)) + "," +
           format_number(leg.exit.time(tau)) + "," + format_number(leg.travel_time) + "\n";
    if (k < car.stops.size()) {
      const Stop& stop = car.stops[k];
      out += "wait," + net.node(stop.node).id + "," + format_number(stop.arrival.time(tau)) + "," +
             format_number(stop.departure.time(tau)) + "," + format_number(stop.wait) + "\n";
    }
  }
  if (car.arrival) {
    out += "arrival," + net.node(net.head(car.path.back())).id + "," + format_number(car.departure) + "," +
           format_number(*car.arrival) + "," + format_number(*car.arrival - car.departure) + "\n";
  }
  return out;
}

}  // namespace bufferlane
