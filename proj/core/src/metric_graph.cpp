#include "graphconfig/metric_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "graphconfig/errors.hpp"

namespace graphconfig {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

MetricGraph::MetricGraph(const std::vector<EdgeSpec>& edges) {
  if (edges.empty()) throw InputError("graph has no edges");

  std::map<std::string, std::size_t, std::less<>> index;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.try_emplace(name, nodes_.size());
    if (inserted) nodes_.push_back(name);
    return it->second;
  };

  std::map<std::string, int, std::less<>> loop_counter;
  for (const auto& spec : edges) {
    if (spec.length <= 0) {
      throw InputError("edge " + spec.a + " " + spec.b + " has non-positive length " +
                       to_string(spec.length));
    }
    const std::size_t a = intern(spec.a);
    const std::size_t b = intern(spec.b);
    if (a != b) {
      edges_.push_back({a, b, spec.length});
      continue;
    }
    // Loop: split at its midpoint through a synthetic node.
    std::string mid;
    do {
      mid = spec.a + "~" + std::to_string(loop_counter[spec.a]++);
    } while (index.count(mid) != 0);
    const std::size_t m = intern(mid);
    const Rational half = spec.length / 2;
    edges_.push_back({a, m, half});
    edges_.push_back({m, a, half});
  }

  std::vector<std::size_t> parent(nodes_.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : edges_) parent[find_root(parent, e.a)] = find_root(parent, e.b);
  const std::size_t root = find_root(parent, 0);
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (find_root(parent, v) != root) throw InputError("graph is disconnected");
  }
}

std::size_t MetricGraph::node_index(std::string_view name) const {
  const auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) throw InputError("unknown node '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

Rational MetricGraph::shortest_edge_length() const {
  Rational best = edges_.front().length;
  for (const auto& e : edges_) best = std::min(best, e.length);
  return best;
}

MetricGraph parse_graph(std::string_view text) {
  std::vector<MetricGraph::EdgeSpec> specs;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, len, extra;
    if (!(fields >> a >> b >> len) || (fields >> extra)) {
      throw InputError("line " + std::to_string(line_no) + ": expected '<node-a> <node-b> <length>'");
    }
    Rational length;
    try {
      length = parse_rational(len);
    } catch (const std::invalid_argument& err) {
      throw InputError("line " + std::to_string(line_no) + ": " + err.what());
    }
    specs.push_back({a, b, length});
  }
  return MetricGraph(specs);
}

std::string serialize_graph(const MetricGraph& graph) {
  std::ostringstream out;
  for (const auto& e : graph.edges()) {
    out << graph.nodes()[e.a] << ' ' << graph.nodes()[e.b] << ' ' << to_string(e.length) << '\n';
  }
  return out.str();
}

DistanceMatrix node_distances(const MetricGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::optional<Rational>> dist(n * n);
  for (std::size_t v = 0; v < n; ++v) dist[v * n + v] = Rational(0);
  for (const auto& e : graph.edges()) {
    for (auto [u, v] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
      auto& slot = dist[u * n + v];
      if (!slot || e.length < *slot) slot = e.length;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!dist[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!dist[k * n + j]) continue;
        Rational via = *dist[i * n + k] + *dist[k * n + j];
        auto& slot = dist[i * n + j];
        if (!slot || via < *slot) slot = std::move(via);
      }
    }
  }
  DistanceMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = *dist[i * n + j];
  }
  return out;
}

MetricGraph corolla(int k) {
  if (k < 1) throw InputError("corolla needs k >= 1");
  std::vector<MetricGraph::EdgeSpec> specs;
  BigInt pow2 = 1;
  for (int i = 1; i <= k; ++i) {
    pow2 *= 2;
    specs.push_back({"hub", "leaf" + std::to_string(i), Rational(1) + Rational(BigInt(1), pow2)});
  }
  return MetricGraph(specs);
}

Rational point_distance(const MetricGraph& graph, const DistanceMatrix& delta, const GraphPoint& p,
                        const GraphPoint& q) {
  // Exits of a point: (node, cost to reach it).
  auto exits = [&](const GraphPoint& x) {
    std::vector<std::pair<std::size_t, Rational>> out;
    if (!x.on_edge) {
      out.emplace_back(x.index, Rational(0));
    } else {
      const Edge& e = graph.edge(x.index);
      out.emplace_back(e.a, x.offset);
      out.emplace_back(e.b, e.length - x.offset);
    }
    return out;
  };
  std::optional<Rational> best;
  if (p.on_edge && q.on_edge && p.index == q.index) best = abs(p.offset - q.offset);
  for (const auto& [u, cu] : exits(p)) {
    for (const auto& [w, cw] : exits(q)) {
      Rational d = cu + delta(u, w) + cw;
      if (!best || d < *best) best = std::move(d);
    }
  }
  return *best;
}

}  // namespace graphconfig
