#include "bsll/cover_tree.hpp"

#include <algorithm>

namespace bsll {

TreeBall universal_ball(const EdgeIndexedGraph& g, int x0, int radius,
                        const BallOptions& opts) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  if (x0 < 0 || x0 >= g.graph.num_vertices)
    throw std::invalid_argument("root vertex out of range");
  g.graph.validate();
  if (!g.graph.connected()) throw std::invalid_argument("base must be connected");
  for (long long i : g.index)
    if (i < 1) throw StructureError("edge index below 1");

  TreeBall ball;
  ball.radius = radius;
  ball.nodes.push_back({x0, 0, -1, -1, {}});

  for (size_t cur = 0; cur < ball.nodes.size(); ++cur) {
    // nodes is in BFS order: depths are non-decreasing
    const int depth = ball.nodes[cur].depth;
    if (depth == radius) break;
    const int base = ball.nodes[cur].base_vertex;
    const int entered = ball.nodes[cur].via_edge; // -1 at root
    for (int e : g.graph.edges_at(base)) {
      long long lifts = g.index[e];
      if (entered >= 0 && e == g.graph.bar[entered]) --lifts; // parent sits above bar(entered)
      for (long long c = 0; c < lifts; ++c) {
        if (static_cast<long long>(ball.nodes.size()) >= opts.max_vertices)
          throw CapExceeded("ball exceeds " + std::to_string(opts.max_vertices) +
                            " vertices");
        const int id = static_cast<int>(ball.nodes.size());
        ball.nodes.push_back({g.graph.target(e), depth + 1, static_cast<int>(cur), e, {}});
        ball.nodes[cur].children.push_back(id);
      }
    }
  }
  return ball;
}

std::map<long long, long long> degree_profile(const TreeBall& b) {
  if (b.radius < 1) throw std::invalid_argument("degree_profile needs radius >= 1");
  std::map<long long, long long> out;
  for (const auto& n : b.nodes) {
    if (n.depth >= b.radius) continue;
    const long long deg = static_cast<long long>(n.children.size()) + (n.parent >= 0 ? 1 : 0);
    ++out[deg];
  }
  return out;
}

std::string ahu_code(const TreeBall& b) {
  const int n = static_cast<int>(b.nodes.size());
  std::vector<std::string> code(n);
  // Children always have larger ids (BFS order), so a reverse sweep is a
  // valid post-order.
  for (int v = n - 1; v >= 0; --v) {
    std::vector<std::string> kids;
    kids.reserve(b.nodes[v].children.size());
    for (int c : b.nodes[v].children) kids.push_back(std::move(code[c]));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (auto& k : kids) s += k;
    s += ")";
    code[v] = std::move(s);
  }
  return code[0];
}

bool check_eig_covering(const EdgeIndexedGraph& x, const EdgeIndexedGraph& y,
                        const GraphMorphism& f) {
  x.graph.validate();
  y.graph.validate();
  if (f.vertex_map.size() != static_cast<size_t>(x.graph.num_vertices) ||
      f.edge_map.size() != static_cast<size_t>(x.graph.num_edges()))
    throw std::invalid_argument("morphism arrays have wrong sizes");
  for (int v : f.vertex_map)
    if (v < 0 || v >= y.graph.num_vertices)
      throw std::invalid_argument("vertex image out of range");
  for (int e = 0; e < x.graph.num_edges(); ++e) {
    const int fe = f.edge_map[e];
    if (fe < 0 || fe >= y.graph.num_edges())
      throw std::invalid_argument("edge image out of range");
    if (f.edge_map[x.graph.bar[e]] != y.graph.bar[fe])
      throw std::invalid_argument("morphism does not commute with the reversal");
    if (f.vertex_map[x.graph.origin[e]] != y.graph.origin[fe])
      throw std::invalid_argument("morphism does not preserve origins");
  }

  for (int v = 0; v < x.graph.num_vertices; ++v)
    for (int ep = 0; ep < y.graph.num_edges(); ++ep) {
      if (y.graph.origin[ep] != f.vertex_map[v]) continue;
      long long sum = 0;
      for (int e : x.graph.edges_at(v))
        if (f.edge_map[e] == ep) sum += x.index[e];
      if (sum != y.index[ep]) return false;
    }
  return true;
}

} // namespace bsll
