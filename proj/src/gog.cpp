#include "bsll/gog.hpp"

#include <algorithm>
#include <deque>

namespace bsll {

std::vector<int> Graph::edges_at(int x) const {
  std::vector<int> out;
  for (int e = 0; e < num_edges(); ++e)
    if (origin[e] == x) out.push_back(e);
  return out;
}

void Graph::validate() const {
  if (bar.size() != origin.size()) throw StructureError("graph edge arrays disagree");
  for (int e = 0; e < num_edges(); ++e) {
    if (bar[e] < 0 || bar[e] >= num_edges() || bar[e] == e || bar[bar[e]] != e)
      throw StructureError("edge reversal is not a fixed-point-free involution at edge " +
                           std::to_string(e));
    if (origin[e] < 0 || origin[e] >= num_vertices)
      throw StructureError("edge origin out of range at edge " + std::to_string(e));
  }
}

bool Graph::connected() const {
  if (num_vertices == 0) return true;
  std::vector<char> seen(num_vertices, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop_front();
    for (int e = 0; e < num_edges(); ++e)
      if (origin[e] == x && !seen[target(e)]) {
        seen[target(e)] = 1;
        ++count;
        q.push_back(target(e));
      }
  }
  return count == num_vertices;
}

std::vector<Violation> validate_gog(const GraphOfGroups& g) {
  std::vector<Violation> out;
  try {
    g.graph.validate();
  } catch (const StructureError& e) {
    out.push_back({"graph", e.what()});
    return out;
  }
  const int ne = g.graph.num_edges();
  if (g.vertex_groups.size() != static_cast<size_t>(g.graph.num_vertices))
    out.push_back({"vertex_groups", "one group per vertex required"});
  if (g.edge_groups.size() != static_cast<size_t>(ne))
    out.push_back({"edge_groups", "one group per directed edge required"});
  if (g.alphas.size() != static_cast<size_t>(ne))
    out.push_back({"alphas", "one monomorphism per directed edge required"});
  if (!out.empty()) return out;

  for (int e = 0; e < ne; ++e) {
    if (g.edge_groups[e] != g.edge_groups[g.graph.bar[e]])
      out.push_back({"edge " + std::to_string(e), "edge group not shared with the reversal"});
    const GroupHom& a = g.alphas[e];
    if (a.source().parent() != g.edge_groups[e])
      out.push_back({"edge " + std::to_string(e), "alpha source is not the edge group"});
    if (a.target().parent() != g.vertex_groups[g.graph.origin[e]])
      out.push_back({"edge " + std::to_string(e), "alpha lands in the wrong vertex group"});
    if (a.source().order() != g.edge_groups[e]->order())
      out.push_back({"edge " + std::to_string(e), "alpha is not defined on the whole edge group"});
    // The hom property holds by construction; injectivity is re-checked here
    // so that deserialized data cannot smuggle in a collapsing map.
    std::vector<char> hit(a.target().parent()->order(), 0);
    for (int s : a.source().elements()) {
      const int v = a(s);
      if (hit[v]) {
        out.push_back({"edge " + std::to_string(e),
                       "alpha collapses a pair onto " + std::to_string(v)});
        break;
      }
      hit[v] = 1;
    }
  }
  return out;
}

Rational covolume(const GraphOfGroups& g) {
  Rational sum = 0;
  for (const auto& vg : g.vertex_groups) sum += Rational(1, vg->order());
  return sum;
}

EdgeIndexedGraph edge_indexed(const GraphOfGroups& g) {
  EdgeIndexedGraph out;
  out.graph = g.graph;
  out.index.resize(g.graph.num_edges());
  for (int e = 0; e < g.graph.num_edges(); ++e) {
    const int vertex_order = g.vertex_groups[g.graph.origin[e]]->order();
    const int edge_order = g.edge_groups[e]->order();
    if (vertex_order % edge_order != 0)
      throw StructureError("edge group order does not divide the vertex group order at edge " +
                           std::to_string(e));
    out.index[e] = vertex_order / edge_order;
  }
  return out;
}

bool family_valid(const GraphOfGroups& g, const EdgeSubgroupFamily& f) {
  const int ne = g.graph.num_edges();
  const int nv = g.graph.num_vertices;
  if (f.edge_subgroups.size() != static_cast<size_t>(ne) ||
      f.vertex_subgroups.size() != static_cast<size_t>(nv))
    return false;
  for (int e = 0; e < ne; ++e) {
    if (f.edge_subgroups[e] != f.edge_subgroups[g.graph.bar[e]]) return false;
    std::vector<int> image;
    for (int s : f.edge_subgroups[e]) image.push_back(g.alphas[e](s));
    std::sort(image.begin(), image.end());
    if (image != f.vertex_subgroups[g.graph.origin[e]]) return false;
  }
  for (int x = 0; x < nv; ++x) {
    const auto& nx = f.vertex_subgroups[x];
    if (nx.size() <= 1) return false; // nontrivial at every vertex
    try {
      Subgroup sub(g.vertex_groups[x], nx, nx);
      if (!is_normal(sub)) return false;
    } catch (const StructureError&) {
      return false;
    }
  }
  return true;
}

FaithfulResult is_faithful(const GraphOfGroups& g, int max_order) {
  for (const auto& vg : g.vertex_groups)
    if (vg->order() > max_order)
      throw CapExceeded("vertex group order " + std::to_string(vg->order()) +
                        " exceeds cap " + std::to_string(max_order));
  const int nv = g.graph.num_vertices;
  const int ne = g.graph.num_edges();

  // Per vertex: candidates are the nontrivial subgroups of the intersection
  // of the edge-image subgroups that are normal in the vertex group.
  std::vector<std::vector<Subgroup>> candidates(nv);
  for (int x = 0; x < nv; ++x) {
    const auto at = g.graph.edges_at(x);
    if (at.empty()) return {true, std::nullopt}; // no edge, no N_x, no family
    std::vector<int> inter;
    for (size_t idx = 0; idx < at.size(); ++idx) {
      std::vector<int> img = g.alphas[at[idx]].image_elements();
      if (idx == 0) {
        inter = std::move(img);
      } else {
        std::vector<int> merged;
        std::set_intersection(inter.begin(), inter.end(), img.begin(), img.end(),
                              std::back_inserter(merged));
        inter = std::move(merged);
      }
    }
    for (const Subgroup& n : subgroups_within(g.vertex_groups[x], inter))
      if (n.order() > 1 && is_normal(n)) candidates[x].push_back(n);
    if (candidates[x].empty()) return {true, std::nullopt};
  }

  // Backtrack over vertex assignments; an edge e imposes
  // alpha_ebar(alpha_e^{-1}(N_o(e))) = N_o(ebar) once both ends are chosen.
  std::vector<int> choice(nv, -1);
  std::vector<int> order_of_assign;

  auto edge_pullback = [&](int e, const Subgroup& nx) -> std::vector<int> {
    std::vector<int> ne_ids;
    for (int s : g.alphas[e].source().elements())
      if (nx.contains(g.alphas[e](s))) ne_ids.push_back(s);
    return ne_ids; // subgroup of the edge group: preimage under a mono
  };

  auto edge_ok = [&](int e) -> bool {
    const int x = g.graph.origin[e];
    const int y = g.graph.origin[g.graph.bar[e]];
    if (choice[x] < 0 || choice[y] < 0) return true;
    const Subgroup& nx = candidates[x][choice[x]];
    const Subgroup& ny = candidates[y][choice[y]];
    std::vector<int> pushed;
    for (int s : edge_pullback(e, nx)) pushed.push_back(g.alphas[g.graph.bar[e]](s));
    std::sort(pushed.begin(), pushed.end());
    return pushed == ny.elements();
  };

  std::optional<EdgeSubgroupFamily> found;
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == nv) {
      EdgeSubgroupFamily fam;
      fam.vertex_subgroups.resize(nv);
      fam.edge_subgroups.resize(ne);
      for (int v = 0; v < nv; ++v) fam.vertex_subgroups[v] = candidates[v][choice[v]].elements();
      for (int e = 0; e < ne; ++e)
        fam.edge_subgroups[e] = edge_pullback(e, candidates[g.graph.origin[e]][choice[g.graph.origin[e]]]);
      found = std::move(fam);
      return true;
    }
    for (size_t c = 0; c < candidates[x].size(); ++c) {
      choice[x] = static_cast<int>(c);
      bool ok = true;
      for (int e = 0; e < ne && ok; ++e)
        if (g.graph.origin[e] == x || g.graph.origin[g.graph.bar[e]] == x) ok = edge_ok(e);
      if (ok && self(self, x + 1)) return true;
      choice[x] = -1;
    }
    return false;
  };

  if (rec(rec, 0)) return {false, std::move(found)};
  return {true, std::nullopt};
}

LoopFaithfulResult is_faithful_loop(const GroupPtr& h, const Subgroup& g1,
                                    const Subgroup& g2, const GroupHom& phi) {
  if (g1.parent() != h || g2.parent() != h)
    throw std::invalid_argument("subgroups must live in h");
  if (!(phi.source() == g1) || !(phi.target() == g2) || !phi.is_mono() || !phi.is_onto_target())
    throw std::invalid_argument("phi must be an isomorphism g1 -> g2");

  // phi(N) = N forces N <= G1 n G2, so search only there.
  std::vector<int> inter;
  std::set_intersection(g1.elements().begin(), g1.elements().end(),
                        g2.elements().begin(), g2.elements().end(),
                        std::back_inserter(inter));
  for (const Subgroup& n : subgroups_within(h, inter)) {
    if (n.order() <= 1) continue;
    std::vector<int> image;
    for (int s : n.elements()) image.push_back(phi(s));
    std::sort(image.begin(), image.end());
    if (image != n.elements()) continue;
    if (!is_normal(n)) continue;
    return {false, n};
  }
  return {true, std::nullopt};
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

GraphOfGroups make_loop_base(int p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  GraphOfGroups g;
  g.graph.num_vertices = 1;
  g.graph.bar = {1, 0};
  g.graph.origin = {0, 0};
  g.vertex_groups = {cyclic_group(p)};
  GroupPtr triv = trivial_group();
  g.edge_groups = {triv, triv};
  std::vector<int> img{GroupTable::identity};
  GroupHom alpha(Subgroup::whole(triv), Subgroup::whole(g.vertex_groups[0]), img, true);
  g.alphas = {alpha, alpha};
  return g;
}

GraphOfGroups assemble_loop(const GroupPtr& h, const Subgroup& g1, const Subgroup& g2,
                            const GroupHom& phi) {
  if (g1.parent() != h || g2.parent() != h)
    throw std::invalid_argument("subgroups must live in h");
  // Abstract copy of G1 as the edge group, with elements reindexed
  // 0..|G1|-1 in ascending parent-id order (identity first).
  const auto& els = g1.elements();
  const int m = g1.order();
  std::vector<int> pos(h->order(), -1);
  for (int i = 0; i < m; ++i) pos[els[i]] = i;
  std::vector<int> mul(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mul[static_cast<size_t>(i) * m + j] = pos[h->mul(els[i], els[j])];
  std::vector<std::string> labels;
  if (h->has_labels()) {
    labels.resize(m);
    for (int i = 0; i < m; ++i) labels[i] = h->label(els[i]);
  }
  GroupPtr edge = std::make_shared<GroupTable>(m, std::move(mul), std::move(labels));

  std::vector<int> incl(m), via_phi(m);
  for (int i = 0; i < m; ++i) {
    incl[i] = els[i];
    via_phi[i] = phi(els[i]);
  }

  GraphOfGroups g;
  g.graph.num_vertices = 1;
  g.graph.bar = {1, 0};
  g.graph.origin = {0, 0};
  g.vertex_groups = {h};
  g.edge_groups = {edge, edge};
  g.alphas = {GroupHom(Subgroup::whole(edge), Subgroup::whole(h), incl, true),
              GroupHom(Subgroup::whole(edge), Subgroup::whole(h), via_phi, true)};
  return g;
}

} // namespace bsll
