#include "bsll/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace bsll {

json table_to_json(const GroupTable& t) {
  return json{{"order", t.order()}, {"mul", t.raw_mul()}};
}

GroupPtr table_from_json(const json& j) {
  const int order = j.at("order").get<int>();
  auto mul = j.at("mul").get<std::vector<int>>();
  return std::make_shared<GroupTable>(order, std::move(mul));
}

json matrix_to_json(const MatrixA& a) {
  return json{{"p", a.p()}, {"k", a.k()}, {"rows", a.rows()}};
}

MatrixA matrix_from_json(const json& j) {
  return MatrixA(j.at("p").get<int>(), j.at("k").get<int>(),
                 j.at("rows").get<std::vector<std::vector<int>>>());
}

json rational_to_json(const Rational& r) {
  const BigInt num = rat_num(r);
  const BigInt den = rat_den(r);
  json out;
  // Desk-scale values fit in 64 bits; fall back to decimal strings beyond.
  if (num >= std::numeric_limits<long long>::min() &&
      num <= std::numeric_limits<long long>::max())
    out["num"] = static_cast<long long>(num);
  else
    out["num"] = num.str();
  if (den <= std::numeric_limits<long long>::max())
    out["den"] = static_cast<long long>(den);
  else
    out["den"] = den.str();
  return out;
}

namespace {

json covering_body(const LoopCovering& c, json group_field) {
  json out{{"p", c.p},
           {"group", std::move(group_field)},
           {"g1", c.g1.elements()},
           {"g2", c.g2.elements()},
           {"phi", c.phi.image_map()},
           {"u", c.u}};
  if (c.provenance) out["matrix"] = matrix_to_json(*c.provenance);
  return out;
}

LoopCovering covering_assemble(const json& j, GroupPtr h) {
  const int p = j.at("p").get<int>();
  auto e1 = j.at("g1").get<std::vector<int>>();
  auto e2 = j.at("g2").get<std::vector<int>>();
  Subgroup g1(h, e1, e1);
  Subgroup g2(h, e2, e2);
  GroupHom phi(g1, g2, j.at("phi").get<std::vector<int>>(), true);
  std::optional<MatrixA> prov;
  if (j.contains("matrix")) prov = matrix_from_json(j.at("matrix"));
  return LoopCovering{p, std::move(h), std::move(g1), std::move(g2), std::move(phi),
                      j.at("u").get<int>(), std::move(prov)};
}

} // namespace

json covering_to_json(const LoopCovering& c) {
  return covering_body(c, table_to_json(*c.h));
}

LoopCovering covering_from_json(const json& j) {
  return covering_assemble(j, table_from_json(j.at("group")));
}

int TablePool::intern(const GroupPtr& g) {
  for (size_t i = 0; i < tables_.size(); ++i)
    if (tables_[i] == g ||
        (tables_[i]->order() == g->order() && tables_[i]->raw_mul() == g->raw_mul()))
      return static_cast<int>(i);
  tables_.push_back(g);
  return static_cast<int>(tables_.size()) - 1;
}

GroupPtr TablePool::resolve(int ref) const {
  if (ref < 0 || ref >= static_cast<int>(tables_.size()))
    throw std::invalid_argument("group table ref out of range");
  return tables_[ref];
}

json TablePool::to_json() const {
  json out = json::array();
  for (const auto& t : tables_) out.push_back(table_to_json(*t));
  return out;
}

TablePool TablePool::from_json(const json& j) {
  TablePool pool;
  for (const auto& t : j) pool.tables_.push_back(table_from_json(t));
  return pool;
}

json covering_to_json(const LoopCovering& c, TablePool& pool) {
  return covering_body(c, json(pool.intern(c.h)));
}

LoopCovering covering_from_json(const json& j, const TablePool& pool) {
  const json& g = j.at("group");
  if (g.is_number_integer()) return covering_assemble(j, pool.resolve(g.get<int>()));
  return covering_assemble(j, table_from_json(g));
}

json gog_to_json(const GraphOfGroups& g) {
  json edges = json::array();
  for (int e = 0; e < g.graph.num_edges(); ++e)
    edges.push_back({{"id", e}, {"bar", g.graph.bar[e]}, {"origin", g.graph.origin[e]}});
  json vgs = json::array();
  for (const auto& vg : g.vertex_groups) vgs.push_back(table_to_json(*vg));
  json egs = json::array();
  for (int e = 0; e < g.graph.num_edges(); ++e) {
    if (g.graph.bar[e] < e) continue; // one record per pair
    egs.push_back({{"edges", {e, g.graph.bar[e]}}, {"table", table_to_json(*g.edge_groups[e])}});
  }
  json alphas = json::array();
  for (int e = 0; e < g.graph.num_edges(); ++e) {
    std::vector<int> img;
    for (int s = 0; s < g.edge_groups[e]->order(); ++s) img.push_back(g.alphas[e](s));
    alphas.push_back({{"edge", e}, {"image", img}});
  }
  std::vector<int> vertices(g.graph.num_vertices);
  for (int v = 0; v < g.graph.num_vertices; ++v) vertices[v] = v;
  return json{{"vertices", vertices},
              {"edges", edges},
              {"vertex_groups", vgs},
              {"edge_groups", egs},
              {"alphas", alphas}};
}

GraphOfGroups gog_from_json(const json& j) {
  GraphOfGroups g;
  g.graph.num_vertices = static_cast<int>(j.at("vertices").size());
  const auto& edges = j.at("edges");
  g.graph.bar.assign(edges.size(), -1);
  g.graph.origin.assign(edges.size(), -1);
  for (const auto& e : edges) {
    const int id = e.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(edges.size()))
      throw std::invalid_argument("edge id out of range");
    g.graph.bar[id] = e.at("bar").get<int>();
    g.graph.origin[id] = e.at("origin").get<int>();
  }
  g.graph.validate();

  for (const auto& vg : j.at("vertex_groups")) g.vertex_groups.push_back(table_from_json(vg));
  if (g.vertex_groups.size() != static_cast<size_t>(g.graph.num_vertices))
    throw std::invalid_argument("one vertex group per vertex required");

  g.edge_groups.assign(g.graph.num_edges(), nullptr);
  for (const auto& eg : j.at("edge_groups")) {
    GroupPtr t = table_from_json(eg.at("table"));
    for (const auto& e : eg.at("edges")) {
      const int id = e.get<int>();
      if (id < 0 || id >= g.graph.num_edges() || g.edge_groups[id])
        throw std::invalid_argument("bad edge group assignment");
      g.edge_groups[id] = t;
    }
  }
  for (const auto& t : g.edge_groups)
    if (!t) throw std::invalid_argument("edge without an edge group");

  std::vector<std::optional<json>> alpha_json(g.graph.num_edges());
  for (const auto& a : j.at("alphas")) {
    const int e = a.at("edge").get<int>();
    if (e < 0 || e >= g.graph.num_edges() || alpha_json[e])
      throw std::invalid_argument("bad alpha assignment");
    alpha_json[e] = a.at("image");
  }
  for (int e = 0; e < g.graph.num_edges(); ++e) {
    if (!alpha_json[e]) throw std::invalid_argument("edge without an alpha");
    auto img = alpha_json[e]->get<std::vector<int>>();
    // Injectivity is validate_gog's job, reported as a violation rather
    // than a parse failure; the homomorphism property is still enforced.
    g.alphas.emplace_back(Subgroup::whole(g.edge_groups[e]),
                          Subgroup::whole(g.vertex_groups[g.graph.origin[e]]),
                          std::move(img), false);
  }
  return g;
}

json family_witness_to_json(const EdgeSubgroupFamily& f) {
  return json{{"edge_subgroups", f.edge_subgroups},
              {"vertex_subgroups", f.vertex_subgroups}};
}

json ball_to_json(const TreeBall& b) {
  json vertices = json::array();
  for (size_t i = 0; i < b.nodes.size(); ++i) {
    const auto& n = b.nodes[i];
    vertices.push_back({{"id", static_cast<int>(i)},
                        {"depth", n.depth},
                        {"base_vertex", n.base_vertex},
                        {"parent", n.parent},
                        {"via_base_edge", n.via_edge},
                        {"children", n.children}});
  }
  return json{{"radius", b.radius}, {"vertices", vertices}};
}

std::string ball_to_text(const TreeBall& b) {
  std::string out;
  // Depth-first so the indentation reads as parent -> child.
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    const auto& n = b.nodes[v];
    out.append(2 * static_cast<size_t>(n.depth), ' ');
    out += std::to_string(v) + " over vertex " + std::to_string(n.base_vertex);
    if (n.via_edge >= 0) out += " via edge " + std::to_string(n.via_edge);
    out += "\n";
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

json report_to_json(const CountReport& r) {
  TablePool pool;
  json necessary = json::array();
  for (const auto& c : r.reps_necessary) necessary.push_back(covering_to_json(c, pool));
  json sufficient = json::array();
  for (const auto& c : r.reps_sufficient) sufficient.push_back(covering_to_json(c, pool));
  return json{
      {"p", r.p},
      {"k", r.k},
      {"n", r.n},
      {"matrices_total", r.matrices_total},
      {"consistent_count", r.consistent_count},
      {"faithful_count", r.faithful_count},
      {"covering_count", r.covering_count},
      {"classes_sufficient", r.classes_sufficient},
      {"classes_necessary", r.classes_necessary},
      {"paper_lower", r.paper_lower},
      {"paper_upper", r.paper_upper},
      {"bounds_ok",
       {{"lower_ok", r.lower_ok}, {"upper_ok", r.upper_ok}, {"bracket_ok", r.bracket_ok}}},
      {"class_representatives", {{"necessary", necessary}, {"sufficient", sufficient}}},
      {"group_tables", pool.to_json()},
      {"completeness_assumption",
       "vertex groups are enumerated through shifted presentations; any faithful "
       "index-p subgroup pair with its isomorphism is carried onto one of them "
       "by the structure theorem for such pairs, so no covering class is missed"},
      {"tool_version", r.tool_version},
      {"input_hash", r.input_hash},
      {"timings", r.timings_ms},
  };
}

json family_report_to_json(const FamilyReport& r) {
  TablePool pool;
  json reps = json::array();
  for (const auto& c : r.representatives) reps.push_back(covering_to_json(c, pool));
  return json{
      {"p", r.p},
      {"k", r.k},
      {"members_total", r.members_total},
      {"members_valid", r.members_valid},
      {"classes_necessary", r.classes_necessary},
      {"paper_lower", r.paper_lower},
      {"bound_ok", r.bound_ok},
      {"class_representatives", reps},
      {"group_tables", pool.to_json()},
      {"tool_version", r.tool_version},
      {"input_hash", r.input_hash},
      {"timings", r.timings_ms},
  };
}

std::optional<json> cache_load(const std::string& dir, const std::string& key) {
  const std::filesystem::path path = std::filesystem::path(dir) / (key + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
  return doc;
}

void cache_store(const std::string& dir, const std::string& key, const json& doc) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / (key + ".json");
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path); // atomic on the same filesystem
}

std::string fnv1a_hex(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return std::string(buf);
}

} // namespace bsll
