#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsll/group.hpp"
#include "bsll/rational.hpp"

namespace bsll {

// A graph given by directed edges with a fixed-point-free reversal
// involution; loops and multi-edges are allowed.
struct Graph {
  int num_vertices = 0;
  std::vector<int> bar;    // edge reversal, bar[e] != e
  std::vector<int> origin; // o(e)

  int num_edges() const { return static_cast<int>(bar.size()); }
  int target(int e) const { return origin[bar[e]]; }
  std::vector<int> edges_at(int x) const;

  void validate() const; // throws StructureError
  bool connected() const;
};

struct EdgeIndexedGraph {
  Graph graph;
  std::vector<long long> index; // i(e) >= 1 per directed edge
};

// A finite graph of finite groups: one group per vertex, one per edge pair
// (shared by e and bar e), and a monomorphism alpha_e from the edge group
// into the origin-vertex group for every directed edge.
struct GraphOfGroups {
  Graph graph;
  std::vector<GroupPtr> vertex_groups; // per vertex
  std::vector<GroupPtr> edge_groups;   // per directed edge; equal pointers on a pair
  std::vector<GroupHom> alphas;        // per directed edge
};

struct Violation {
  std::string where;
  std::string what;
};

// Empty iff the involution is coherent and every alpha is a verified
// monomorphism from the shared edge group into the right vertex group.
std::vector<Violation> validate_gog(const GraphOfGroups& g);

// Sum over vertices of 1/|G_x|, exactly.
Rational covolume(const GraphOfGroups& g);

// i(e) = |G_o(e)| / |G_e|; throws StructureError on a non-integral quotient.
EdgeIndexedGraph edge_indexed(const GraphOfGroups& g);

// An edge subgroup family: one subgroup N_e of each edge group whose images
// at co-origin edges agree (called N_x), each N_x a nontrivial normal
// subgroup of its vertex group.
struct EdgeSubgroupFamily {
  std::vector<std::vector<int>> edge_subgroups;   // per directed edge, ids in the edge group
  std::vector<std::vector<int>> vertex_subgroups; // per vertex, ids in the vertex group
};

// Re-validation of a witness family.
bool family_valid(const GraphOfGroups& g, const EdgeSubgroupFamily& f);

struct FaithfulResult {
  bool faithful;
  std::optional<EdgeSubgroupFamily> witness; // present iff not faithful
};

// Brute-force search for an edge subgroup family, pruned to normal
// subgroups inside the intersection of edge-image subgroups at each vertex.
FaithfulResult is_faithful(const GraphOfGroups& g, int max_order = 512);

struct LoopFaithfulResult {
  bool faithful;
  std::optional<Subgroup> witness; // N <= G1 with phi(N) = N, normal in H
};

// One-vertex specialization: faithful iff no nontrivial N <= G1 with
// phi(N) = N and N normal in H.
LoopFaithfulResult is_faithful_loop(const GroupPtr& h, const Subgroup& g1,
                                    const Subgroup& g2, const GroupHom& phi);

// The base: one vertex with Z/p, one edge pair with the trivial group.
GraphOfGroups make_loop_base(int p);

// The target loop of a normalized covering: vertex group H, edge group an
// abstract copy of G1, alpha_e the inclusion and alpha_ebar phi.
GraphOfGroups assemble_loop(const GroupPtr& h, const Subgroup& g1, const Subgroup& g2,
                            const GroupHom& phi);

bool is_prime(int n);

} // namespace bsll
