#pragma once

#include <map>
#include <string>
#include <vector>

#include "bsll/gog.hpp"

namespace bsll {

// A finite ball of the universal covering tree of an edge-indexed graph.
// Node 0 is the root; nodes are in breadth-first order.
struct TreeBall {
  struct Node {
    int base_vertex;
    int depth;
    int parent;   // -1 at the root
    int via_edge; // base edge covered by the parent->node edge, -1 at the root
    std::vector<int> children;
  };
  int radius = 0;
  std::vector<Node> nodes;
};

struct BallOptions {
  long long max_vertices = 1'000'000;
};

// The radius-r ball: the root lifts x0 with i(e) children along each edge e
// at x0; a vertex entered along e has i(e') lifts above each edge e' at its
// base vertex, one of which (above bar e) is the parent.
TreeBall universal_ball(const EdgeIndexedGraph& g, int x0, int radius,
                        const BallOptions& opts = {});

// Histogram of degrees of the interior vertices (depth < radius).
std::map<long long, long long> degree_profile(const TreeBall& b);

// Canonical rooted-tree code; equal codes iff the rooted trees are
// isomorphic. Iterative, children codes sorted at each node.
std::string ahu_code(const TreeBall& b);

struct GraphMorphism {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

// True iff f is index-sum compatible at every vertex of x and every base
// edge of y: sum of i(e) over the fiber at each vertex equals i(e').
// Throws std::invalid_argument when f is not a graph morphism.
bool check_eig_covering(const EdgeIndexedGraph& x, const EdgeIndexedGraph& y,
                        const GraphMorphism& f);

} // namespace bsll
