#ifndef BOND_XI_HPP
#define BOND_XI_HPP

#include <optional>
#include <vector>

#include "bond/graph.hpp"

namespace bond {

/// One weight-1 edge of some iteration level of a xi tower. Edges below the
/// top level do not exist in the final graph; they are recorded with the copy
/// gadget that replaced them and their descendant vertex set.
struct XiSplitEdge {
    int level = 0;
    int u = -1, v = -1;
    int final_edge = -1;             // edge index in graph, top level only
    std::vector<int> copy_vertices;  // image of pattern vertex i, lower levels
    std::vector<int> child_splits;   // aligned with pattern edge indices
    std::vector<int> descendants;    // V_uv, sorted; empty at the top level
};

/// xi_G^h(K_2): each weight-1 edge replaced h times by a pattern copy whose
/// vertices are anchored to the replaced endpoints with weight-0 edges.
struct XiInstance {
    Graph graph;    // 0/1-weighted
    Graph pattern;
    int height = 0;
    std::vector<XiSplitEdge> splits;  // split 0 is the level-0 K_2 edge
    std::vector<int> edge_level;      // per final edge: iteration that added it
};

/// Size guard: |V(pattern)|^(h+1) <= 5000.
XiInstance xi_power(const Graph& pattern, int h);

/// Niceness of one split edge for the cut [side, complement]: endpoints
/// separated, or the whole descendant gadget on one side.
bool xi_edge_is_nice(const XiInstance& x, int split, const VertexSet& side);
bool xi_bond_is_nice(const XiInstance& x, const VertexSet& side);

/// Pattern cut induced on a split edge's copy, when the endpoints are
/// separated; nullopt otherwise. Sorted pattern edge indices.
std::optional<std::vector<int>> xi_induced_cut(const XiInstance& x, int split,
                                               const VertexSet& side);

/// l-uniformity: nice, and every separated split edge below the top level
/// induces a pattern cut of exactly l edges.
bool xi_bond_is_uniform(const XiInstance& x, const VertexSet& side, int l);

/// Reconnection normalization: repeatedly fix the lowest-level offending
/// split edge by keeping the component of its side minus one endpoint. The
/// weight never changes; at most height rounds are needed.
Bond make_nice_bond(const XiInstance& x, const Bond& f);

/// Uniformization: take the largest induced pattern cut of the nice bond and
/// rebuild the whole tower from it. Returns the bond and l; weight is l^h and
/// never below the input weight.
std::pair<Bond, int> make_uniform_bond(const XiInstance& x, const Bond& f);

/// Reads the pattern cut off the top-level split edge of an l-uniform bond.
std::vector<int> extract_cut(const XiInstance& x, const Bond& f, int l);

/// Lifts a valid pattern cut-set into an l-uniform bond of weight l^h.
Bond lift_cut(const XiInstance& x, const std::vector<int>& cut, int h);

/// Decides whether `cut` is a cut-set of `g` (crossing edges of some vertex
/// bipartition); returns one side when it is.
std::optional<VertexSet> cut_set_side(const Graph& g, const std::vector<int>& cut);

/// Weighted-to-unweighted reduction: weight-1 edges become max(m,1) parallel
/// edges (m = number of weight-0 edges), then everything is subdivided.
struct UnweightedImage {
    Graph graph;
    int zero_edges = 0;    // m
    int multiplicity = 1;  // max(m, 1)
    std::vector<int> source_edge;  // pre-subdivision edge -> input edge index
    int original_vertices = 0;
};
UnweightedImage binary_to_unweighted(const Graph& h);

}  // namespace bond

#endif
