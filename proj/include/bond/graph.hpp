#ifndef BOND_GRAPH_HPP
#define BOND_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "bond/bitset.hpp"

namespace bond {

struct Edge {
    int u;
    int v;
    int weight;  // 0 or 1
};

/// Undirected (multi)graph with dense 0-based vertex ids and indexed edges.
/// Edge identity is by index into the edge list; self-loops are never allowed,
/// and parallel edges only when multigraph_allowed is set.
class Graph {
public:
    Graph() = default;
    explicit Graph(int num_vertices, bool multigraph_allowed = false,
                   bool weighted = false);

    /// Adds edge {u,v} and returns its index. Weight must be 1 on unweighted
    /// graphs and 0/1 on weighted ones.
    int add_edge(int u, int v, int weight = 1);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int idx) const { return edges_.at(idx); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool multigraph_allowed() const { return multigraph_; }
    bool weighted() const { return weighted_; }

    bool has_edge(int u, int v) const;
    int degree(int v) const;
    int total_weight() const;

private:
    static std::uint64_t pair_key(int u, int v);

    int n_ = 0;
    bool multigraph_ = false;
    bool weighted_ = false;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> edge_keys_;
    std::vector<int> degree_;
};

/// Adjacency as (neighbor, edge index) pairs sorted ascending; algorithms
/// build this once per call so iteration order is always deterministic.
std::vector<std::vector<std::pair<int, int>>> adjacency_lists(const Graph& g);

bool is_connected(const Graph& g);

/// Maximal connected vertex sets, ordered by smallest contained vertex id.
std::vector<VertexSet> connected_components(const Graph& g);

/// Components of the subgraph induced by `within`.
std::vector<VertexSet> connected_components_within(const Graph& g,
                                                   const VertexSet& within);

/// Edge indices with exactly one endpoint in `side`.
std::vector<int> cut_set(const Graph& g, const VertexSet& side);

/// A cut [S, V\S] whose two sides both induce connected subgraphs.
struct Bond {
    VertexSet side;
    std::vector<int> crossing_edges;  // ascending edge indices
    int size = 0;
    int weight = 0;
};

enum class BondDefect {
    None,
    EmptySide,
    FullSide,
    LeftDisconnected,
    RightDisconnected,
};

const char* to_string(BondDefect d);

struct VerifyResult {
    std::optional<Bond> bond;
    BondDefect defect = BondDefect::None;
    bool ok() const { return bond.has_value(); }
};

/// Checks whether `side` induces a bond of connected `g`; on success returns
/// the Bond certificate, otherwise the first failing condition.
VerifyResult verify_bond(const Graph& g, const VertexSet& side);

/// Builds the Bond for a side already known to be valid; throws otherwise.
Bond make_bond(const Graph& g, const VertexSet& side);

/// No bond of g can be larger than |E| - |V| + 2.
inline int yutsis_bound(const Graph& g) {
    return g.num_edges() - g.num_vertices() + 2;
}

/// Replaces every edge by a length-2 path through a fresh vertex. Defined for
/// unweighted inputs only; the image is always simple.
Graph subdivide_all(const Graph& g);

}  // namespace bond

#endif
