#ifndef BOND_BLOCKS_HPP
#define BOND_BLOCKS_HPP

#include <vector>

#include "bond/graph.hpp"

namespace bond {

/// Blocks (maximal 2-connected subgraphs, or bridge edges) and cut vertices of
/// a connected graph. Every edge belongs to exactly one block.
struct BlockCutTree {
    std::vector<VertexSet> blocks;
    std::vector<std::vector<int>> block_edges;  // edge indices per block
    VertexSet cut_vertices;
    std::vector<std::pair<int, int>> tree_edges;  // (block id, cut vertex)

    bool is_bridge(int block_id) const { return block_edges[block_id].size() == 1; }
};

BlockCutTree block_cut_tree(const Graph& g);

/// True iff g is 2-vertex-connected (single block, no cut vertices, >= 3
/// vertices, no parallel-edge-only blocks).
bool is_biconnected(const Graph& g);

/// For a 2-connected graph and distinct s, t, v: an s-v path and a t-v path
/// sharing only v. Built from two vertex-disjoint s-v paths plus a t-v path
/// spliced at its first intersection with them.
std::pair<std::vector<int>, std::vector<int>>
internally_disjoint_paths(const Graph& g, int s, int t, int v);

}  // namespace bond

#endif
