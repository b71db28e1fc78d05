#ifndef BOND_MINOR_HPP
#define BOND_MINOR_HPP

#include <optional>
#include <vector>

#include "bond/blocks.hpp"
#include "bond/graph.hpp"
#include "bond/tree_decomposition.hpp"

namespace bond {

/// A K_{2,p} minor model: two distinguished branch sets plus p legs, all
/// disjoint and connected, each leg adjacent to both sides.
struct MinorModel {
    VertexSet side_a;
    VertexSet side_b;
    std::vector<VertexSet> legs;
};

/// Throws std::logic_error naming the violated model invariant, if any.
void validate_minor_model(const Graph& g, const MinorModel& m);

/// Sound but incomplete K_{2,k}-minor search: every seed pair of vertices is
/// tried as singleton branch sets, grown by one greedy absorption round; the
/// legs are the components of the rest adjacent to both sides. Any returned
/// model is verified; `nullopt` carries no guarantee.
std::optional<MinorModel> find_k2k_minor(const Graph& g, int k);

/// Turns a minor model into a bond: uncovered vertices are BFS-absorbed into
/// adjacent branch sets, the side is the enlarged side_a. Size >= #legs.
Bond bond_from_minor(const Graph& g, const MinorModel& m);

/// The 2-connected st construction: with 2k legs, either s and t fall into
/// separable branch sets, or their common set U is split along a spanning
/// tree directed towards s, guided by internally disjoint paths to a vertex
/// outside U. The result separates s and t with at least k crossing edges.
Bond st_bond_from_minor(const Graph& g, int s, int t, const MinorModel& m);

/// Either an early bond certificate of size >= k, or a heuristic tree
/// decomposition for the DP. Exactness never depends on the width.
struct WinwinResult {
    std::optional<Bond> early_yes;
    std::optional<TreeDecomposition> td;
};
WinwinResult winwin_preprocess(const Graph& g, int k);

/// st preprocessing: keep only the blocks on the block-cut-tree path from s
/// to t, run the 2k-leg win/win per block, and otherwise stitch per-block
/// decompositions through singleton cut-vertex bags.
struct StBlockTask {
    Graph block;                  // local ids
    std::vector<int> to_g;        // local vertex -> original vertex
    std::vector<int> edge_to_g;   // local edge -> original edge index
    int s_local = -1, t_local = -1;
};
struct StPreprocessResult {
    std::optional<Bond> early_yes;     // bond of the original graph
    Graph reduced;                     // union of path blocks, compact ids
    TreeDecomposition td;              // stitched, in reduced ids
    std::vector<int> to_original;      // reduced id -> original id
    std::vector<int> from_original;    // original id -> reduced id or -1
    std::vector<StBlockTask> tasks;    // per path block, with local s', t'
};
StPreprocessResult st_preprocess(const Graph& g, int s, int t, int k);

/// Lifts a bond of one block (local ids) to a bond of g by splitting g along
/// the mapped crossing edges and taking the component of `anchor`.
Bond lift_block_bond(const Graph& g, const StBlockTask& task,
                     const Bond& block_bond, int anchor);

}  // namespace bond

#endif
