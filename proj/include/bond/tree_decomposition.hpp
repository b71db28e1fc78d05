#ifndef BOND_TREE_DECOMPOSITION_HPP
#define BOND_TREE_DECOMPOSITION_HPP

#include <optional>
#include <string>
#include <vector>

#include "bond/graph.hpp"

namespace bond {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;           // sorted vertex ids
    std::vector<std::pair<int, int>> tree_edges;  // bag-id pairs

    int width() const {
        int w = 0;
        for (const auto& b : bags) w = std::max<int>(w, static_cast<int>(b.size()));
        return w - 1;
    }
};

struct TdViolation {
    enum Kind {
        NotATree,
        VertexNotCovered,
        EdgeNotCovered,
        VertexSubtreeDisconnected,
        BadBagContent,
    };
    Kind kind;
    int witness;  // vertex id or edge index, -1 when structural
    std::string message;
};

/// Checks the three decomposition axioms plus tree shape; nullopt means valid.
std::optional<TdViolation> validate_tree_decomposition(const Graph& g,
                                                       const TreeDecomposition& td);

/// Min-fill elimination ordering. Width is heuristic, never below the true
/// treewidth but with no optimality guarantee.
TreeDecomposition heuristic_tree_decomposition(const Graph& g);

/// Rooted nice tree decomposition with typed nodes. The node array is in
/// post order (children before parents); the root bag is empty and every
/// graph edge is introduced at exactly one IntroduceEdge node.
struct NiceNode {
    enum Type { Leaf, IntroduceVertex, IntroduceEdge, ForgetVertex, Join };
    Type type;
    int vertex = -1;          // IntroduceVertex / ForgetVertex
    int edge = -1;            // IntroduceEdge: edge index in the graph
    int left = -1, right = -1;
    std::vector<int> bag;     // sorted
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    TreeDecomposition underlying() const;
};

/// Standard nicification: binarized joins, introduce/forget chains, empty
/// root bag, each edge introduced immediately above the topmost bag
/// containing both endpoints.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, const Graph& g);

/// Throws std::logic_error describing the first structural defect, if any.
void validate_nice(const NiceTreeDecomposition& ntd, const Graph& g);

/// PACE-style text interchange. Vertices and bag ids are 1-based on disk.
std::string serialize_td(const TreeDecomposition& td, int num_vertices);
TreeDecomposition parse_td(const std::string& text);

}  // namespace bond

#endif
