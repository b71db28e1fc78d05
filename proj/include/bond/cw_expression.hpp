#ifndef BOND_CW_EXPRESSION_HPP
#define BOND_CW_EXPRESSION_HPP

#include <string>
#include <vector>

#include "bond/graph.hpp"

namespace bond {

/// Abstract syntax tree of clique-width operations. Labels are 1-based;
/// vertex ids are declared at Create leaves and must be unique.
struct WNode {
    enum Kind { Create, Union, Join, Relabel };
    Kind kind;
    int a = 0;  // Create: label; Join/Relabel: label i
    int b = 0;  // Create: vertex id; Join/Relabel: label j
    int left = -1, right = -1;
};

struct WExpression {
    std::vector<WNode> nodes;
    int root = -1;

    int width() const;           // max label referenced
    int num_create_leaves() const;
};

/// S-expression grammar: (v <label> <id>), (u <e> <e>), (j <i> <j> <e>),
/// (r <i> <j> <e>); '#' starts a comment. Errors carry line:column positions.
WExpression parse_w_expression(const std::string& text);
WExpression parse_w_expression_file(const std::string& path);

std::string serialize_w_expression(const WExpression& e);

/// Evaluation result plus per-node bookkeeping for the dynamic program:
/// vertices, labels, and edges of every subexpression's graph.
struct WEval {
    Graph graph;
    std::vector<int> labels;  // final label per vertex
    int width = 0;

    std::vector<std::vector<int>> node_vertices;       // sorted ids
    std::vector<std::vector<int>> node_vertex_labels;  // aligned with vertices
    std::vector<std::vector<int>> node_label_count;    // [node][label]
    std::vector<std::vector<int>> node_edges;          // edges created in subtree
    std::vector<int> postorder;
};

/// Requires Create ids to form 0..n-1. Joins that would re-add an existing
/// edge add nothing (the graph stays simple).
WEval eval_w_expression(const WExpression& e);

/// Drops joins that add no new edge. A join that adds some edges while others
/// already exist cannot be normalized without extra labels and is rejected.
WExpression make_irredundant(const WExpression& e);

/// Expression for psi of the evaluated graph: n relabeled copies, a two-vertex
/// label-2 component, and one final join. Copy c maps vertex v to c*n+v; the
/// two extra vertices are n*n and n*n+1. Width max(w, 2).
WExpression psi_expression(const WExpression& e, int n);

/// Canonical low-width expressions: clique and complete_bipartite with 2
/// labels, path with 3, cycle with 4.
WExpression builtin_expression(const std::string& kind, int p1, int p2 = 0);

}  // namespace bond

#endif
