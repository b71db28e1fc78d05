#ifndef BOND_CW_DP_HPP
#define BOND_CW_DP_HPP

#include <optional>
#include <string>
#include <vector>

#include "bond/cw_expression.hpp"
#include "bond/graph.hpp"

namespace bond {

struct CwDpStats {
    std::size_t max_entries_per_node = 0;
    std::size_t total_entries = 0;
    bool size_bound_ok = true;  // (n+1)^w * 3^(2*(2^w-1)) per node
};

/// White-box table dump for soundness tests: per AST node, the stored shapes.
/// A shape key is the byte string s_1..s_w | e_1..e_T | d_1..d_T with
/// T = 2^w - 1, exactly as the DP hashes it.
struct CwNodeDebug {
    std::vector<int> vertices;
    std::vector<std::pair<std::string, int>> entries;  // (shape key, value)
};

/// The shape a concrete bipartition of a subexpression graph induces; used by
/// tests to enumerate ground truth against the DP tables.
std::string cw_shape_key(const WEval& ev, int node, const VertexSet& side1,
                         int width);

struct CwResult {
    int size = 0;
    VertexSet side;
};

/// Largest bond from a w-expression: per-node tables keyed by side-1 label
/// counts plus saturating per-type component multiplicities for both sides.
/// The expression is made irredundant first; the evaluated graph must be
/// connected with at least two vertices.
CwResult largest_bond_cw(const WExpression& e, CwDpStats* stats = nullptr,
                         std::vector<CwNodeDebug>* debug = nullptr);

/// st variant: s and t get private labels w+1 / w+2 (joins that would have
/// touched them are replayed on the private labels), s is pinned to side 1
/// and t to side 2.
CwResult largest_st_bond_cw(const WExpression& e, int s, int t,
                            CwDpStats* stats = nullptr);

/// The label-lifting rewrite used by the st variant, exposed for tests.
WExpression st_private_label_expression(const WExpression& e, int s, int t);

}  // namespace bond

#endif
