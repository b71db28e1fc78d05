#ifndef BOND_TW_DP_HPP
#define BOND_TW_DP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bond/graph.hpp"
#include "bond/minor.hpp"
#include "bond/tree_decomposition.hpp"

namespace bond {

std::uint64_t bell_number(int k);

struct TwDpStats {
    std::size_t max_states_per_node = 0;
    std::size_t total_states = 0;
    int num_nodes = 0;
    bool bell_bound_ok = true;
};

/// White-box view of one DP node, for table-soundness tests: the processed
/// subgraph plus every stored state in semantic form.
struct TwStateDebug {
    std::vector<int> side1;  // bag vertices on side 1, sorted
    int rho1_kind = 0;       // 0 = parts, 1 = empty, 2 = forgotten component
    int rho2_kind = 0;
    std::vector<std::vector<int>> rho1, rho2;  // parts ordered by min element
    int value = 0;
};
struct TwNodeDebug {
    int type;
    std::vector<int> bag;
    std::vector<int> gl_vertices;
    std::vector<int> gl_edges;
    std::vector<TwStateDebug> entries;
};

/// Exact maximum bond via dynamic programming over a nice tree decomposition:
/// side-assignment plus connectivity partitions per bag, with empty/forgotten
/// sentinels per side. Witness reconstructed through back-pointers.
Bond largest_bond_tw(const Graph& g, const NiceTreeDecomposition& ntd,
                     TwDpStats* stats = nullptr,
                     std::vector<TwNodeDebug>* debug = nullptr);

/// st variant: every bag is augmented with s and t, s is pinned to side 1 and
/// t to side 2, and the same DP runs on the re-nicified decomposition.
Bond largest_st_bond_tw(const Graph& g, int s, int t,
                        const NiceTreeDecomposition& ntd,
                        TwDpStats* stats = nullptr);

/// Same, but starting from a plain decomposition (the pipeline entry point).
Bond largest_st_bond_tw_from_td(const Graph& g, int s, int t,
                                const TreeDecomposition& td,
                                TwDpStats* stats = nullptr);

/// Decision-problem outcome. `exact` is false only on the win/win early-yes
/// path, where `optimum` is the certificate size (a lower bound >= k).
struct SolveDecision {
    bool yes = false;
    int optimum = 0;
    bool exact = true;
    std::optional<Bond> witness;
};

/// Full pipeline: win/win preprocessing, then the treewidth DP on a heuristic
/// decomposition when no early certificate exists.
SolveDecision solve_largest_bond(const Graph& g, int k, TwDpStats* stats = nullptr);

/// st pipeline: block-path reduction, per-block win/win, then the st DP on
/// each surviving block; the witness is lifted back to the input graph.
SolveDecision solve_largest_st_bond(const Graph& g, int s, int t, int k,
                                    TwDpStats* stats = nullptr);

}  // namespace bond

#endif
