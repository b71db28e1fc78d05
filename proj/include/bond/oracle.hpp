#ifndef BOND_ORACLE_HPP
#define BOND_ORACLE_HPP

#include <optional>
#include <vector>

#include "bond/graph.hpp"

namespace bond {

/// Exponential-time reference solvers. Deliberately naive: every side of the
/// cut is enumerated as a bitmask and checked with bitset BFS. Guarded at 24
/// vertices; exceeding the guard throws.
namespace oracle {

constexpr int kMaxVertices = 24;

/// Maximum-size bond; sides enumerated with 0 in S, ties broken by
/// lexicographically smallest side bitset.
Bond largest_bond_bf(const Graph& g, int num_threads = 1);

/// Maximum-size bond with s in S and t not in S.
Bond largest_st_bond_bf(const Graph& g, int s, int t, int num_threads = 1);

/// Best bond with |S| exactly l, if any side of that cardinality is valid.
std::optional<Bond> largest_bond_side_size_bf(const Graph& g, int l);

/// Maximum total crossing weight on a 0/1-weighted graph; ties by size, then
/// lexicographically smallest side.
Bond largest_weight_bond_bf(const Graph& g, int num_threads = 1);

/// Maximum cut size with witness; no connectivity requirement on the sides.
std::pair<int, VertexSet> max_cut_bf(const Graph& g, int num_threads = 1);

/// All bonds, each reported once with 0 in S, in ascending side-mask order.
std::vector<Bond> enumerate_bonds(const Graph& g);

/// True iff the largest bond attains the upper bound |E| - |V| + 2.
bool is_yutsis_bf(const Graph& g);

}  // namespace oracle
}  // namespace bond

#endif
