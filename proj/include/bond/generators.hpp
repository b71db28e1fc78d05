#ifndef BOND_GENERATORS_HPP
#define BOND_GENERATORS_HPP

#include <vector>

#include "bond/graph.hpp"

namespace bond {

/// psi(G): n disjoint copies of G plus two adjacent vertices joined to every
/// copy vertex. Copy c maps vertex v to c*n+v; the extra vertices are n*n and
/// n*n+1. |V| = n^2+2 and |E| = n|E(G)| + 2n^2 + 1.
Graph psi(const Graph& g);

inline int psi_vertex_a(int n) { return n * n; }
inline int psi_vertex_b(int n) { return n * n + 1; }

/// The side-size-constrained hardness instance: overlay one edge on every
/// vertex pair of a d-regular graph (parallel where an edge already exists),
/// then subdivide everything. Carries the target values of the construction.
struct W1Instance {
    Graph graph;
    int expected_bond;  // d*k + k*(n-k)
    int expected_side;  // k + C(k,2)
};
W1Instance w1_instance(const Graph& h, int k);

/// Disjoint union with one chosen pivot per input contracted into a single
/// vertex (id 0 of the result). The first input keeps its vertex order.
Graph or_compose_bond(const std::vector<Graph>& gs, const std::vector<int>& pivots);

/// Chain composition for st instances: t_i is identified with s_{i+1}.
struct StInstance {
    Graph graph;
    int s = 0, t = 0;
};
StInstance or_compose_st(const std::vector<StInstance>& instances);

}  // namespace bond

#endif
