#ifndef BOND_TEST_UTIL_HPP
#define BOND_TEST_UTIL_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "bond/graph.hpp"

namespace bondtest {

inline bond::Graph path(int n) {
    bond::Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline bond::Graph cycle(int n) {
    bond::Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline bond::Graph clique(int n) {
    bond::Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline bond::Graph star(int leaves) {
    bond::Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

inline bond::Graph complete_bipartite(int a, int b) {
    bond::Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
    return g;
}

// Two triangles sharing vertex 2.
inline bond::Graph bowtie() {
    bond::Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(2, 4);
    return g;
}

/// Calls fn for every connected graph on exactly n labeled vertices.
inline void for_each_connected_graph(int n, const std::function<void(const bond::Graph&)>& fn) {
    int pairs = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        bond::Graph g(n);
        int bit = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if ((mask >> bit) & 1) g.add_edge(i, j);
                ++bit;
            }
        if (bond::is_connected(g)) fn(g);
    }
}

/// Deterministic xorshift rng so tests behave identically everywhere.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9E3779B97F4A7C15ull) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

inline bond::Graph random_connected_graph(int n, int extra_edges, Rng& rng) {
    while (true) {
        bond::Graph g(n);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
        int want = std::min<int>(static_cast<int>(pairs.size()), n - 1 + extra_edges);
        for (int i = 0; i < want; ++i) {
            int j = i + rng.below(static_cast<int>(pairs.size()) - i);
            std::swap(pairs[i], pairs[j]);
        }
        for (int i = 0; i < want; ++i) g.add_edge(pairs[i].first, pairs[i].second);
        if (bond::is_connected(g)) return g;
    }
}

inline bool same_edges(const bond::Graph& a, const bond::Graph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
        return false;
    auto norm = [](const bond::Graph& g) {
        std::vector<std::tuple<int, int, int>> v;
        for (const bond::Edge& e : g.edges())
            v.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
        std::sort(v.begin(), v.end());
        return v;
    };
    return norm(a) == norm(b);
}

}  // namespace bondtest

#endif
