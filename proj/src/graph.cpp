#include "bond/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace bond {

Graph::Graph(int num_vertices, bool multigraph_allowed, bool weighted)
    : n_(num_vertices), multigraph_(multigraph_allowed), weighted_(weighted),
      degree_(num_vertices, 0) {
    if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
}

std::uint64_t Graph::pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

int Graph::add_edge(int u, int v, int weight) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (weight != 0 && weight != 1)
        throw std::invalid_argument("edge weights must be 0 or 1");
    if (!weighted_ && weight != 1)
        throw std::invalid_argument("weight on unweighted graph");
    std::uint64_t key = pair_key(u, v);
    if (!multigraph_ && edge_keys_.count(key))
        throw std::invalid_argument("duplicate edge on simple graph");
    edge_keys_.insert(key);
    edges_.push_back({u, v, weight});
    ++degree_[u];
    ++degree_[v];
    return static_cast<int>(edges_.size()) - 1;
}

bool Graph::has_edge(int u, int v) const {
    return edge_keys_.count(pair_key(u, v)) > 0;
}

int Graph::degree(int v) const { return degree_.at(v); }

int Graph::total_weight() const {
    int w = 0;
    for (const Edge& e : edges_) w += e.weight;
    return w;
}

std::vector<std::vector<std::pair<int, int>>> adjacency_lists(const Graph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.num_vertices());
    for (int i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edge(i);
        adj[e.u].push_back({e.v, i});
        adj[e.v].push_back({e.u, i});
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());
    return adj;
}

namespace {

// BFS over the subgraph induced by `allowed`, starting from `start`.
VertexSet bfs_reach(const std::vector<std::vector<std::pair<int, int>>>& adj,
                    const VertexSet& allowed, int start) {
    VertexSet seen(static_cast<int>(adj.size()));
    std::vector<int> queue{start};
    seen.insert(start);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (auto [w, idx] : adj[v]) {
            (void)idx;
            if (allowed.contains(w) && !seen.contains(w)) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_connected(const Graph& g) {
    int n = g.num_vertices();
    if (n <= 1) return true;
    auto adj = adjacency_lists(g);
    return bfs_reach(adj, VertexSet::full(n), 0).count() == n;
}

std::vector<VertexSet> connected_components(const Graph& g) {
    return connected_components_within(g, VertexSet::full(g.num_vertices()));
}

std::vector<VertexSet> connected_components_within(const Graph& g,
                                                   const VertexSet& within) {
    auto adj = adjacency_lists(g);
    std::vector<VertexSet> comps;
    VertexSet done(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!within.contains(v) || done.contains(v)) continue;
        VertexSet comp = bfs_reach(adj, within, v);
        done = done | comp;
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<int> cut_set(const Graph& g, const VertexSet& side) {
    std::vector<int> out;
    for (int i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edge(i);
        if (side.contains(e.u) != side.contains(e.v)) out.push_back(i);
    }
    return out;
}

const char* to_string(BondDefect d) {
    switch (d) {
        case BondDefect::None: return "OK";
        case BondDefect::EmptySide: return "EMPTY_SIDE";
        case BondDefect::FullSide: return "FULL_SIDE";
        case BondDefect::LeftDisconnected: return "LEFT_DISCONNECTED";
        case BondDefect::RightDisconnected: return "RIGHT_DISCONNECTED";
    }
    return "?";
}

VerifyResult verify_bond(const Graph& g, const VertexSet& side) {
    if (!is_connected(g))
        throw std::invalid_argument("verify_bond: graph must be connected");
    int n = g.num_vertices();
    int k = side.count();
    if (k == 0) return {std::nullopt, BondDefect::EmptySide};
    if (k == n) return {std::nullopt, BondDefect::FullSide};
    if (connected_components_within(g, side).size() != 1)
        return {std::nullopt, BondDefect::LeftDisconnected};
    if (connected_components_within(g, side.complement()).size() != 1)
        return {std::nullopt, BondDefect::RightDisconnected};
    Bond b;
    b.side = side;
    b.crossing_edges = cut_set(g, side);
    b.size = static_cast<int>(b.crossing_edges.size());
    b.weight = 0;
    for (int idx : b.crossing_edges) b.weight += g.edge(idx).weight;
    return {std::move(b), BondDefect::None};
}

Bond make_bond(const Graph& g, const VertexSet& side) {
    VerifyResult r = verify_bond(g, side);
    if (!r.ok())
        throw std::logic_error(std::string("side is not a bond: ") +
                               to_string(r.defect));
    return std::move(*r.bond);
}

Graph subdivide_all(const Graph& g) {
    if (g.weighted())
        throw std::invalid_argument("subdivide_all: weighted input not supported");
    int n = g.num_vertices();
    Graph out(n + g.num_edges(), /*multigraph_allowed=*/false);
    for (int i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edge(i);
        int mid = n + i;
        out.add_edge(e.u, mid);
        out.add_edge(mid, e.v);
    }
    return out;
}

}  // namespace bond
