#include "bond/generators.hpp"

#include <stdexcept>

namespace bond {

Graph psi(const Graph& g) {
    if (g.multigraph_allowed() || g.weighted())
        throw std::invalid_argument("psi: input must be simple and unweighted");
    if (!is_connected(g)) throw std::invalid_argument("psi: input must be connected");
    int n = g.num_vertices();
    if (n < 1) throw std::invalid_argument("psi: empty input");

    Graph out(n * n + 2);
    for (int c = 0; c < n; ++c)
        for (const Edge& e : g.edges()) out.add_edge(c * n + e.u, c * n + e.v);
    int va = psi_vertex_a(n), vb = psi_vertex_b(n);
    out.add_edge(va, vb);
    for (int v = 0; v < n * n; ++v) {
        out.add_edge(v, va);
        out.add_edge(v, vb);
    }
    return out;
}

W1Instance w1_instance(const Graph& h, int k) {
    if (h.multigraph_allowed() || h.weighted())
        throw std::invalid_argument("w1_instance: input must be simple and unweighted");
    int n = h.num_vertices();
    if (n < 1) throw std::invalid_argument("w1_instance: empty input");
    int d = h.degree(0);
    for (int v = 1; v < n; ++v)
        if (h.degree(v) != d)
            throw std::invalid_argument("w1_instance: input must be regular");

    Graph overlay(n, /*multigraph_allowed=*/true);
    for (const Edge& e : h.edges()) overlay.add_edge(e.u, e.v);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) overlay.add_edge(u, v);

    W1Instance out;
    out.graph = subdivide_all(overlay);
    out.expected_bond = d * k + k * (n - k);
    out.expected_side = k + k * (k - 1) / 2;
    return out;
}

Graph or_compose_bond(const std::vector<Graph>& gs, const std::vector<int>& pivots) {
    if (gs.empty()) throw std::invalid_argument("or_compose_bond: no inputs");
    if (gs.size() != pivots.size())
        throw std::invalid_argument("or_compose_bond: one pivot per input");
    if (gs.size() == 1) return gs[0];

    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (!is_connected(gs[i]) || gs[i].num_vertices() < 2)
            throw std::invalid_argument("or_compose_bond: inputs must be connected, >=2 vertices");
        if (pivots[i] < 0 || pivots[i] >= gs[i].num_vertices())
            throw std::invalid_argument("or_compose_bond: pivot out of range");
    }

    int total = 1;
    for (const Graph& g : gs) total += g.num_vertices() - 1;
    Graph out(total);
    int next = 1;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        std::vector<int> map(gs[i].num_vertices());
        for (int v = 0; v < gs[i].num_vertices(); ++v)
            map[v] = v == pivots[i] ? 0 : next++;
        for (const Edge& e : gs[i].edges()) out.add_edge(map[e.u], map[e.v]);
    }
    return out;
}

StInstance or_compose_st(const std::vector<StInstance>& instances) {
    if (instances.empty()) throw std::invalid_argument("or_compose_st: no inputs");
    for (const StInstance& in : instances) {
        if (in.s == in.t) throw std::invalid_argument("or_compose_st: s == t");
        if (!is_connected(in.graph))
            throw std::invalid_argument("or_compose_st: inputs must be connected");
    }
    if (instances.size() == 1) return instances[0];

    StInstance out;
    int total = instances[0].graph.num_vertices();
    for (std::size_t i = 1; i < instances.size(); ++i)
        total += instances[i].graph.num_vertices() - 1;
    out.graph = Graph(total);

    const Graph& first = instances[0].graph;
    for (const Edge& e : first.edges()) out.graph.add_edge(e.u, e.v);
    out.s = instances[0].s;
    int glue = instances[0].t;  // id that the next instance's s collapses onto
    int next = first.num_vertices();
    for (std::size_t i = 1; i < instances.size(); ++i) {
        const StInstance& in = instances[i];
        std::vector<int> map(in.graph.num_vertices());
        for (int v = 0; v < in.graph.num_vertices(); ++v)
            map[v] = v == in.s ? glue : next++;
        for (const Edge& e : in.graph.edges()) out.graph.add_edge(map[e.u], map[e.v]);
        glue = map[in.t];
    }
    out.t = glue;
    return out;
}

}  // namespace bond
