#include "bond/xi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bond {

XiInstance xi_power(const Graph& pattern, int h) {
    if (pattern.multigraph_allowed() || pattern.weighted())
        throw std::invalid_argument("xi_power: pattern must be simple and unweighted");
    if (!is_connected(pattern) || pattern.num_vertices() < 1)
        throw std::invalid_argument("xi_power: pattern must be connected");
    if (h < 0) throw std::invalid_argument("xi_power: negative height");
    double cost = std::pow(static_cast<double>(std::max(pattern.num_vertices(), 2)),
                           h + 1);
    if (cost > 5000.0)
        throw std::invalid_argument("xi_power: size guard |V(G)|^(h+1) <= 5000");

    XiInstance x;
    x.pattern = pattern;
    x.height = h;
    int p = pattern.num_vertices();

    int next_vertex = 2;
    x.splits.push_back({0, 0, 1, -1, {}, {}, {}});
    std::vector<int> active{0};
    std::vector<std::pair<std::pair<int, int>, int>> edge_acc;  // ((u,v),level) w=0

    for (int iter = 1; iter <= h; ++iter) {
        std::vector<int> next_active;
        for (int si : active) {
            int u = x.splits[si].u, v = x.splits[si].v;
            int base = next_vertex;
            next_vertex += p;
            x.splits[si].copy_vertices.resize(p);
            for (int i = 0; i < p; ++i) x.splits[si].copy_vertices[i] = base + i;
            for (int pe = 0; pe < pattern.num_edges(); ++pe) {
                const Edge& e = pattern.edge(pe);
                x.splits.push_back({iter, base + e.u, base + e.v, -1, {}, {}, {}});
                int child = static_cast<int>(x.splits.size()) - 1;
                x.splits[si].child_splits.push_back(child);
                next_active.push_back(child);
            }
            for (int i = 0; i < p; ++i) {
                edge_acc.push_back({{u, base + i}, iter});
                edge_acc.push_back({{v, base + i}, iter});
            }
        }
        active = std::move(next_active);
    }

    x.graph = Graph(next_vertex, /*multigraph_allowed=*/false, /*weighted=*/true);
    for (auto [uv, level] : edge_acc) {
        x.graph.add_edge(uv.first, uv.second, 0);
        x.edge_level.push_back(level);
    }
    for (int si : active) {
        x.splits[si].final_edge = x.graph.add_edge(x.splits[si].u, x.splits[si].v, 1);
        x.edge_level.push_back(h);
    }

    // Descendant sets, deepest levels first.
    for (int si = static_cast<int>(x.splits.size()) - 1; si >= 0; --si) {
        XiSplitEdge& sp = x.splits[si];
        sp.descendants = sp.copy_vertices;
        for (int c : sp.child_splits)
            for (int d : x.splits[c].descendants) sp.descendants.push_back(d);
        std::sort(sp.descendants.begin(), sp.descendants.end());
    }
    return x;
}

bool xi_edge_is_nice(const XiInstance& x, int split, const VertexSet& side) {
    const XiSplitEdge& sp = x.splits[split];
    bool su = side.contains(sp.u), sv = side.contains(sp.v);
    if (su != sv) return true;
    for (int d : sp.descendants)
        if (side.contains(d) != su) return false;
    return true;
}

bool xi_bond_is_nice(const XiInstance& x, const VertexSet& side) {
    for (std::size_t si = 0; si < x.splits.size(); ++si)
        if (x.splits[si].level < x.height &&
            !xi_edge_is_nice(x, static_cast<int>(si), side))
            return false;
    return true;
}

std::optional<std::vector<int>> xi_induced_cut(const XiInstance& x, int split,
                                               const VertexSet& side) {
    const XiSplitEdge& sp = x.splits[split];
    if (side.contains(sp.u) == side.contains(sp.v)) return std::nullopt;
    std::vector<int> cut;
    for (int pe = 0; pe < x.pattern.num_edges(); ++pe) {
        const Edge& e = x.pattern.edge(pe);
        if (side.contains(sp.copy_vertices[e.u]) !=
            side.contains(sp.copy_vertices[e.v]))
            cut.push_back(pe);
    }
    return cut;
}

bool xi_bond_is_uniform(const XiInstance& x, const VertexSet& side, int l) {
    if (!xi_bond_is_nice(x, side)) return false;
    for (std::size_t si = 0; si < x.splits.size(); ++si) {
        if (x.splits[si].level >= x.height) continue;
        auto cut = xi_induced_cut(x, static_cast<int>(si), side);
        if (cut && static_cast<int>(cut->size()) != l) return false;
    }
    return true;
}

Bond make_nice_bond(const XiInstance& x, const Bond& f) {
    VerifyResult vr = verify_bond(x.graph, f.side);
    if (!vr.ok()) throw std::invalid_argument("make_nice_bond: not a bond");
    int start_weight = vr.bond->weight;

    VertexSet side = f.side;
    // Offending levels strictly increase, so height rounds always suffice.
    for (int round = 0; round <= x.height + 1; ++round) {
        int offender = -1;
        for (std::size_t si = 0; si < x.splits.size(); ++si) {
            if (x.splits[si].level >= x.height) continue;
            if (!xi_edge_is_nice(x, static_cast<int>(si), side)) {
                offender = static_cast<int>(si);
                break;  // splits are ordered by level, then creation
            }
        }
        if (offender == -1) {
            Bond out = make_bond(x.graph, side);
            if (out.weight != start_weight)
                throw std::logic_error("make_nice_bond: weight drifted");
            return out;
        }
        if (round > x.height)
            throw std::logic_error("make_nice_bond: exceeded height rounds");

        const XiSplitEdge& sp = x.splits[offender];
        VertexSet holder = side.contains(sp.u) ? side : side.complement();
        holder.erase(sp.v);
        // Component of the holder side minus v that contains u.
        for (const VertexSet& comp : connected_components_within(x.graph, holder))
            if (comp.contains(sp.u)) {
                side = comp;
                break;
            }
    }
    throw std::logic_error("make_nice_bond: unreachable");
}

Bond make_uniform_bond_impl(const XiInstance& x, const Bond& nice_bond, int* l_out) {
    if (x.height == 0) {
        *l_out = 1;
        return nice_bond;  // the K_2 edge itself; weight 1 = l^0
    }
    int best = -1;
    std::vector<int> best_cut;
    for (std::size_t si = 0; si < x.splits.size(); ++si) {
        if (x.splits[si].level >= x.height) continue;
        auto cut = xi_induced_cut(x, static_cast<int>(si), nice_bond.side);
        if (cut && static_cast<int>(cut->size()) > best) {
            best = static_cast<int>(cut->size());
            best_cut = std::move(*cut);
        }
    }
    if (best <= 0) {
        // Weight-0 bond: no split edge carries a pattern cut. Any uniform
        // bond dominates weight 0; use the cut around pattern vertex 0.
        best_cut.clear();
        for (int pe = 0; pe < x.pattern.num_edges(); ++pe) {
            const Edge& e = x.pattern.edge(pe);
            if (e.u == 0 || e.v == 0) best_cut.push_back(pe);
        }
        best = static_cast<int>(best_cut.size());
    }
    *l_out = best;
    return lift_cut(x, best_cut, x.height);
}

std::pair<Bond, int> make_uniform_bond(const XiInstance& x, const Bond& f) {
    Bond nice = make_nice_bond(x, f);
    int l = 0;
    Bond out = make_uniform_bond_impl(x, nice, &l);
    if (out.weight < f.weight)
        throw std::logic_error("make_uniform_bond: weight decreased");
    return {std::move(out), l};
}

std::vector<int> extract_cut(const XiInstance& x, const Bond& f, int l) {
    if (x.height == 0)
        throw std::invalid_argument("extract_cut: no embedded pattern at height 0");
    if (!xi_bond_is_uniform(x, f.side, l))
        throw std::invalid_argument("extract_cut: bond is not l-uniform");
    auto cut = xi_induced_cut(x, 0, f.side);
    if (!cut || static_cast<int>(cut->size()) != l)
        throw std::invalid_argument("extract_cut: top split does not carry an l-cut");
    return *cut;
}

std::optional<VertexSet> cut_set_side(const Graph& g, const std::vector<int>& cut) {
    std::vector<char> removed(g.num_edges(), 0);
    for (int e : cut) {
        if (e < 0 || e >= g.num_edges()) return std::nullopt;
        removed[e] = 1;
    }
    auto adj = adjacency_lists(g);
    int n = g.num_vertices();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int v = 0; v < n; ++v) {
        if (comp[v] != -1) continue;
        std::vector<int> queue{v};
        comp[v] = ncomp;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (auto [w, ei] : adj[queue[qi]])
                if (!removed[ei] && comp[w] == -1) {
                    comp[w] = ncomp;
                    queue.push_back(w);
                }
        ++ncomp;
    }
    // Two-color the component graph spanned by the cut edges; every cut edge
    // must end up bicolored.
    std::vector<std::vector<int>> cadj(ncomp);
    for (int e : cut) {
        int a = comp[g.edge(e).u], b = comp[g.edge(e).v];
        if (a == b) return std::nullopt;
        cadj[a].push_back(b);
        cadj[b].push_back(a);
    }
    std::vector<int> color(ncomp, -1);
    for (int c = 0; c < ncomp; ++c) {
        if (color[c] != -1) continue;
        color[c] = (c == comp[0]) ? 1 : 0;
        std::vector<int> queue{c};
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int w : cadj[queue[qi]]) {
                if (color[w] == -1) {
                    color[w] = 1 - color[queue[qi]];
                    queue.push_back(w);
                } else if (color[w] == color[queue[qi]]) {
                    return std::nullopt;
                }
            }
    }
    VertexSet side(n);
    for (int v = 0; v < n; ++v)
        if (color[comp[v]] == color[comp[0]]) side.insert(v);
    return side;
}

Bond lift_cut(const XiInstance& x, const std::vector<int>& cut, int h) {
    if (h != x.height) throw std::invalid_argument("lift_cut: height mismatch");
    long long weight = 1;
    if (h > 0) {
        if (cut.empty()) throw std::invalid_argument("lift_cut: empty cut");
        for (int i = 0; i < h; ++i) {
            weight *= static_cast<long long>(cut.size());
            if (weight > 1000000) throw std::invalid_argument("lift_cut: l^h too large");
        }
    }
    std::optional<VertexSet> pattern_side = cut_set_side(x.pattern, cut);
    if (h > 0 && !pattern_side)
        throw std::invalid_argument("lift_cut: not a valid cut-set of the pattern");

    std::vector<char> in_cut(x.pattern.num_edges(), 0);
    for (int e : cut) in_cut[e] = 1;

    int n = x.graph.num_vertices();
    VertexSet side(n);
    side.insert(x.splits[0].u);  // v stays on side 2

    std::function<void(int, bool)> assign = [&](int si, bool crossed) {
        const XiSplitEdge& sp = x.splits[si];
        if (sp.level == x.height) return;
        bool u_side = side.contains(sp.u);
        if (!crossed) {
            // The whole gadget follows the endpoints; side-2 vertices are
            // simply left out of the set.
            if (u_side)
                for (int d : sp.descendants) side.insert(d);
            return;
        }
        for (int pv = 0; pv < x.pattern.num_vertices(); ++pv) {
            bool to_u = pattern_side->contains(pv);
            bool target = to_u ? u_side : !u_side;
            if (target) side.insert(sp.copy_vertices[pv]);
        }
        for (int pe = 0; pe < x.pattern.num_edges(); ++pe)
            assign(sp.child_splits[pe], in_cut[pe] != 0);
    };
    assign(0, true);

    Bond b = make_bond(x.graph, side);
    if (b.weight != static_cast<int>(weight))
        throw std::logic_error("lift_cut: weight is not l^h");
    if (h > 0 && !xi_bond_is_uniform(x, b.side, static_cast<int>(cut.size())))
        throw std::logic_error("lift_cut: result not uniform");
    return b;
}

UnweightedImage binary_to_unweighted(const Graph& h) {
    if (!h.weighted())
        throw std::invalid_argument("binary_to_unweighted: input must be weighted");
    if (!is_connected(h))
        throw std::invalid_argument("binary_to_unweighted: input must be connected");
    UnweightedImage out;
    out.original_vertices = h.num_vertices();
    for (const Edge& e : h.edges()) out.zero_edges += e.weight == 0;
    out.multiplicity = std::max(out.zero_edges, 1);

    Graph overlay(h.num_vertices(), /*multigraph_allowed=*/true);
    for (int ei = 0; ei < h.num_edges(); ++ei) {
        const Edge& e = h.edge(ei);
        int copies = e.weight == 1 ? out.multiplicity : 1;
        for (int c = 0; c < copies; ++c) {
            overlay.add_edge(e.u, e.v);
            out.source_edge.push_back(ei);
        }
    }
    out.graph = subdivide_all(overlay);
    return out;
}

}  // namespace bond
