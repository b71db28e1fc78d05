#include "bond/minor.hpp"

#include <algorithm>
#include <stdexcept>

namespace bond {

namespace {

bool sets_adjacent(const Graph& g, const VertexSet& a, const VertexSet& b) {
    for (const Edge& e : g.edges())
        if ((a.contains(e.u) && b.contains(e.v)) ||
            (a.contains(e.v) && b.contains(e.u)))
            return true;
    return false;
}

bool set_connected(const Graph& g, const VertexSet& s) {
    return connected_components_within(g, s).size() == 1;
}

}  // namespace

void validate_minor_model(const Graph& g, const MinorModel& m) {
    std::vector<const VertexSet*> all{&m.side_a, &m.side_b};
    for (const VertexSet& leg : m.legs) all.push_back(&leg);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i]->empty()) throw std::logic_error("minor model: empty branch set");
        if (!set_connected(g, *all[i]))
            throw std::logic_error("minor model: branch set not connected");
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i]->intersects(*all[j]))
                throw std::logic_error("minor model: branch sets overlap");
    }
    for (const VertexSet& leg : m.legs) {
        if (!sets_adjacent(g, leg, m.side_a))
            throw std::logic_error("minor model: leg not adjacent to side_a");
        if (!sets_adjacent(g, leg, m.side_b))
            throw std::logic_error("minor model: leg not adjacent to side_b");
    }
}

namespace {

// Components of G - (A u B) adjacent to both A and B.
std::vector<VertexSet> qualifying_legs(const Graph& g, const VertexSet& a,
                                       const VertexSet& b) {
    VertexSet rest = (a | b).complement();
    std::vector<VertexSet> legs;
    for (VertexSet& comp : connected_components_within(g, rest))
        if (sets_adjacent(g, comp, a) && sets_adjacent(g, comp, b))
            legs.push_back(std::move(comp));
    return legs;
}

}  // namespace

std::optional<MinorModel> find_k2k_minor(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("find_k2k_minor: k must be positive");
    int n = g.num_vertices();
    auto adj = adjacency_lists(g);
    auto adjacent_to = [&](int v, const VertexSet& s) {
        for (auto [w, ei] : adj[v]) {
            (void)ei;
            if (s.contains(w)) return true;
        }
        return false;
    };

    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            VertexSet A = VertexSet::of(n, {a});
            VertexSet B = VertexSet::of(n, {b});
            std::size_t legs = qualifying_legs(g, A, B).size();
            if (legs < static_cast<std::size_t>(k)) {
                // One absorption round: keep a vertex on a side only if it
                // increases the number of legs.
                for (int v = 0; v < n; ++v) {
                    if (A.contains(v) || B.contains(v)) continue;
                    if (adjacent_to(v, A)) {
                        VertexSet trial = A;
                        trial.insert(v);
                        std::size_t got = qualifying_legs(g, trial, B).size();
                        if (got > legs) {
                            A = trial;
                            legs = got;
                            continue;
                        }
                    }
                    if (adjacent_to(v, B)) {
                        VertexSet trial = B;
                        trial.insert(v);
                        std::size_t got = qualifying_legs(g, A, trial).size();
                        if (got > legs) {
                            B = trial;
                            legs = got;
                        }
                    }
                }
            }
            if (legs >= static_cast<std::size_t>(k)) {
                MinorModel m;
                m.side_a = A;
                m.side_b = B;
                m.legs = qualifying_legs(g, A, B);
                validate_minor_model(g, m);
                return m;
            }
        }
    }
    return std::nullopt;
}

namespace {

// owner[v] = 0 for side_a, 1 for side_b, 2+i for leg i; BFS-attaches every
// uncovered vertex to the branch set of its BFS parent.
std::vector<int> absorb_owners(const Graph& g, const MinorModel& m) {
    int n = g.num_vertices();
    std::vector<int> owner(n, -1);
    std::vector<int> queue;
    auto seed = [&](const VertexSet& s, int id) {
        for (int v : s.to_vector()) owner[v] = id;
    };
    seed(m.side_a, 0);
    seed(m.side_b, 1);
    for (std::size_t i = 0; i < m.legs.size(); ++i) seed(m.legs[i], 2 + static_cast<int>(i));
    for (int v = 0; v < n; ++v)
        if (owner[v] != -1) queue.push_back(v);
    auto adj = adjacency_lists(g);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (auto [w, ei] : adj[v]) {
            (void)ei;
            if (owner[w] == -1) {
                owner[w] = owner[v];
                queue.push_back(w);
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (owner[v] == -1)
            throw std::invalid_argument("bond_from_minor: graph must be connected");
    return owner;
}

VertexSet owners_to_set(const std::vector<int>& owner, int id) {
    VertexSet s(static_cast<int>(owner.size()));
    for (std::size_t v = 0; v < owner.size(); ++v)
        if (owner[v] == id) s.insert(static_cast<int>(v));
    return s;
}

}  // namespace

Bond bond_from_minor(const Graph& g, const MinorModel& m) {
    validate_minor_model(g, m);
    std::vector<int> owner = absorb_owners(g, m);
    Bond b = make_bond(g, owners_to_set(owner, 0));
    if (b.size < static_cast<int>(m.legs.size()))
        throw std::logic_error("bond_from_minor: fewer crossing edges than legs");
    return b;
}

Bond st_bond_from_minor(const Graph& g, int s, int t, const MinorModel& m) {
    validate_minor_model(g, m);
    int p = static_cast<int>(m.legs.size());
    if (p < 2) throw std::invalid_argument("st_bond_from_minor: need at least 2 legs");
    int k = p / 2;
    if (!is_biconnected(g))
        throw std::invalid_argument("st_bond_from_minor: graph must be 2-connected");

    std::vector<int> owner = absorb_owners(g, m);
    int n = g.num_vertices();
    int os = owner[s], ot = owner[t];

    auto side_of = [&](std::initializer_list<int> ids) {
        VertexSet side(n);
        for (int id : ids)
            for (int v = 0; v < n; ++v)
                if (owner[v] == id) side.insert(v);
        return side;
    };

    if (os != ot) {
        // s and t sit in separable branch sets: one hub plus one leg against
        // the rest always works.
        VertexSet side(n);
        if (os == 0 || os == 1) {
            int leg = 2;
            while (leg - 2 < p && leg == ot) ++leg;
            side = side_of({os, leg});
        } else {  // s in a leg
            int hub = (ot == 0) ? 1 : 0;
            side = side_of({hub, os});
        }
        Bond b = make_bond(g, side);
        if (side.contains(t) || !side.contains(s))
            throw std::logic_error("st_bond_from_minor: side does not separate");
        if (b.size < k) throw std::logic_error("st_bond_from_minor: undersized easy case");
        return b;
    }

    // Same branch set: split U = hub + one leg along a spanning tree rooted
    // at s, guided by internally disjoint paths to a vertex outside U.
    VertexSet U(n);
    if (os == 0 || os == 1) {
        U = side_of({os, 2 + (p - 1)});
    } else {
        U = side_of({0, os});
    }
    VertexSet Q = U.complement();
    int v_out = Q.to_vector().front();

    auto [ps, pt] = internally_disjoint_paths(g, s, t, v_out);
    VertexSet on_ps(n), on_pt(n);
    for (std::size_t i = 0; i < ps.size() && U.contains(ps[i]); ++i) on_ps.insert(ps[i]);
    for (std::size_t i = 0; i < pt.size() && U.contains(pt[i]); ++i) on_pt.insert(pt[i]);

    // BFS tree of G[U] rooted at s; every unmarked vertex inherits the side of
    // its first marked ancestor.
    auto adj = adjacency_lists(g);
    std::vector<int> parent(n, -1);
    std::vector<int> queue{s};
    VertexSet seen(n);
    seen.insert(s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (auto [w, ei] : adj[x]) {
            (void)ei;
            if (U.contains(w) && !seen.contains(w)) {
                seen.insert(w);
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    VertexSet u_s(n), u_t(n);
    for (int x : U.to_vector()) {
        int w = x;
        while (!on_ps.contains(w) && !on_pt.contains(w)) {
            w = parent[w];
            if (w == -1) throw std::logic_error("st_bond_from_minor: no marked ancestor");
        }
        if (on_ps.contains(w)) u_s.insert(x);
        else u_t.insert(x);
    }

    int cross_s = 0, cross_t = 0;
    for (const Edge& e : g.edges()) {
        bool qu = Q.contains(e.u), qv = Q.contains(e.v);
        if (qu == qv) continue;
        int inside = qu ? e.v : e.u;
        if (u_s.contains(inside)) ++cross_s;
        else ++cross_t;
    }
    VertexSet side = cross_s >= k ? u_s : (u_t | Q);
    if (cross_s < k && cross_t < k)
        throw std::logic_error("st_bond_from_minor: neither side reaches k");
    Bond b = make_bond(g, side);
    if (b.side.contains(s) == b.side.contains(t))
        throw std::logic_error("st_bond_from_minor: side does not separate s and t");
    if (b.size < k) throw std::logic_error("st_bond_from_minor: undersized split");
    return b;
}

WinwinResult winwin_preprocess(const Graph& g, int k) {
    if (!is_connected(g))
        throw std::invalid_argument("winwin_preprocess: graph must be connected");
    WinwinResult out;
    if (k >= 1) {
        if (auto model = find_k2k_minor(g, k)) {
            Bond b = bond_from_minor(g, *model);
            if (b.size < k) throw std::logic_error("winwin: certificate below k");
            out.early_yes = std::move(b);
            return out;
        }
    }
    out.td = heuristic_tree_decomposition(g);
    return out;
}

Bond lift_block_bond(const Graph& g, const StBlockTask& task,
                     const Bond& block_bond, int anchor) {
    std::vector<char> removed(g.num_edges(), 0);
    for (int e : block_bond.crossing_edges) removed[task.edge_to_g[e]] = 1;
    auto adj = adjacency_lists(g);
    VertexSet side(g.num_vertices());
    std::vector<int> queue{anchor};
    side.insert(anchor);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (auto [w, ei] : adj[x]) {
            if (removed[ei] || side.contains(w)) continue;
            side.insert(w);
            queue.push_back(w);
        }
    }
    Bond b = make_bond(g, side);
    if (b.size != block_bond.size)
        throw std::logic_error("lift_block_bond: crossing set changed");
    return b;
}

StPreprocessResult st_preprocess(const Graph& g, int s, int t, int k) {
    if (!is_connected(g))
        throw std::invalid_argument("st_preprocess: graph must be connected");
    if (s == t || s < 0 || t < 0 || s >= g.num_vertices() || t >= g.num_vertices())
        throw std::invalid_argument("st_preprocess: bad s/t");

    BlockCutTree bct = block_cut_tree(g);
    int nblocks = static_cast<int>(bct.blocks.size());

    // Bipartite block-cut tree: nodes 0..nblocks-1 are blocks, then one node
    // per cut vertex.
    std::vector<int> cut_list = bct.cut_vertices.to_vector();
    std::vector<int> cut_node_of(g.num_vertices(), -1);
    for (std::size_t i = 0; i < cut_list.size(); ++i)
        cut_node_of[cut_list[i]] = nblocks + static_cast<int>(i);
    int total_nodes = nblocks + static_cast<int>(cut_list.size());
    std::vector<std::vector<int>> tree_adj(total_nodes);
    for (auto [blk, cv] : bct.tree_edges) {
        tree_adj[blk].push_back(cut_node_of[cv]);
        tree_adj[cut_node_of[cv]].push_back(blk);
    }

    auto locate = [&](int v) {
        if (cut_node_of[v] != -1) return cut_node_of[v];
        for (int b = 0; b < nblocks; ++b)
            if (bct.blocks[b].contains(v)) return b;
        throw std::logic_error("vertex in no block");
    };
    int src = locate(s), dst = locate(t);

    std::vector<int> prev(total_nodes, -2);
    std::vector<int> queue{src};
    prev[src] = -1;
    for (std::size_t qi = 0; qi < queue.size() && prev[dst] == -2; ++qi)
        for (int w : tree_adj[queue[qi]])
            if (prev[w] == -2) {
                prev[w] = queue[qi];
                queue.push_back(w);
            }
    if (prev[dst] == -2) throw std::logic_error("block-cut tree disconnected");
    std::vector<int> path;
    for (int x = dst; x != -1; x = prev[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());

    // Path blocks with their nearest-to-s / nearest-to-t vertices: the cut
    // vertices bounding each block on the path, with s and t at the ends.
    struct PathBlock {
        int block;
        int s_prime, t_prime;
    };
    std::vector<PathBlock> pblocks;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] >= nblocks) continue;
        int sp = (i == 0) ? s : cut_list[path[i - 1] - nblocks];
        int tp = (i + 1 == path.size()) ? t : cut_list[path[i + 1] - nblocks];
        pblocks.push_back({path[i], sp, tp});
    }

    StPreprocessResult out;
    out.from_original.assign(g.num_vertices(), -1);

    VertexSet kept(g.num_vertices());
    for (const PathBlock& pb : pblocks) kept = kept | bct.blocks[pb.block];
    out.to_original = kept.to_vector();
    for (std::size_t i = 0; i < out.to_original.size(); ++i)
        out.from_original[out.to_original[i]] = static_cast<int>(i);

    out.reduced = Graph(static_cast<int>(out.to_original.size()),
                        g.multigraph_allowed(), g.weighted());
    std::vector<int> reduced_edge_of(g.num_edges(), -1);
    for (const PathBlock& pb : pblocks)
        for (int ei : bct.block_edges[pb.block]) {
            const Edge& e = g.edge(ei);
            reduced_edge_of[ei] = out.reduced.add_edge(
                out.from_original[e.u], out.from_original[e.v], e.weight);
        }

    for (const PathBlock& pb : pblocks) {
        StBlockTask task;
        task.to_g = bct.blocks[pb.block].to_vector();
        std::vector<int> local_of(g.num_vertices(), -1);
        for (std::size_t i = 0; i < task.to_g.size(); ++i)
            local_of[task.to_g[i]] = static_cast<int>(i);
        task.block = Graph(static_cast<int>(task.to_g.size()),
                           g.multigraph_allowed(), g.weighted());
        for (int ei : bct.block_edges[pb.block]) {
            const Edge& e = g.edge(ei);
            task.block.add_edge(local_of[e.u], local_of[e.v], e.weight);
            task.edge_to_g.push_back(ei);
        }
        task.s_local = local_of[pb.s_prime];
        task.t_local = local_of[pb.t_prime];
        out.tasks.push_back(std::move(task));
    }

    // Win/win pass: a bridge answers k <= 1 immediately; a 2k-leg minor in a
    // 2-connected block certifies the answer for any k.
    for (const StBlockTask& task : out.tasks) {
        if (task.block.num_edges() == 1) {
            if (k <= 1) {
                Bond local = make_bond(task.block,
                                       VertexSet::of(2, {task.s_local}));
                out.early_yes = lift_block_bond(g, task, local, s);
                return out;
            }
            continue;
        }
        if (task.block.num_vertices() < 3 || k < 1) continue;
        if (auto model = find_k2k_minor(task.block, 2 * k)) {
            Bond local = st_bond_from_minor(task.block, task.s_local,
                                            task.t_local, *model);
            if (!local.side.contains(task.s_local))
                local = make_bond(task.block, local.side.complement());
            Bond lifted = lift_block_bond(g, task, local, s);
            if (lifted.size < k) throw std::logic_error("st win/win: certificate below k");
            if (lifted.side.contains(t))
                throw std::logic_error("st win/win: does not separate");
            out.early_yes = std::move(lifted);
            return out;
        }
    }

    // Stitch per-block decompositions through singleton cut-vertex bags.
    std::vector<std::vector<int>> block_bag_ranges;
    for (const StBlockTask& task : out.tasks) {
        TreeDecomposition bd = heuristic_tree_decomposition(task.block);
        int base = static_cast<int>(out.td.bags.size());
        for (auto& bag : bd.bags) {
            std::vector<int> mapped;
            for (int v : bag) mapped.push_back(out.from_original[task.to_g[v]]);
            std::sort(mapped.begin(), mapped.end());
            out.td.bags.push_back(std::move(mapped));
        }
        for (auto [a, b] : bd.tree_edges)
            out.td.tree_edges.push_back({base + a, base + b});
        std::vector<int> range{base, static_cast<int>(out.td.bags.size())};
        block_bag_ranges.push_back(range);
    }
    // Internal cut vertices are the block boundaries along the path.
    for (std::size_t i = 0; i + 1 < out.tasks.size(); ++i) {
        int cv = out.from_original[pblocks[i].t_prime];
        int cut_bag = static_cast<int>(out.td.bags.size());
        out.td.bags.push_back({cv});
        for (std::size_t j : {i, i + 1}) {
            for (int b = block_bag_ranges[j][0]; b < block_bag_ranges[j][1]; ++b) {
                const auto& bag = out.td.bags[b];
                if (std::binary_search(bag.begin(), bag.end(), cv)) {
                    out.td.tree_edges.push_back({cut_bag, b});
                    break;
                }
            }
        }
    }
    if (auto bad = validate_tree_decomposition(out.reduced, out.td))
        throw std::logic_error("st_preprocess: stitched decomposition invalid: " +
                               bad->message);
    return out;
}

}  // namespace bond
