#include "bond/oracle.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <thread>

namespace bond {
namespace oracle {

namespace {

using Mask = std::uint32_t;

struct MaskGraph {
    int n = 0;
    Mask full = 0;
    std::vector<Mask> adj;          // neighbor mask per vertex
    std::vector<std::pair<Mask, int>> edge_bits;  // (bit(u)|bit(v), weight)

    explicit MaskGraph(const Graph& g) : n(g.num_vertices()) {
        full = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
        adj.assign(n, 0);
        for (const Edge& e : g.edges()) {
            adj[e.u] |= Mask{1} << e.v;
            adj[e.v] |= Mask{1} << e.u;
            edge_bits.push_back({(Mask{1} << e.u) | (Mask{1} << e.v), e.weight});
        }
    }

    bool side_connected(Mask side) const {
        if (!side) return false;
        Mask reached = side & (~side + 1);  // lowest set bit
        Mask frontier = reached;
        while (frontier) {
            Mask nxt = 0;
            Mask f = frontier;
            while (f) {
                int v = std::countr_zero(f);
                f &= f - 1;
                nxt |= adj[v];
            }
            nxt &= side & ~reached;
            reached |= nxt;
            frontier = nxt;
        }
        return reached == side;
    }

    // (unweighted crossing count, crossing weight)
    std::pair<int, int> cut_value(Mask side) const {
        int cnt = 0, w = 0;
        for (auto [bits, weight] : edge_bits) {
            Mask inter = bits & side;
            if (inter != 0 && inter != bits) {
                ++cnt;
                w += weight;
            }
        }
        return {cnt, w};
    }
};

void check_guard(const Graph& g, int min_vertices) {
    if (g.num_vertices() > kMaxVertices)
        throw std::invalid_argument("oracle guard: more than 24 vertices");
    if (g.num_vertices() < min_vertices)
        throw std::invalid_argument("oracle: graph too small");
}

void check_connected(const Graph& g) {
    if (!is_connected(g))
        throw std::invalid_argument("oracle: graph must be connected");
}

VertexSet mask_to_set(Mask m, int n) {
    VertexSet s(n);
    while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        s.insert(v);
    }
    return s;
}

// Smallest characteristic value wins ties, matching VertexSet::lex_less.
bool mask_lex_less(Mask a, Mask b) { return a < b; }

struct Best {
    bool found = false;
    long long score = -1;  // primary, then secondary packed by caller
    int secondary = -1;
    Mask side = 0;

    void offer(long long sc, int sec, Mask m) {
        if (!found || sc > score || (sc == score && sec > secondary) ||
            (sc == score && sec == secondary && mask_lex_less(m, side))) {
            found = true;
            score = sc;
            secondary = sec;
            side = m;
        }
    }
    void merge(const Best& o) {
        if (o.found) offer(o.score, o.secondary, o.side);
    }
};

// Scans all masks of `free_bits` free vertex positions, mapping each to a full
// side mask via `expand`, scoring valid sides with `eval`. Work is split by
// contiguous chunks and reduced in chunk order, so the result is independent
// of the thread count.
template <typename Expand, typename Eval>
Best scan_masks(int free_bits, int num_threads, Expand expand, Eval eval) {
    std::uint64_t total = std::uint64_t{1} << free_bits;
    int workers = num_threads < 1 ? 1 : num_threads;
    if (static_cast<std::uint64_t>(workers) > total) workers = 1;
    std::vector<Best> results(workers);
    auto run = [&](int w) {
        std::uint64_t lo = total * w / workers;
        std::uint64_t hi = total * (w + 1) / workers;
        Best local;
        for (std::uint64_t m = lo; m < hi; ++m) {
            Mask side = expand(static_cast<Mask>(m));
            eval(side, local);
        }
        results[w] = local;
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& th : threads) th.join();
    }
    Best out;
    for (const Best& r : results) out.merge(r);
    return out;
}

Bond best_to_bond(const Graph& g, const Best& best) {
    if (!best.found) throw std::logic_error("no bond found on connected graph");
    return make_bond(g, mask_to_set(best.side, g.num_vertices()));
}

}  // namespace

Bond largest_bond_bf(const Graph& g, int num_threads) {
    check_guard(g, 2);
    check_connected(g);
    MaskGraph mg(g);
    // Vertex 0 is fixed in S; complements are equivalent.
    Best best = scan_masks(
        g.num_vertices() - 1, num_threads,
        [](Mask m) { return (m << 1) | 1; },
        [&](Mask side, Best& b) {
            if (side == mg.full) return;
            if (!mg.side_connected(side) || !mg.side_connected(mg.full & ~side))
                return;
            auto [cnt, w] = mg.cut_value(side);
            (void)w;
            b.offer(cnt, 0, side);
        });
    return best_to_bond(g, best);
}

Bond largest_st_bond_bf(const Graph& g, int s, int t, int num_threads) {
    check_guard(g, 2);
    check_connected(g);
    if (s == t || s < 0 || t < 0 || s >= g.num_vertices() || t >= g.num_vertices())
        throw std::invalid_argument("largest_st_bond_bf: bad s/t");
    MaskGraph mg(g);
    std::vector<int> free_vertices;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (v != s && v != t) free_vertices.push_back(v);
    Mask s_bit = Mask{1} << s;
    Best best = scan_masks(
        static_cast<int>(free_vertices.size()), num_threads,
        [&](Mask m) {
            Mask side = s_bit;
            Mask mm = m;
            while (mm) {
                int i = std::countr_zero(mm);
                mm &= mm - 1;
                side |= Mask{1} << free_vertices[i];
            }
            return side;
        },
        [&](Mask side, Best& b) {
            if (!mg.side_connected(side) || !mg.side_connected(mg.full & ~side))
                return;
            auto [cnt, w] = mg.cut_value(side);
            (void)w;
            b.offer(cnt, 0, side);
        });
    if (!best.found) throw std::logic_error("no st-bond found on connected graph");
    return best_to_bond(g, best);
}

std::optional<Bond> largest_bond_side_size_bf(const Graph& g, int l) {
    check_guard(g, 2);
    check_connected(g);
    MaskGraph mg(g);
    Best best = scan_masks(
        g.num_vertices(), 1, [](Mask m) { return m; },
        [&](Mask side, Best& b) {
            if (std::popcount(side) != l) return;
            if (side == 0 || side == mg.full) return;
            if (!mg.side_connected(side) || !mg.side_connected(mg.full & ~side))
                return;
            auto [cnt, w] = mg.cut_value(side);
            (void)w;
            b.offer(cnt, 0, side);
        });
    if (!best.found) return std::nullopt;
    return best_to_bond(g, best);
}

Bond largest_weight_bond_bf(const Graph& g, int num_threads) {
    check_guard(g, 2);
    check_connected(g);
    MaskGraph mg(g);
    Best best = scan_masks(
        g.num_vertices() - 1, num_threads,
        [](Mask m) { return (m << 1) | 1; },
        [&](Mask side, Best& b) {
            if (side == mg.full) return;
            if (!mg.side_connected(side) || !mg.side_connected(mg.full & ~side))
                return;
            auto [cnt, w] = mg.cut_value(side);
            b.offer(w, cnt, side);
        });
    return best_to_bond(g, best);
}

std::pair<int, VertexSet> max_cut_bf(const Graph& g, int num_threads) {
    if (g.num_vertices() > kMaxVertices)
        throw std::invalid_argument("oracle guard: more than 24 vertices");
    if (g.num_vertices() == 0) return {0, VertexSet(0)};
    MaskGraph mg(g);
    Best best = scan_masks(
        g.num_vertices() - 1, num_threads,
        [](Mask m) { return (m << 1) | 1; },
        [&](Mask side, Best& b) {
            auto [cnt, w] = mg.cut_value(side);
            (void)w;
            b.offer(cnt, 0, side);
        });
    // The all-S cut (empty cut-set) is covered by side == full.
    return {static_cast<int>(best.score), mask_to_set(best.side, g.num_vertices())};
}

std::vector<Bond> enumerate_bonds(const Graph& g) {
    check_guard(g, 2);
    check_connected(g);
    MaskGraph mg(g);
    std::vector<Bond> out;
    std::uint64_t total = std::uint64_t{1} << (g.num_vertices() - 1);
    for (std::uint64_t m = 0; m < total; ++m) {
        Mask side = (static_cast<Mask>(m) << 1) | 1;
        if (side == mg.full) continue;
        if (!mg.side_connected(side) || !mg.side_connected(mg.full & ~side))
            continue;
        out.push_back(make_bond(g, mask_to_set(side, g.num_vertices())));
    }
    return out;
}

bool is_yutsis_bf(const Graph& g) {
    return largest_bond_bf(g).size == yutsis_bound(g);
}

}  // namespace oracle
}  // namespace bond
