#include "bond/tw_dp.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace bond {

std::uint64_t bell_number(int k) {
    if (k < 0 || k > 25) throw std::invalid_argument("bell_number: out of range");
    // Bell triangle.
    std::vector<std::vector<std::uint64_t>> tri(k + 1);
    tri[0] = {1};
    for (int i = 1; i <= k; ++i) {
        tri[i].resize(i + 1);
        tri[i][0] = tri[i - 1][i - 1];
        for (int j = 1; j <= i; ++j) tri[i][j] = tri[i][j - 1] + tri[i - 1][j - 1];
    }
    return tri[k][0];
}

namespace {

using Code = std::uint64_t;
constexpr Code kEmpty = 0;      // side has no component at all
constexpr Code kForgotten = 1;  // one component, fully forgotten
constexpr int kMaxBag = 15;

// Partitions of a side are restricted-growth strings over the side's bag
// vertices in ascending order, 4 bits per element, offset by 2 to clear the
// sentinel codes.
Code encode_rgs(const std::vector<int>& rgs) {
    Code packed = 0;
    for (std::size_t i = 0; i < rgs.size(); ++i)
        packed |= static_cast<Code>(rgs[i]) << (4 * i);
    return packed + 2;
}

std::vector<int> decode_rgs(Code code, int count) {
    Code packed = code - 2;
    std::vector<int> rgs(count);
    for (int i = 0; i < count; ++i) rgs[i] = static_cast<int>((packed >> (4 * i)) & 0xF);
    return rgs;
}

std::vector<int> canonical_rgs(std::vector<int> ids) {
    std::vector<int> remap(ids.size() + 1, -1);
    int next = 0;
    for (int& x : ids) {
        if (remap[x] == -1) remap[x] = next++;
        x = remap[x];
    }
    return ids;
}

struct TwKey {
    std::uint32_t mask = 0;
    Code r1 = kEmpty, r2 = kEmpty;
    bool operator==(const TwKey& o) const {
        return mask == o.mask && r1 == o.r1 && r2 == o.r2;
    }
};
struct TwKeyHash {
    std::size_t operator()(const TwKey& k) const {
        std::uint64_t h = k.mask;
        h = h * 0x9E3779B97F4A7C15ull + k.r1;
        h = (h ^ (h >> 29)) * 0xBF58476D1CE4E5B9ull + k.r2;
        return static_cast<std::size_t>(h ^ (h >> 32));
    }
};

struct TwEntry {
    TwKey key;
    int value = 0;
    int pred1 = -1, pred2 = -1;
    std::int8_t tag = 0;  // IntroduceVertex: 1 = side 1, 2 = side 2
};

struct NodeTable {
    std::vector<TwEntry> entries;
    std::unordered_map<TwKey, int, TwKeyHash> index;

    void offer(const TwKey& key, int value, int pred1, int pred2, std::int8_t tag) {
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, static_cast<int>(entries.size()));
            entries.push_back({key, value, pred1, pred2, tag});
        } else if (value > entries[it->second].value) {
            entries[it->second] = {key, value, pred1, pred2, tag};
        }
    }
};

// A state of one child entry, unpacked to vertex-aligned form for transitions.
struct Unpacked {
    std::vector<int> side1, side2;      // bag vertices per side, ascending
    Code kind1 = kEmpty, kind2 = kEmpty;  // sentinel when the side is empty
    std::vector<int> rgs1, rgs2;        // part ids aligned with side vectors

    static Unpacked of(const std::vector<int>& bag, const TwKey& key) {
        Unpacked u;
        for (std::size_t i = 0; i < bag.size(); ++i) {
            if ((key.mask >> i) & 1) u.side1.push_back(bag[i]);
            else u.side2.push_back(bag[i]);
        }
        u.kind1 = key.r1;
        u.kind2 = key.r2;
        if (!u.side1.empty()) u.rgs1 = decode_rgs(key.r1, static_cast<int>(u.side1.size()));
        if (!u.side2.empty()) u.rgs2 = decode_rgs(key.r2, static_cast<int>(u.side2.size()));
        return u;
    }

    TwKey pack(const std::vector<int>& bag) const {
        TwKey key;
        for (std::size_t i = 0; i < bag.size(); ++i)
            if (std::binary_search(side1.begin(), side1.end(), bag[i]))
                key.mask |= 1u << i;
        key.r1 = side1.empty() ? kind1 : encode_rgs(canonical_rgs(rgs1));
        key.r2 = side2.empty() ? kind2 : encode_rgs(canonical_rgs(rgs2));
        return key;
    }
};

std::uint64_t state_bound(int bag_size) {
    // Sentinels give empty-bag nodes up to four states, which the closed-form
    // bound misses at bag size 0.
    if (bag_size == 0) return 4;
    return bell_number(bag_size + 1) << bag_size;
}

struct TwSolver {
    const Graph& g;
    const NiceTreeDecomposition& ntd;
    int force_side1 = -1;  // vertex pinned to side 1 (st variant), or -1
    int force_side2 = -1;
    std::vector<NodeTable> tables;

    TwSolver(const Graph& g_, const NiceTreeDecomposition& ntd_)
        : g(g_), ntd(ntd_), tables(ntd_.nodes.size()) {}

    void run() {
        for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
            const NiceNode& nd = ntd.nodes[i];
            if (static_cast<int>(nd.bag.size()) > kMaxBag)
                throw std::invalid_argument("tw dp: bag too large (limit 15)");
            switch (nd.type) {
                case NiceNode::Leaf: do_leaf(i); break;
                case NiceNode::IntroduceVertex: do_introduce_vertex(i); break;
                case NiceNode::IntroduceEdge: do_introduce_edge(i); break;
                case NiceNode::ForgetVertex: do_forget(i); break;
                case NiceNode::Join: do_join(i); break;
            }
            tables[i].index.clear();
        }
    }

    void do_leaf(std::size_t i) {
        tables[i].offer(TwKey{0, kEmpty, kEmpty}, 0, -1, -1, 0);
    }

    void do_introduce_vertex(std::size_t i) {
        const NiceNode& nd = ntd.nodes[i];
        int v = nd.vertex;
        const auto& child = tables[nd.left];
        const auto& cbag = ntd.nodes[nd.left].bag;
        for (std::size_t e = 0; e < child.entries.size(); ++e) {
            const TwEntry& ce = child.entries[e];
            Unpacked u = Unpacked::of(cbag, ce.key);
            if (v != force_side2) {  // try side 1
                if (u.kind1 != kForgotten || !u.side1.empty()) {
                    Unpacked nu = u;
                    auto pos = std::lower_bound(nu.side1.begin(), nu.side1.end(), v);
                    int at = static_cast<int>(pos - nu.side1.begin());
                    nu.side1.insert(pos, v);
                    int fresh = 0;
                    for (int p : nu.rgs1) fresh = std::max(fresh, p + 1);
                    nu.rgs1.insert(nu.rgs1.begin() + at, fresh);
                    tables[i].offer(nu.pack(nd.bag), ce.value, static_cast<int>(e), -1, 1);
                }
            }
            if (v != force_side1) {  // try side 2
                if (u.kind2 != kForgotten || !u.side2.empty()) {
                    Unpacked nu = u;
                    auto pos = std::lower_bound(nu.side2.begin(), nu.side2.end(), v);
                    int at = static_cast<int>(pos - nu.side2.begin());
                    nu.side2.insert(pos, v);
                    int fresh = 0;
                    for (int p : nu.rgs2) fresh = std::max(fresh, p + 1);
                    nu.rgs2.insert(nu.rgs2.begin() + at, fresh);
                    tables[i].offer(nu.pack(nd.bag), ce.value, static_cast<int>(e), -1, 2);
                }
            }
        }
    }

    void do_introduce_edge(std::size_t i) {
        const NiceNode& nd = ntd.nodes[i];
        const Edge& edge = g.edge(nd.edge);
        const auto& child = tables[nd.left];
        const auto& cbag = ntd.nodes[nd.left].bag;
        int pu = static_cast<int>(std::lower_bound(cbag.begin(), cbag.end(), edge.u) -
                                  cbag.begin());
        int pv = static_cast<int>(std::lower_bound(cbag.begin(), cbag.end(), edge.v) -
                                  cbag.begin());
        for (std::size_t e = 0; e < child.entries.size(); ++e) {
            const TwEntry& ce = child.entries[e];
            bool u1 = (ce.key.mask >> pu) & 1;
            bool v1 = (ce.key.mask >> pv) & 1;
            if (u1 != v1) {  // crossing edge
                tables[i].offer(ce.key, ce.value + 1, static_cast<int>(e), -1, 0);
                continue;
            }
            Unpacked u = Unpacked::of(cbag, ce.key);
            auto& side = u1 ? u.side1 : u.side2;
            auto& rgs = u1 ? u.rgs1 : u.rgs2;
            int iu = static_cast<int>(std::lower_bound(side.begin(), side.end(), edge.u) -
                                      side.begin());
            int iv = static_cast<int>(std::lower_bound(side.begin(), side.end(), edge.v) -
                                      side.begin());
            if (rgs[iu] != rgs[iv]) {  // the edge joins two components
                int from = rgs[iv], to = rgs[iu];
                for (int& p : rgs)
                    if (p == from) p = to;
            }
            tables[i].offer(u.pack(nd.bag), ce.value, static_cast<int>(e), -1, 0);
        }
    }

    void do_forget(std::size_t i) {
        const NiceNode& nd = ntd.nodes[i];
        int v = nd.vertex;
        const auto& child = tables[nd.left];
        const auto& cbag = ntd.nodes[nd.left].bag;
        for (std::size_t e = 0; e < child.entries.size(); ++e) {
            const TwEntry& ce = child.entries[e];
            Unpacked u = Unpacked::of(cbag, ce.key);
            bool on1 = std::binary_search(u.side1.begin(), u.side1.end(), v);
            auto& side = on1 ? u.side1 : u.side2;
            auto& rgs = on1 ? u.rgs1 : u.rgs2;
            auto& kind = on1 ? u.kind1 : u.kind2;
            int at = static_cast<int>(std::lower_bound(side.begin(), side.end(), v) -
                                      side.begin());
            int part = rgs[at];
            int part_size = 0;
            for (int p : rgs) part_size += (p == part);
            if (part_size == 1 && rgs.size() > 1)
                continue;  // would strand a component while others remain
            side.erase(side.begin() + at);
            rgs.erase(rgs.begin() + at);
            if (side.empty()) kind = kForgotten;
            tables[i].offer(u.pack(nd.bag), ce.value, static_cast<int>(e), -1, 0);
        }
    }

    void do_join(std::size_t i) {
        const NiceNode& nd = ntd.nodes[i];
        const auto& c1 = tables[nd.left];
        const auto& c2 = tables[nd.right];
        const auto& bag = nd.bag;
        std::unordered_map<std::uint32_t, std::vector<int>> by_mask;
        for (std::size_t e = 0; e < c2.entries.size(); ++e)
            by_mask[c2.entries[e].key.mask].push_back(static_cast<int>(e));

        int b = static_cast<int>(bag.size());
        for (std::size_t e1 = 0; e1 < c1.entries.size(); ++e1) {
            const TwEntry& a = c1.entries[e1];
            auto it = by_mask.find(a.key.mask);
            if (it == by_mask.end()) continue;
            Unpacked ua = Unpacked::of(bag, a.key);
            for (int e2 : it->second) {
                const TwEntry& c = c2.entries[e2];
                TwKey key;
                key.mask = a.key.mask;
                bool ok = true;
                for (int sidex = 0; sidex < 2 && ok; ++sidex) {
                    const std::vector<int>& verts = sidex == 0 ? ua.side1 : ua.side2;
                    Code ra = sidex == 0 ? a.key.r1 : a.key.r2;
                    Code rc = sidex == 0 ? c.key.r1 : c.key.r2;
                    Code& out = sidex == 0 ? key.r1 : key.r2;
                    if (verts.empty()) {
                        if (ra == kForgotten && rc == kForgotten) {
                            ok = false;  // two components that can never merge
                            break;
                        }
                        out = (ra == kForgotten || rc == kForgotten) ? kForgotten : kEmpty;
                        continue;
                    }
                    int cnt = static_cast<int>(verts.size());
                    std::vector<int> rgs_a = decode_rgs(ra, cnt);
                    std::vector<int> rgs_c = decode_rgs(rc, cnt);
                    // Union-find over the side vertices through both partitions.
                    std::vector<int> parent(cnt);
                    for (int x = 0; x < cnt; ++x) parent[x] = x;
                    std::function<int(int)> find = [&](int x) {
                        while (parent[x] != x) x = parent[x] = parent[parent[x]];
                        return x;
                    };
                    auto unite = [&](const std::vector<int>& rgs) {
                        std::vector<int> first(cnt, -1);
                        for (int x = 0; x < cnt; ++x) {
                            int p = rgs[x];
                            if (first[p] == -1) first[p] = x;
                            else parent[find(x)] = find(first[p]);
                        }
                    };
                    unite(rgs_a);
                    unite(rgs_c);
                    std::vector<int> merged(cnt);
                    for (int x = 0; x < cnt; ++x) merged[x] = find(x);
                    out = encode_rgs(canonical_rgs(merged));
                }
                if (!ok) continue;
                (void)b;
                tables[i].offer(key, a.value + c.value, static_cast<int>(e1), e2, 0);
            }
        }
    }

    VertexSet reconstruct(int root_entry) const {
        VertexSet side(g.num_vertices());
        std::vector<std::pair<int, int>> stack{{ntd.root, root_entry}};
        while (!stack.empty()) {
            auto [node, ei] = stack.back();
            stack.pop_back();
            const NiceNode& nd = ntd.nodes[node];
            const TwEntry& e = tables[node].entries[ei];
            switch (nd.type) {
                case NiceNode::Leaf: break;
                case NiceNode::IntroduceVertex:
                    if (e.tag == 1) side.insert(nd.vertex);
                    stack.push_back({nd.left, e.pred1});
                    break;
                case NiceNode::IntroduceEdge:
                case NiceNode::ForgetVertex:
                    stack.push_back({nd.left, e.pred1});
                    break;
                case NiceNode::Join:
                    stack.push_back({nd.left, e.pred1});
                    stack.push_back({nd.right, e.pred2});
                    break;
            }
        }
        return side;
    }

    void fill_stats(TwDpStats* stats) const {
        if (!stats) return;
        stats->num_nodes = static_cast<int>(ntd.nodes.size());
        for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
            std::size_t sz = tables[i].entries.size();
            stats->max_states_per_node = std::max(stats->max_states_per_node, sz);
            stats->total_states += sz;
            if (sz > state_bound(static_cast<int>(ntd.nodes[i].bag.size())))
                stats->bell_bound_ok = false;
        }
    }

    void fill_debug(std::vector<TwNodeDebug>* debug) const {
        if (!debug) return;
        debug->resize(ntd.nodes.size());
        std::vector<VertexSet> verts(ntd.nodes.size());
        std::vector<std::vector<int>> edges(ntd.nodes.size());
        for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
            const NiceNode& nd = ntd.nodes[i];
            VertexSet vs(g.num_vertices());
            std::vector<int> es;
            if (nd.left >= 0) {
                vs = vs | verts[nd.left];
                es = edges[nd.left];
            }
            if (nd.right >= 0) {
                vs = vs | verts[nd.right];
                for (int x : edges[nd.right]) es.push_back(x);
            }
            if (nd.type == NiceNode::IntroduceVertex) vs.insert(nd.vertex);
            if (nd.type == NiceNode::IntroduceEdge) es.push_back(nd.edge);
            std::sort(es.begin(), es.end());
            verts[i] = vs;
            edges[i] = es;

            TwNodeDebug& dbg = (*debug)[i];
            dbg.type = nd.type;
            dbg.bag = nd.bag;
            dbg.gl_vertices = vs.to_vector();
            dbg.gl_edges = es;
            for (const TwEntry& e : tables[i].entries) {
                Unpacked u = Unpacked::of(nd.bag, e.key);
                TwStateDebug sd;
                sd.side1 = u.side1;
                sd.value = e.value;
                auto emit = [](const std::vector<int>& side, const std::vector<int>& rgs,
                               Code kind, int& kind_out,
                               std::vector<std::vector<int>>& parts) {
                    if (side.empty()) {
                        kind_out = kind == kEmpty ? 1 : 2;
                        return;
                    }
                    kind_out = 0;
                    int np = 0;
                    for (int p : rgs) np = std::max(np, p + 1);
                    parts.assign(np, {});
                    for (std::size_t x = 0; x < side.size(); ++x)
                        parts[rgs[x]].push_back(side[x]);
                };
                emit(u.side1, u.rgs1, u.kind1, sd.rho1_kind, sd.rho1);
                emit(u.side2, u.rgs2, u.kind2, sd.rho2_kind, sd.rho2);
                dbg.entries.push_back(std::move(sd));
            }
        }
    }
};

Bond run_tw_dp(const Graph& g, const NiceTreeDecomposition& ntd, int force1,
               int force2, TwDpStats* stats, std::vector<TwNodeDebug>* debug) {
    if (!is_connected(g))
        throw std::invalid_argument("tw dp: graph must be connected");
    if (g.num_vertices() < 2)
        throw std::invalid_argument("tw dp: need at least two vertices");
    validate_nice(ntd, g);

    TwSolver solver(g, ntd);
    solver.force_side1 = force1;
    solver.force_side2 = force2;
    solver.run();
    solver.fill_stats(stats);
    solver.fill_debug(debug);

    const auto& root_entries = solver.tables[ntd.root].entries;
    int best = -1;
    for (std::size_t e = 0; e < root_entries.size(); ++e) {
        const TwEntry& en = root_entries[e];
        if (en.key.r1 == kForgotten && en.key.r2 == kForgotten &&
            (best == -1 || en.value > root_entries[best].value))
            best = static_cast<int>(e);
    }
    if (best == -1) throw std::logic_error("tw dp: no bond state at root");

    VertexSet side = solver.reconstruct(best);
    Bond bond = make_bond(g, side);
    if (bond.size != root_entries[best].value)
        throw std::logic_error("tw dp: witness size mismatch");
    return bond;
}

}  // namespace

Bond largest_bond_tw(const Graph& g, const NiceTreeDecomposition& ntd,
                     TwDpStats* stats, std::vector<TwNodeDebug>* debug) {
    return run_tw_dp(g, ntd, -1, -1, stats, debug);
}

Bond largest_st_bond_tw_from_td(const Graph& g, int s, int t,
                                const TreeDecomposition& td, TwDpStats* stats) {
    if (s == t || s < 0 || t < 0 || s >= g.num_vertices() || t >= g.num_vertices())
        throw std::invalid_argument("st dp: bad s/t");
    TreeDecomposition aug = td;
    for (auto& bag : aug.bags) {
        for (int v : {s, t})
            if (std::find(bag.begin(), bag.end(), v) == bag.end()) bag.push_back(v);
        std::sort(bag.begin(), bag.end());
    }
    NiceTreeDecomposition ntd = make_nice(aug, g);
    Bond bond = run_tw_dp(g, ntd, s, t, stats, nullptr);
    if (!bond.side.contains(s) || bond.side.contains(t))
        throw std::logic_error("st dp: witness does not separate s and t");
    return bond;
}

Bond largest_st_bond_tw(const Graph& g, int s, int t,
                        const NiceTreeDecomposition& ntd, TwDpStats* stats) {
    return largest_st_bond_tw_from_td(g, s, t, ntd.underlying(), stats);
}

SolveDecision solve_largest_bond(const Graph& g, int k, TwDpStats* stats) {
    if (!is_connected(g))
        throw std::invalid_argument("solve_largest_bond: graph must be connected");
    SolveDecision out;
    if (g.num_vertices() < 2) {
        out.yes = false;
        out.optimum = 0;
        return out;  // no proper nonempty side exists
    }
    WinwinResult pre = winwin_preprocess(g, k);
    if (pre.early_yes) {
        out.yes = true;
        out.optimum = pre.early_yes->size;
        out.exact = false;
        out.witness = std::move(pre.early_yes);
        return out;
    }
    NiceTreeDecomposition ntd = make_nice(*pre.td, g);
    Bond bond = largest_bond_tw(g, ntd, stats);
    out.optimum = bond.size;
    out.yes = bond.size >= k;
    out.witness = std::move(bond);
    return out;
}

SolveDecision solve_largest_st_bond(const Graph& g, int s, int t, int k,
                                    TwDpStats* stats) {
    if (!is_connected(g))
        throw std::invalid_argument("solve_largest_st_bond: graph must be connected");
    StPreprocessResult pre = st_preprocess(g, s, t, k);
    SolveDecision out;
    if (pre.early_yes) {
        out.yes = true;
        out.optimum = pre.early_yes->size;
        out.exact = false;
        out.witness = std::move(pre.early_yes);
        return out;
    }
    int best = -1;
    std::optional<Bond> best_bond;
    for (const StBlockTask& task : pre.tasks) {
        TwDpStats task_stats;
        Bond block_bond = largest_st_bond_tw_from_td(
            task.block, task.s_local, task.t_local,
            heuristic_tree_decomposition(task.block), &task_stats);
        if (stats) {
            stats->max_states_per_node =
                std::max(stats->max_states_per_node, task_stats.max_states_per_node);
            stats->total_states += task_stats.total_states;
            stats->num_nodes += task_stats.num_nodes;
            stats->bell_bound_ok = stats->bell_bound_ok && task_stats.bell_bound_ok;
        }
        if (block_bond.size > best) {
            best = block_bond.size;
            best_bond = lift_block_bond(g, task, block_bond, s);
        }
    }
    if (best < 0) throw std::logic_error("st solve: no block tasks");
    out.optimum = best;
    out.yes = best >= k;
    out.witness = std::move(best_bond);
    return out;
}

}  // namespace bond
