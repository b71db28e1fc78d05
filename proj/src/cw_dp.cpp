#include "bond/cw_dp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace bond {

namespace {

constexpr int kMaxDpWidth = 12;  // keys carry 2^w-1 type slots per side
constexpr int kMaxDpVertices = 250;

struct Shape {
    std::vector<std::uint8_t> s;  // side-1 count per label, index label-1
    std::vector<std::uint8_t> e;  // side-1 multiplicity per type, index type-1
    std::vector<std::uint8_t> d;  // side-2 multiplicity per type

    std::string key() const {
        std::string k;
        k.reserve(s.size() + e.size() + d.size());
        k.append(s.begin(), s.end());
        k.append(e.begin(), e.end());
        k.append(d.begin(), d.end());
        return k;
    }
    static Shape of(const std::string& k, int w) {
        int types = (1 << w) - 1;
        Shape sh;
        sh.s.assign(k.begin(), k.begin() + w);
        sh.e.assign(k.begin() + w, k.begin() + w + types);
        sh.d.assign(k.begin() + w + types, k.end());
        return sh;
    }
};

std::uint8_t sat2(int x) { return static_cast<std::uint8_t>(x > 2 ? 2 : x); }

struct CwEntry {
    std::string key;
    int value = 0;
    int pred1 = -1, pred2 = -1;
    std::int8_t tag = 0;  // Create: 1 = side 1, 2 = side 2
};

struct CwTable {
    std::vector<CwEntry> entries;
    std::unordered_map<std::string, int> index;

    void offer(std::string key, int value, int p1, int p2, std::int8_t tag) {
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, static_cast<int>(entries.size()));
            entries.push_back({std::move(key), value, p1, p2, tag});
        } else if (value > entries[it->second].value) {
            entries[it->second] = {std::move(key), value, p1, p2, tag};
        }
    }
};

struct CwSolver {
    const WExpression& expr;
    const WEval& ev;
    int w;
    int types;
    int force_s = -1, force_t = -1;
    std::vector<CwTable> tables;

    CwSolver(const WExpression& e_, const WEval& ev_)
        : expr(e_), ev(ev_), w(std::max(ev_.width, 1)), types((1 << w) - 1),
          tables(e_.nodes.size()) {}

    Shape blank() const {
        Shape sh;
        sh.s.assign(w, 0);
        sh.e.assign(types, 0);
        sh.d.assign(types, 0);
        return sh;
    }

    void run() {
        for (int id : ev.postorder) {
            const WNode& nd = expr.nodes[id];
            switch (nd.kind) {
                case WNode::Create: do_create(id); break;
                case WNode::Union: do_union(id); break;
                case WNode::Relabel: do_relabel(id); break;
                case WNode::Join: do_join(id); break;
            }
            tables[id].index.clear();
        }
    }

    void do_create(int id) {
        const WNode& nd = expr.nodes[id];
        int type = 1 << (nd.a - 1);
        if (nd.b != force_t) {
            Shape sh = blank();
            sh.s[nd.a - 1] = 1;
            sh.e[type - 1] = 1;
            tables[id].offer(sh.key(), 0, -1, -1, 1);
        }
        if (nd.b != force_s) {
            Shape sh = blank();
            sh.d[type - 1] = 1;
            tables[id].offer(sh.key(), 0, -1, -1, 2);
        }
    }

    void do_union(int id) {
        const WNode& nd = expr.nodes[id];
        const auto& le = tables[nd.left].entries;
        const auto& re = tables[nd.right].entries;
        for (std::size_t i = 0; i < le.size(); ++i) {
            Shape a = Shape::of(le[i].key, w);
            for (std::size_t j = 0; j < re.size(); ++j) {
                Shape b = Shape::of(re[j].key, w);
                Shape out = blank();
                for (int x = 0; x < w; ++x)
                    out.s[x] = static_cast<std::uint8_t>(a.s[x] + b.s[x]);
                for (int x = 0; x < types; ++x) {
                    out.e[x] = sat2(a.e[x] + b.e[x]);
                    out.d[x] = sat2(a.d[x] + b.d[x]);
                }
                tables[id].offer(out.key(), le[i].value + re[j].value,
                                 static_cast<int>(i), static_cast<int>(j), 0);
            }
        }
    }

    void do_relabel(int id) {
        const WNode& nd = expr.nodes[id];
        int bi = 1 << (nd.a - 1), bj = 1 << (nd.b - 1);
        const auto& ce = tables[nd.left].entries;
        for (std::size_t i = 0; i < ce.size(); ++i) {
            Shape a = Shape::of(ce[i].key, w);
            Shape out = blank();
            out.s = a.s;
            out.s[nd.b - 1] = static_cast<std::uint8_t>(out.s[nd.b - 1] + out.s[nd.a - 1]);
            out.s[nd.a - 1] = 0;
            for (int q = 1; q <= types; ++q) {
                int p = (q & bi) ? ((q & ~bi) | bj) : q;
                out.e[p - 1] = sat2(out.e[p - 1] + a.e[q - 1]);
                out.d[p - 1] = sat2(out.d[p - 1] + a.d[q - 1]);
            }
            tables[id].offer(out.key(), ce[i].value, static_cast<int>(i), -1, 0);
        }
    }

    void do_join(int id) {
        const WNode& nd = expr.nodes[id];
        int bi = 1 << (nd.a - 1), bj = 1 << (nd.b - 1);
        int li = ev.node_label_count[nd.left][nd.a];
        int lj = ev.node_label_count[nd.left][nd.b];
        const auto& ce = tables[nd.left].entries;
        for (std::size_t i = 0; i < ce.size(); ++i) {
            Shape a = Shape::of(ce[i].key, w);
            int si = a.s[nd.a - 1], sj = a.s[nd.b - 1];
            int delta = si * (lj - sj) + sj * (li - si);
            // Components touching label i or j become one per side, provided
            // that side has vertices of both labels.
            auto merge = [&](std::vector<std::uint8_t>& mult, bool both) {
                if (!both) return;
                int merged_type = 0;
                for (int q = 1; q <= types; ++q)
                    if ((q & (bi | bj)) && mult[q - 1] > 0) merged_type |= q;
                if (!merged_type) return;
                for (int q = 1; q <= types; ++q)
                    if (q & (bi | bj)) mult[q - 1] = 0;
                mult[merged_type - 1] = 1;
            };
            merge(a.e, si > 0 && sj > 0);
            merge(a.d, (li - si) > 0 && (lj - sj) > 0);
            tables[id].offer(a.key(), ce[i].value + delta, static_cast<int>(i), -1, 0);
        }
    }

    int best_root() const {
        const auto& re = tables[expr.root].entries;
        int best = -1;
        auto single_component = [&](const std::vector<std::uint8_t>& mult) {
            int nonzero = 0, value = 0;
            for (std::uint8_t m : mult)
                if (m) {
                    ++nonzero;
                    value = m;
                }
            return nonzero == 1 && value == 1;
        };
        for (std::size_t i = 0; i < re.size(); ++i) {
            Shape sh = Shape::of(re[i].key, w);
            if (!single_component(sh.e) || !single_component(sh.d)) continue;
            if (best == -1 || re[i].value > re[best].value)
                best = static_cast<int>(i);
        }
        return best;
    }

    VertexSet reconstruct(int root_entry, int n) const {
        VertexSet side(n);
        std::vector<std::pair<int, int>> stack{{expr.root, root_entry}};
        while (!stack.empty()) {
            auto [node, ei] = stack.back();
            stack.pop_back();
            const WNode& nd = expr.nodes[node];
            const CwEntry& en = tables[node].entries[ei];
            switch (nd.kind) {
                case WNode::Create:
                    if (en.tag == 1) side.insert(nd.b);
                    break;
                case WNode::Union:
                    stack.push_back({nd.left, en.pred1});
                    stack.push_back({nd.right, en.pred2});
                    break;
                case WNode::Join:
                case WNode::Relabel:
                    stack.push_back({nd.left, en.pred1});
                    break;
            }
        }
        return side;
    }

    void fill_stats(CwDpStats* stats) const {
        if (!stats) return;
        long double bound = std::pow(static_cast<long double>(ev.graph.num_vertices() + 1),
                                     w) *
                            std::pow(3.0L, 2.0L * types);
        for (const CwTable& t : tables) {
            stats->max_entries_per_node =
                std::max(stats->max_entries_per_node, t.entries.size());
            stats->total_entries += t.entries.size();
            if (static_cast<long double>(t.entries.size()) > bound)
                stats->size_bound_ok = false;
        }
    }

    void fill_debug(std::vector<CwNodeDebug>* debug) const {
        if (!debug) return;
        debug->resize(expr.nodes.size());
        for (std::size_t i = 0; i < expr.nodes.size(); ++i) {
            (*debug)[i].vertices = ev.node_vertices[i];
            for (const CwEntry& en : tables[i].entries)
                (*debug)[i].entries.push_back({en.key, en.value});
        }
    }
};

CwResult run_cw_dp(const WExpression& raw, int force_s, int force_t,
                   CwDpStats* stats, std::vector<CwNodeDebug>* debug) {
    WExpression e = make_irredundant(raw);
    WEval ev = eval_w_expression(e);
    if (ev.width > kMaxDpWidth)
        throw std::invalid_argument("cw dp: width above limit " +
                                    std::to_string(kMaxDpWidth));
    if (ev.graph.num_vertices() > kMaxDpVertices)
        throw std::invalid_argument("cw dp: too many vertices");
    if (ev.graph.num_vertices() < 2)
        throw std::invalid_argument("cw dp: need at least two vertices");
    if (!is_connected(ev.graph))
        throw std::invalid_argument("cw dp: evaluated graph is disconnected");

    CwSolver solver(e, ev);
    solver.force_s = force_s;
    solver.force_t = force_t;
    solver.run();
    solver.fill_stats(stats);
    solver.fill_debug(debug);

    int best = solver.best_root();
    if (best < 0) throw std::logic_error("cw dp: no connected split at root");
    const CwEntry& en = solver.tables[e.root].entries[best];

    CwResult out;
    out.side = solver.reconstruct(best, ev.graph.num_vertices());
    out.size = en.value;
    Bond check = make_bond(ev.graph, out.side);
    if (check.size != out.size)
        throw std::logic_error("cw dp: witness size mismatch");
    return out;
}

}  // namespace

std::string cw_shape_key(const WEval& ev, int node, const VertexSet& side1,
                         int width) {
    int types = (1 << width) - 1;
    std::string key(width + 2 * types, '\0');
    const auto& verts = ev.node_vertices[node];
    const auto& vlabels = ev.node_vertex_labels[node];
    std::vector<int> label_of(ev.graph.num_vertices(), 0);
    VertexSet node_set(ev.graph.num_vertices());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        label_of[verts[i]] = vlabels[i];
        node_set.insert(verts[i]);
    }
    for (int v : verts)
        if (side1.contains(v)) key[label_of[v] - 1]++;

    Graph sub(ev.graph.num_vertices());
    for (int eidx : ev.node_edges[node]) {
        const Edge& e = ev.graph.edge(eidx);
        sub.add_edge(e.u, e.v);
    }
    auto account = [&](const VertexSet& side, int base) {
        for (const VertexSet& comp : connected_components_within(sub, side)) {
            int type = 0;
            for (int v : comp.to_vector()) type |= 1 << (label_of[v] - 1);
            char& slot = key[base + type - 1];
            if (slot < 2) ++slot;
        }
    };
    account(side1 & node_set, width);
    account(node_set - side1, width + types);
    return key;
}

CwResult largest_bond_cw(const WExpression& e, CwDpStats* stats,
                         std::vector<CwNodeDebug>* debug) {
    return run_cw_dp(e, -1, -1, stats, debug);
}

WExpression st_private_label_expression(const WExpression& e, int s, int t) {
    int w = e.width();
    int ls = w + 1, lt = w + 2;
    WExpression out;

    struct Tracked {
        int node = -1;
        int wb_s = 0, wb_t = 0;  // would-be labels, 0 when absent
    };
    std::function<Tracked(int)> walk = [&](int id) -> Tracked {
        const WNode& nd = e.nodes[id];
        Tracked r;
        switch (nd.kind) {
            case WNode::Create: {
                WNode copy = nd;
                if (nd.b == s) {
                    copy.a = ls;
                    r.wb_s = nd.a;
                } else if (nd.b == t) {
                    copy.a = lt;
                    r.wb_t = nd.a;
                }
                out.nodes.push_back(copy);
                r.node = static_cast<int>(out.nodes.size()) - 1;
                return r;
            }
            case WNode::Union: {
                Tracked a = walk(nd.left);
                Tracked b = walk(nd.right);
                out.nodes.push_back({WNode::Union, 0, 0, a.node, b.node});
                r.node = static_cast<int>(out.nodes.size()) - 1;
                r.wb_s = a.wb_s ? a.wb_s : b.wb_s;
                r.wb_t = a.wb_t ? a.wb_t : b.wb_t;
                return r;
            }
            case WNode::Relabel: {
                r = walk(nd.left);
                out.nodes.push_back({WNode::Relabel, nd.a, nd.b, r.node, -1});
                r.node = static_cast<int>(out.nodes.size()) - 1;
                if (r.wb_s == nd.a) r.wb_s = nd.b;
                if (r.wb_t == nd.a) r.wb_t = nd.b;
                return r;
            }
            case WNode::Join: {
                r = walk(nd.left);
                auto emit = [&](int i, int j) {
                    out.nodes.push_back({WNode::Join, i, j, r.node, -1});
                    r.node = static_cast<int>(out.nodes.size()) - 1;
                };
                emit(nd.a, nd.b);
                // Replay the join on the private labels standing in for the
                // would-be labels of s and t.
                if (r.wb_s == nd.a) emit(ls, nd.b);
                if (r.wb_s == nd.b) emit(nd.a, ls);
                if (r.wb_t == nd.a) emit(lt, nd.b);
                if (r.wb_t == nd.b) emit(nd.a, lt);
                if ((r.wb_s == nd.a && r.wb_t == nd.b) ||
                    (r.wb_s == nd.b && r.wb_t == nd.a))
                    emit(ls, lt);
                return r;
            }
        }
        throw std::logic_error("unreachable");
    };
    Tracked top = walk(e.root);
    if (!top.wb_s || !top.wb_t)
        throw std::invalid_argument("st expression: s or t not present");
    out.root = top.node;
    return out;
}

CwResult largest_st_bond_cw(const WExpression& e, int s, int t,
                            CwDpStats* stats) {
    if (s == t) throw std::invalid_argument("largest_st_bond_cw: s == t");
    WExpression lifted = st_private_label_expression(make_irredundant(e), s, t);
    CwResult out = run_cw_dp(lifted, s, t, stats, nullptr);
    if (!out.side.contains(s) || out.side.contains(t))
        throw std::logic_error("cw st dp: witness does not separate s and t");
    return out;
}

}  // namespace bond
