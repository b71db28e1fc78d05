#include "bond/blocks.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bond {

BlockCutTree block_cut_tree(const Graph& g) {
    if (!is_connected(g))
        throw std::invalid_argument("block_cut_tree: graph must be connected");
    int n = g.num_vertices();
    BlockCutTree bct;
    bct.cut_vertices = VertexSet(n);
    if (n == 1) {
        bct.blocks.push_back(VertexSet::of(1, {0}));
        bct.block_edges.push_back({});
        return bct;
    }

    auto adj = adjacency_lists(g);
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> edge_stack;
    int timer = 0;

    auto pop_block = [&](int top_edge) {
        VertexSet verts(n);
        std::vector<int> edges;
        while (true) {
            int ei = edge_stack.back();
            edge_stack.pop_back();
            edges.push_back(ei);
            verts.insert(g.edge(ei).u);
            verts.insert(g.edge(ei).v);
            if (ei == top_edge) break;
        }
        std::sort(edges.begin(), edges.end());
        bct.blocks.push_back(std::move(verts));
        bct.block_edges.push_back(std::move(edges));
    };

    // Tarjan lowpoint DFS; only the tree edge itself is skipped, so parallel
    // edges correctly form 2-cycles.
    std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
        disc[u] = low[u] = timer++;
        int children = 0;
        for (auto [w, ei] : adj[u]) {
            if (ei == parent_edge) continue;
            if (disc[w] == -1) {
                ++children;
                edge_stack.push_back(ei);
                dfs(w, ei);
                low[u] = std::min(low[u], low[w]);
                if (low[w] >= disc[u]) {
                    if (parent_edge != -1 || children > 1)
                        bct.cut_vertices.insert(u);
                    pop_block(ei);
                }
            } else if (disc[w] < disc[u]) {
                edge_stack.push_back(ei);
                low[u] = std::min(low[u], disc[w]);
            }
        }
    };
    dfs(0, -1);

    for (std::size_t b = 0; b < bct.blocks.size(); ++b)
        for (int v : bct.blocks[b].to_vector())
            if (bct.cut_vertices.contains(v))
                bct.tree_edges.push_back({static_cast<int>(b), v});
    return bct;
}

bool is_biconnected(const Graph& g) {
    if (g.num_vertices() < 3) return false;
    if (!is_connected(g)) return false;
    BlockCutTree bct = block_cut_tree(g);
    return bct.blocks.size() == 1 && bct.cut_vertices.empty();
}

namespace {

// Minimal unit-capacity flow network with vertex splitting, used to find two
// internally vertex-disjoint s-v paths.
struct FlowNet {
    struct Arc {
        int to;
        int cap;
        int rev;  // index of the reverse arc in arcs[to]
    };
    std::vector<std::vector<Arc>> arcs;

    explicit FlowNet(int nodes) : arcs(nodes) {}

    void add(int a, int b, int cap) {
        arcs[a].push_back({b, cap, static_cast<int>(arcs[b].size())});
        arcs[b].push_back({a, 0, static_cast<int>(arcs[a].size()) - 1});
    }

    bool augment(int src, int dst) {
        std::vector<std::pair<int, int>> pre(arcs.size(), {-1, -1});
        std::vector<int> queue{src};
        pre[src] = {src, 0};
        for (std::size_t qi = 0; qi < queue.size() && pre[dst].first == -1; ++qi) {
            int x = queue[qi];
            for (std::size_t i = 0; i < arcs[x].size(); ++i) {
                const Arc& a = arcs[x][i];
                if (a.cap > 0 && pre[a.to].first == -1) {
                    pre[a.to] = {x, static_cast<int>(i)};
                    queue.push_back(a.to);
                }
            }
        }
        if (pre[dst].first == -1) return false;
        for (int x = dst; x != src;) {
            auto [px, pi] = pre[x];
            Arc& a = arcs[px][pi];
            --a.cap;
            ++arcs[x][a.rev].cap;
            x = px;
        }
        return true;
    }
};

}  // namespace

std::pair<std::vector<int>, std::vector<int>>
internally_disjoint_paths(const Graph& g, int s, int t, int v) {
    if (s == t || s == v || t == v)
        throw std::invalid_argument("internally_disjoint_paths: s, t, v must be distinct");
    if (!is_biconnected(g))
        throw std::invalid_argument("internally_disjoint_paths: graph must be 2-connected");

    int n = g.num_vertices();
    auto in_node = [](int x) { return 2 * x; };
    auto out_node = [](int x) { return 2 * x + 1; };

    FlowNet net(2 * n);
    // No internal arc for s or v: augmenting paths can then never revisit
    // them, so the flow decomposes into two simple internally disjoint paths.
    for (int x = 0; x < n; ++x)
        net.add(in_node(x), out_node(x), (x == s || x == v) ? 0 : 1);
    auto adj = adjacency_lists(g);
    for (int x = 0; x < n; ++x)
        for (auto [w, ei] : adj[x]) {
            (void)ei;
            net.add(out_node(x), in_node(w), 1);
        }

    if (!net.augment(out_node(s), in_node(v)) ||
        !net.augment(out_node(s), in_node(v)))
        throw std::logic_error("two disjoint paths must exist in a 2-connected graph");

    // Decompose the 2 units of flow into two vertex paths.
    auto extract = [&]() {
        std::vector<int> path{s};
        int x = s;
        while (x != v) {
            bool advanced = false;
            for (FlowNet::Arc& a : net.arcs[out_node(x)]) {
                bool used = a.cap == 0 && net.arcs[a.to][a.rev].cap > 0;
                if (used && a.to % 2 == 0) {  // an in-node of the next vertex
                    ++a.cap;
                    --net.arcs[a.to][a.rev].cap;
                    x = a.to / 2;
                    path.push_back(x);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) throw std::logic_error("flow decomposition failed");
        }
        return path;
    };
    std::vector<int> p1 = extract();
    std::vector<int> p2 = extract();

    // t-v path avoiding s (g - s stays connected).
    VertexSet allowed = VertexSet::full(n);
    allowed.erase(s);
    std::vector<int> parent(n, -1), queue{t};
    VertexSet seen(n);
    seen.insert(t);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (auto [w, ei] : adj[x]) {
            (void)ei;
            if (allowed.contains(w) && !seen.contains(w)) {
                seen.insert(w);
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    if (!seen.contains(v)) throw std::logic_error("t cannot reach v avoiding s");
    std::vector<int> pt;
    for (int x = v; x != -1; x = parent[x]) pt.push_back(x);
    std::reverse(pt.begin(), pt.end());  // now t .. v

    VertexSet on1(n), on2(n);
    for (int x : p1) on1.insert(x);
    for (int x : p2) on2.insert(x);

    std::size_t cut = 0;
    while (!on1.contains(pt[cut]) && !on2.contains(pt[cut])) ++cut;
    int x = pt[cut];
    if (x != v && on1.contains(x)) std::swap(p1, p2);  // splice point goes on p2

    std::vector<int> tv(pt.begin(), pt.begin() + cut + 1);
    std::size_t pos = 0;
    while (p2[pos] != x) ++pos;
    for (std::size_t i = pos + 1; i < p2.size(); ++i) tv.push_back(p2[i]);

    return {p1, tv};
}

}  // namespace bond
