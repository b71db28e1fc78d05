#include "bond/tree_decomposition.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bond {

namespace {

std::vector<std::vector<int>> bag_tree_adjacency(const TreeDecomposition& td) {
    std::vector<std::vector<int>> adj(td.bags.size());
    for (auto [a, b] : td.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& lst : adj) std::sort(lst.begin(), lst.end());
    return adj;
}

}  // namespace

std::optional<TdViolation> validate_tree_decomposition(const Graph& g,
                                                       const TreeDecomposition& td) {
    int nb = static_cast<int>(td.bags.size());
    if (nb == 0)
        return TdViolation{TdViolation::NotATree, -1, "decomposition has no bags"};
    for (auto [a, b] : td.tree_edges)
        if (a < 0 || a >= nb || b < 0 || b >= nb || a == b)
            return TdViolation{TdViolation::NotATree, -1, "bad tree edge"};
    if (static_cast<int>(td.tree_edges.size()) != nb - 1)
        return TdViolation{TdViolation::NotATree, -1,
                           "tree must have exactly #bags-1 edges"};
    auto adj = bag_tree_adjacency(td);
    {
        std::vector<int> queue{0};
        std::vector<char> seen(nb, 0);
        seen[0] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int w : adj[queue[qi]])
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        for (int i = 0; i < nb; ++i)
            if (!seen[i])
                return TdViolation{TdViolation::NotATree, -1, "tree is disconnected"};
    }

    int n = g.num_vertices();
    for (int b = 0; b < nb; ++b)
        for (int v : td.bags[b])
            if (v < 0 || v >= n)
                return TdViolation{TdViolation::BadBagContent, v,
                                   "bag " + std::to_string(b) + " has out-of-range vertex"};

    std::vector<std::vector<int>> bags_with(n);
    for (int b = 0; b < nb; ++b)
        for (int v : td.bags[b]) bags_with[v].push_back(b);

    for (int v = 0; v < n; ++v)
        if (bags_with[v].empty())
            return TdViolation{TdViolation::VertexNotCovered, v,
                               "vertex " + std::to_string(v) + " is in no bag"};

    for (int i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edge(i);
        bool covered = false;
        for (int b : bags_with[e.u]) {
            if (std::find(td.bags[b].begin(), td.bags[b].end(), e.v) !=
                td.bags[b].end()) {
                covered = true;
                break;
            }
        }
        if (!covered)
            return TdViolation{TdViolation::EdgeNotCovered, i,
                               "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                   " has no common bag"};
    }

    for (int v = 0; v < n; ++v) {
        // BFS inside the sub-forest of bags containing v.
        std::vector<char> has(nb, 0);
        for (int b : bags_with[v]) has[b] = 1;
        std::vector<int> queue{bags_with[v][0]};
        std::vector<char> seen(nb, 0);
        seen[queue[0]] = 1;
        int reached = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi)
            for (int w : adj[queue[qi]])
                if (has[w] && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    queue.push_back(w);
                }
        if (reached != static_cast<int>(bags_with[v].size()))
            return TdViolation{TdViolation::VertexSubtreeDisconnected, v,
                               "occurrences of vertex " + std::to_string(v) +
                                   " are disconnected"};
    }
    return std::nullopt;
}

TreeDecomposition heuristic_tree_decomposition(const Graph& g) {
    if (!is_connected(g))
        throw std::invalid_argument("heuristic_tree_decomposition: graph must be connected");
    int n = g.num_vertices();
    TreeDecomposition td;
    if (n == 0) throw std::invalid_argument("empty graph");
    if (n == 1) {
        td.bags.push_back({0});
        return td;
    }

    std::vector<std::set<int>> nb(n);
    for (const Edge& e : g.edges()) {
        nb[e.u].insert(e.v);
        nb[e.v].insert(e.u);
    }

    std::vector<char> gone(n, 0);
    std::vector<int> position(n, -1);  // elimination index
    std::vector<std::vector<int>> bags;
    std::vector<int> order;

    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = -1;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long fill = 0;
            std::vector<int> nbrs(nb[v].begin(), nb[v].end());
            for (std::size_t i = 0; i < nbrs.size(); ++i)
                for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                    if (!nb[nbrs[i]].count(nbrs[j])) ++fill;
            if (best == -1 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }
        int v = best;
        std::vector<int> bag(nb[v].begin(), nb[v].end());
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        bags.push_back(bag);
        position[v] = step;
        order.push_back(v);
        std::vector<int> nbrs(nb[v].begin(), nb[v].end());
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                nb[nbrs[i]].insert(nbrs[j]);
                nb[nbrs[j]].insert(nbrs[i]);
            }
        for (int w : nbrs) nb[w].erase(v);
        nb[v].clear();
        gone[v] = 1;
    }

    td.bags = bags;
    // Connect each bag to the bag of the earliest-eliminated vertex among the
    // clique left behind.
    for (int step = 0; step < n; ++step) {
        int v = order[step];
        int parent_vertex = -1;
        for (int w : td.bags[step]) {
            if (w == v) continue;
            if (parent_vertex == -1 || position[w] < position[parent_vertex])
                parent_vertex = w;
        }
        if (parent_vertex != -1)
            td.tree_edges.push_back({step, position[parent_vertex]});
    }
    return td;
}

TreeDecomposition NiceTreeDecomposition::underlying() const {
    TreeDecomposition td;
    td.bags.reserve(nodes.size());
    for (const NiceNode& nd : nodes) td.bags.push_back(nd.bag);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].left >= 0) td.tree_edges.push_back({static_cast<int>(i), nodes[i].left});
        if (nodes[i].right >= 0) td.tree_edges.push_back({static_cast<int>(i), nodes[i].right});
    }
    return td;
}

namespace {

struct NiceBuilder {
    std::vector<NiceNode> nodes;

    int add(NiceNode nd) {
        nodes.push_back(std::move(nd));
        return static_cast<int>(nodes.size()) - 1;
    }

    int leaf() { return add({NiceNode::Leaf, -1, -1, -1, -1, {}}); }

    // Forget chain from `from` (descending ids), then introduce chain to
    // `target` (ascending ids). Returns the node whose bag equals target.
    int transform(int node, const std::vector<int>& target) {
        std::vector<int> bag = nodes[node].bag;
        std::vector<int> to_forget;
        for (int v : bag)
            if (!std::binary_search(target.begin(), target.end(), v))
                to_forget.push_back(v);
        std::sort(to_forget.rbegin(), to_forget.rend());
        int cur = node;
        for (int v : to_forget) {
            std::vector<int> nb;
            for (int x : nodes[cur].bag)
                if (x != v) nb.push_back(x);
            cur = add({NiceNode::ForgetVertex, v, -1, cur, -1, std::move(nb)});
        }
        std::vector<int> to_introduce;
        for (int v : target)
            if (!std::binary_search(bag.begin(), bag.end(), v))
                to_introduce.push_back(v);
        std::sort(to_introduce.begin(), to_introduce.end());
        for (int v : to_introduce) {
            std::vector<int> nb = nodes[cur].bag;
            nb.insert(std::lower_bound(nb.begin(), nb.end(), v), v);
            cur = add({NiceNode::IntroduceVertex, v, -1, cur, -1, std::move(nb)});
        }
        return cur;
    }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td_in, const Graph& g) {
    if (auto bad = validate_tree_decomposition(g, td_in))
        throw std::invalid_argument("make_nice: invalid decomposition: " + bad->message);

    TreeDecomposition td = td_in;
    for (auto& b : td.bags) std::sort(b.begin(), b.end());

    int nb = static_cast<int>(td.bags.size());
    auto adj = bag_tree_adjacency(td);
    std::vector<int> parent(nb, -2);
    std::vector<std::vector<int>> children(nb);
    {
        std::vector<int> queue{0};
        parent[0] = -1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int b = queue[qi];
            for (int c : adj[b])
                if (parent[c] == -2) {
                    parent[c] = b;
                    children[b].push_back(c);
                    queue.push_back(c);
                }
        }
    }

    NiceBuilder nb_builder;
    std::function<int(int)> build = [&](int b) -> int {
        std::vector<int> done;
        for (int c : children[b]) {
            int sub = build(c);
            done.push_back(nb_builder.transform(sub, td.bags[b]));
        }
        if (done.empty()) {
            int lf = nb_builder.leaf();
            return nb_builder.transform(lf, td.bags[b]);
        }
        int cur = done[0];
        for (std::size_t i = 1; i < done.size(); ++i)
            cur = nb_builder.add({NiceNode::Join, -1, -1, cur, done[i],
                                  td.bags[b]});
        return cur;
    };
    int top = build(0);
    int root = nb_builder.transform(top, {});

    // Edge placement: each vertex now has exactly one forget node; the edge
    // goes immediately below the deeper endpoint's forget, where the child bag
    // must contain both endpoints.
    auto& nodes = nb_builder.nodes;
    std::vector<int> depth(nodes.size(), 0);
    std::vector<int> forget_of(g.num_vertices(), -1);
    {
        std::function<void(int, int)> walk = [&](int id, int d) {
            depth[id] = d;
            const NiceNode& nd = nodes[id];
            if (nd.type == NiceNode::ForgetVertex) {
                if (forget_of[nd.vertex] != -1)
                    throw std::logic_error("vertex forgotten twice");
                forget_of[nd.vertex] = id;
            }
            if (nd.left >= 0) walk(nd.left, d + 1);
            if (nd.right >= 0) walk(nd.right, d + 1);
        };
        walk(root, 0);
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (forget_of[v] == -1) throw std::logic_error("vertex never forgotten");

    std::vector<std::vector<int>> edges_at(nodes.size());
    for (int i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edge(i);
        int fu = forget_of[e.u], fv = forget_of[e.v];
        edges_at[depth[fu] > depth[fv] ? fu : fv].push_back(i);
    }
    for (std::size_t f = 0; f < edges_at.size(); ++f) {
        if (edges_at[f].empty()) continue;
        std::sort(edges_at[f].begin(), edges_at[f].end());
        int below = nodes[f].left;
        int cur = below;
        for (int ei : edges_at[f]) {
            const Edge& e = g.edge(ei);
            const std::vector<int>& bag = nodes[below].bag;
            if (!std::binary_search(bag.begin(), bag.end(), e.u) ||
                !std::binary_search(bag.begin(), bag.end(), e.v))
                throw std::logic_error("introduce-edge bag misses an endpoint");
            NiceNode ie{NiceNode::IntroduceEdge, -1, ei, cur, -1, bag};
            ie.vertex = -1;
            cur = nb_builder.add(std::move(ie));
        }
        nodes[f].left = cur;
    }

    // Rebuild in post order so the DP can run a simple forward pass.
    NiceTreeDecomposition out;
    std::vector<int> remap(nodes.size(), -1);
    std::function<int(int)> emit = [&](int id) -> int {
        NiceNode nd = nodes[id];
        if (nd.left >= 0) nd.left = emit(nd.left);
        if (nd.right >= 0) nd.right = emit(nd.right);
        out.nodes.push_back(std::move(nd));
        return static_cast<int>(out.nodes.size()) - 1;
    };
    out.root = emit(root);
    validate_nice(out, g);
    return out;
}

void validate_nice(const NiceTreeDecomposition& ntd, const Graph& g) {
    const auto& nodes = ntd.nodes;
    if (nodes.empty() || ntd.root < 0) throw std::logic_error("nice: empty");
    if (!nodes[ntd.root].bag.empty()) throw std::logic_error("nice: root bag not empty");

    std::vector<int> edge_intro_count(g.num_edges(), 0);
    std::vector<int> forget_count(g.num_vertices(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NiceNode& nd = nodes[i];
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end()))
            throw std::logic_error("nice: bag not sorted");
        auto child_bag = [&](int c) -> const std::vector<int>& {
            if (c < 0 || c >= static_cast<int>(i))
                throw std::logic_error("nice: nodes not in post order");
            return nodes[c].bag;
        };
        switch (nd.type) {
            case NiceNode::Leaf:
                if (!nd.bag.empty() || nd.left != -1 || nd.right != -1)
                    throw std::logic_error("nice: malformed leaf");
                break;
            case NiceNode::IntroduceVertex: {
                const auto& cb = child_bag(nd.left);
                std::vector<int> expect = cb;
                expect.insert(std::lower_bound(expect.begin(), expect.end(), nd.vertex),
                              nd.vertex);
                if (expect != nd.bag) throw std::logic_error("nice: bad introduce bag");
                break;
            }
            case NiceNode::ForgetVertex: {
                const auto& cb = child_bag(nd.left);
                std::vector<int> expect;
                for (int v : cb)
                    if (v != nd.vertex) expect.push_back(v);
                if (expect != nd.bag || expect.size() + 1 != cb.size())
                    throw std::logic_error("nice: bad forget bag");
                ++forget_count[nd.vertex];
                break;
            }
            case NiceNode::IntroduceEdge: {
                const auto& cb = child_bag(nd.left);
                if (cb != nd.bag) throw std::logic_error("nice: introduce-edge bag changed");
                const Edge& e = g.edge(nd.edge);
                if (!std::binary_search(nd.bag.begin(), nd.bag.end(), e.u) ||
                    !std::binary_search(nd.bag.begin(), nd.bag.end(), e.v))
                    throw std::logic_error("nice: introduce-edge endpoints not in bag");
                ++edge_intro_count[nd.edge];
                break;
            }
            case NiceNode::Join: {
                if (child_bag(nd.left) != nd.bag || child_bag(nd.right) != nd.bag)
                    throw std::logic_error("nice: join bags differ");
                break;
            }
        }
    }
    for (int i = 0; i < g.num_edges(); ++i)
        if (edge_intro_count[i] != 1)
            throw std::logic_error("nice: edge not introduced exactly once");
    for (int v = 0; v < g.num_vertices(); ++v)
        if (forget_count[v] != 1)
            throw std::logic_error("nice: vertex not forgotten exactly once");

    if (auto bad = validate_tree_decomposition(g, ntd.underlying()))
        throw std::logic_error("nice: underlying decomposition invalid: " + bad->message);
}

std::string serialize_td(const TreeDecomposition& td, int num_vertices) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << num_vertices
        << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

TreeDecomposition parse_td(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    TreeDecomposition td;
    int declared_bags = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c' || line[0] == '#') continue;
        std::istringstream ls(line);
        auto bad = [&](const std::string& msg) {
            throw std::runtime_error("td line " + std::to_string(lineno) + ": " + msg);
        };
        if (line[0] == 's') {
            std::string s, kind;
            int width_plus1, n;
            if (!(ls >> s >> kind >> declared_bags >> width_plus1 >> n) || kind != "td")
                bad("malformed s-line");
            td.bags.assign(declared_bags, {});
        } else if (line[0] == 'b') {
            char b;
            int id;
            if (!(ls >> b >> id) || declared_bags < 0 || id < 1 || id > declared_bags)
                bad("malformed b-line");
            int v;
            while (ls >> v) td.bags[id - 1].push_back(v - 1);
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
        } else {
            int a, b;
            if (!(ls >> a >> b) || declared_bags < 0 || a < 1 || b < 1 ||
                a > declared_bags || b > declared_bags)
                bad("malformed tree edge");
            td.tree_edges.push_back({a - 1, b - 1});
        }
    }
    if (declared_bags < 0) throw std::runtime_error("td: missing s-line");
    return td;
}

}  // namespace bond
