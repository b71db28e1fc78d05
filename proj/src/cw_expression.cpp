#include "bond/cw_expression.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace bond {

namespace {
constexpr int kMaxLabel = 16;
}

int WExpression::width() const {
    int w = 0;
    for (const WNode& nd : nodes) {
        if (nd.kind == WNode::Create) w = std::max(w, nd.a);
        else if (nd.kind != WNode::Union) w = std::max({w, nd.a, nd.b});
    }
    return w;
}

int WExpression::num_create_leaves() const {
    int c = 0;
    for (const WNode& nd : nodes) c += nd.kind == WNode::Create;
    return c;
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1, col = 1;
    WExpression out;
    std::set<int> seen_ids;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("w-expression " + std::to_string(line) + ":" +
                                 std::to_string(col) + ": " + msg);
    }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_space() {
        while (pos < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[pos]))) advance();
            else if (text[pos] == '#') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else {
                break;
            }
        }
    }

    char peek() {
        skip_space();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    int number() {
        skip_space();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            advance();
        if (start == pos) fail("expected a number");
        return std::stoi(text.substr(start, pos - start));
    }

    int label() {
        int l = number();
        if (l < 1 || l > kMaxLabel) fail("label out of range (1.." +
                                         std::to_string(kMaxLabel) + ")");
        return l;
    }

    int expr() {
        expect('(');
        skip_space();
        if (pos >= text.size()) fail("unexpected end of input");
        char op = text[pos];
        advance();
        WNode nd;
        switch (op) {
            case 'v': {
                nd.kind = WNode::Create;
                nd.a = label();
                nd.b = number();
                if (!seen_ids.insert(nd.b).second)
                    fail("duplicate vertex id " + std::to_string(nd.b));
                break;
            }
            case 'u': {
                nd.kind = WNode::Union;
                nd.left = expr();
                nd.right = expr();
                break;
            }
            case 'j':
            case 'r': {
                nd.kind = op == 'j' ? WNode::Join : WNode::Relabel;
                nd.a = label();
                nd.b = label();
                if (nd.a == nd.b) fail("labels i and j must differ");
                nd.left = expr();
                break;
            }
            default:
                fail(std::string("unknown operator '") + op + "'");
        }
        expect(')');
        out.nodes.push_back(nd);
        return static_cast<int>(out.nodes.size()) - 1;
    }

    WExpression run() {
        out.root = expr();
        skip_space();
        if (pos < text.size()) fail("trailing content after expression");
        return std::move(out);
    }
};

}  // namespace

WExpression parse_w_expression(const std::string& text) {
    Parser p(text);
    return p.run();
}

WExpression parse_w_expression_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_w_expression(buf.str());
}

std::string serialize_w_expression(const WExpression& e) {
    std::ostringstream out;
    std::function<void(int)> emit = [&](int id) {
        const WNode& nd = e.nodes[id];
        switch (nd.kind) {
            case WNode::Create:
                out << "(v " << nd.a << ' ' << nd.b << ')';
                break;
            case WNode::Union:
                out << "(u ";
                emit(nd.left);
                out << ' ';
                emit(nd.right);
                out << ')';
                break;
            case WNode::Join:
            case WNode::Relabel:
                out << (nd.kind == WNode::Join ? "(j " : "(r ") << nd.a << ' '
                    << nd.b << ' ';
                emit(nd.left);
                out << ')';
                break;
        }
    };
    emit(e.root);
    return out.str();
}

namespace {

std::vector<int> postorder_of(const WExpression& e) {
    std::vector<int> order;
    std::function<void(int)> walk = [&](int id) {
        if (id < 0 || id >= static_cast<int>(e.nodes.size()))
            throw std::invalid_argument("w-expression: bad child index");
        const WNode& nd = e.nodes[id];
        if (nd.left >= 0) walk(nd.left);
        if (nd.right >= 0) walk(nd.right);
        order.push_back(id);
    };
    walk(e.root);
    return order;
}

}  // namespace

WEval eval_w_expression(const WExpression& e) {
    if (e.root < 0) throw std::invalid_argument("empty expression");
    WEval ev;
    ev.postorder = postorder_of(e);

    int n = 0;
    std::set<int> ids;
    for (const WNode& nd : e.nodes)
        if (nd.kind == WNode::Create) ids.insert(nd.b);
    n = static_cast<int>(ids.size());
    if (!ids.empty() && (*ids.begin() != 0 || *ids.rbegin() != n - 1))
        throw std::invalid_argument("eval: vertex ids must form 0..n-1");

    ev.width = std::max(e.width(), 1);
    ev.labels.assign(n, 0);
    std::vector<std::pair<int, int>> edge_list;  // normalized (min,max)
    std::unordered_set<std::uint64_t> edge_keys;
    auto key_of = [](int u, int v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    };

    std::size_t count = e.nodes.size();
    ev.node_vertices.resize(count);
    ev.node_vertex_labels.resize(count);
    ev.node_label_count.assign(count, std::vector<int>(ev.width + 1, 0));
    ev.node_edges.resize(count);

    for (int id : ev.postorder) {
        const WNode& nd = e.nodes[id];
        auto& verts = ev.node_vertices[id];
        auto& vlabels = ev.node_vertex_labels[id];
        auto& lcount = ev.node_label_count[id];
        switch (nd.kind) {
            case WNode::Create:
                verts = {nd.b};
                vlabels = {nd.a};
                lcount[nd.a] = 1;
                break;
            case WNode::Union: {
                const auto& lv = ev.node_vertices[nd.left];
                const auto& rv = ev.node_vertices[nd.right];
                const auto& ll = ev.node_vertex_labels[nd.left];
                const auto& rl = ev.node_vertex_labels[nd.right];
                std::size_t i = 0, j = 0;
                while (i < lv.size() || j < rv.size()) {
                    if (j == rv.size() || (i < lv.size() && lv[i] < rv[j])) {
                        verts.push_back(lv[i]);
                        vlabels.push_back(ll[i]);
                        ++i;
                    } else if (i < lv.size() && lv[i] == rv[j]) {
                        throw std::invalid_argument("eval: union operands share a vertex");
                    } else {
                        verts.push_back(rv[j]);
                        vlabels.push_back(rl[j]);
                        ++j;
                    }
                }
                for (int l = 1; l <= ev.width; ++l)
                    lcount[l] = ev.node_label_count[nd.left][l] +
                                ev.node_label_count[nd.right][l];
                ev.node_edges[id] = ev.node_edges[nd.left];
                for (int x : ev.node_edges[nd.right]) ev.node_edges[id].push_back(x);
                std::sort(ev.node_edges[id].begin(), ev.node_edges[id].end());
                break;
            }
            case WNode::Relabel: {
                verts = ev.node_vertices[nd.left];
                vlabels = ev.node_vertex_labels[nd.left];
                for (int& l : vlabels)
                    if (l == nd.a) l = nd.b;
                lcount = ev.node_label_count[nd.left];
                lcount[nd.b] += lcount[nd.a];
                lcount[nd.a] = 0;
                ev.node_edges[id] = ev.node_edges[nd.left];
                break;
            }
            case WNode::Join: {
                verts = ev.node_vertices[nd.left];
                vlabels = ev.node_vertex_labels[nd.left];
                lcount = ev.node_label_count[nd.left];
                ev.node_edges[id] = ev.node_edges[nd.left];
                std::vector<int> is, js;
                for (std::size_t x = 0; x < verts.size(); ++x) {
                    if (vlabels[x] == nd.a) is.push_back(verts[x]);
                    if (vlabels[x] == nd.b) js.push_back(verts[x]);
                }
                for (int u : is)
                    for (int v : js) {
                        std::uint64_t k = key_of(u, v);
                        if (edge_keys.insert(k).second) {
                            edge_list.push_back({std::min(u, v), std::max(u, v)});
                            ev.node_edges[id].push_back(
                                static_cast<int>(edge_list.size()) - 1);
                        }
                    }
                std::sort(ev.node_edges[id].begin(), ev.node_edges[id].end());
                break;
            }
        }
        for (std::size_t x = 0; x < verts.size(); ++x) ev.labels[verts[x]] = vlabels[x];
    }

    ev.graph = Graph(n);
    for (auto [u, v] : edge_list) ev.graph.add_edge(u, v);
    return ev;
}

WExpression make_irredundant(const WExpression& e) {
    WEval ev = eval_w_expression(e);  // validates the expression
    (void)ev;

    // Re-evaluate incrementally, rebuilding the tree without no-op joins.
    WExpression out;
    struct SubState {
        std::vector<int> verts;
        std::vector<int> labels;  // aligned
        std::set<std::pair<int, int>> edges;
        int node = -1;  // root of the rebuilt subtree
    };
    std::function<SubState(int)> rebuild = [&](int id) -> SubState {
        const WNode& nd = e.nodes[id];
        switch (nd.kind) {
            case WNode::Create: {
                SubState s;
                s.verts = {nd.b};
                s.labels = {nd.a};
                out.nodes.push_back(nd);
                s.node = static_cast<int>(out.nodes.size()) - 1;
                return s;
            }
            case WNode::Union: {
                SubState l = rebuild(nd.left);
                SubState r = rebuild(nd.right);
                SubState s;
                s.verts = l.verts;
                s.labels = l.labels;
                for (std::size_t i = 0; i < r.verts.size(); ++i) {
                    s.verts.push_back(r.verts[i]);
                    s.labels.push_back(r.labels[i]);
                }
                s.edges = l.edges;
                s.edges.insert(r.edges.begin(), r.edges.end());
                out.nodes.push_back({WNode::Union, 0, 0, l.node, r.node});
                s.node = static_cast<int>(out.nodes.size()) - 1;
                return s;
            }
            case WNode::Relabel: {
                SubState s = rebuild(nd.left);
                for (int& l : s.labels)
                    if (l == nd.a) l = nd.b;
                out.nodes.push_back({WNode::Relabel, nd.a, nd.b, s.node, -1});
                s.node = static_cast<int>(out.nodes.size()) - 1;
                return s;
            }
            case WNode::Join: {
                SubState s = rebuild(nd.left);
                long fresh = 0, stale = 0;
                for (std::size_t x = 0; x < s.verts.size(); ++x)
                    for (std::size_t y = 0; y < s.verts.size(); ++y) {
                        if (s.labels[x] != nd.a || s.labels[y] != nd.b) continue;
                        auto key = std::minmax(s.verts[x], s.verts[y]);
                        if (s.edges.count({key.first, key.second})) ++stale;
                        else ++fresh;
                    }
                if (fresh == 0) return s;  // fully redundant join: drop
                if (stale > 0)
                    throw std::invalid_argument(
                        "make_irredundant: partially redundant join cannot be "
                        "normalized without extra labels");
                for (std::size_t x = 0; x < s.verts.size(); ++x)
                    for (std::size_t y = 0; y < s.verts.size(); ++y)
                        if (s.labels[x] == nd.a && s.labels[y] == nd.b)
                            s.edges.insert(std::minmax(s.verts[x], s.verts[y]));
                out.nodes.push_back({WNode::Join, nd.a, nd.b, s.node, -1});
                s.node = static_cast<int>(out.nodes.size()) - 1;
                return s;
            }
        }
        throw std::logic_error("unreachable");
    };
    out.root = rebuild(e.root).node;
    return out;
}

namespace {

// Clones the subtree rooted at `src` into `dst`, offsetting vertex ids.
int clone_offset(const WExpression& src, int id, WExpression& dst, int offset) {
    const WNode& nd = src.nodes[id];
    WNode copy = nd;
    if (nd.left >= 0) copy.left = clone_offset(src, nd.left, dst, offset);
    if (nd.right >= 0) copy.right = clone_offset(src, nd.right, dst, offset);
    if (nd.kind == WNode::Create) copy.b += offset;
    dst.nodes.push_back(copy);
    return static_cast<int>(dst.nodes.size()) - 1;
}

}  // namespace

WExpression psi_expression(const WExpression& e, int n) {
    WEval ev = eval_w_expression(e);
    if (ev.graph.num_vertices() != n)
        throw std::invalid_argument("psi_expression: n must equal |V(G)|");
    if (n < 1) throw std::invalid_argument("psi_expression: empty pattern");
    int w = std::max(e.width(), 2);

    WExpression out;
    int acc = -1;
    for (int c = 0; c < n; ++c) {
        int copy = clone_offset(e, e.root, out, c * n);
        for (int l = 2; l <= e.width(); ++l) {
            out.nodes.push_back({WNode::Relabel, l, 1, copy, -1});
            copy = static_cast<int>(out.nodes.size()) - 1;
        }
        if (acc == -1) {
            acc = copy;
        } else {
            out.nodes.push_back({WNode::Union, 0, 0, acc, copy});
            acc = static_cast<int>(out.nodes.size()) - 1;
        }
    }
    // The two adjacent extra vertices, both ending with label 2.
    out.nodes.push_back({WNode::Create, 1, n * n, -1, -1});
    int va = static_cast<int>(out.nodes.size()) - 1;
    out.nodes.push_back({WNode::Create, 2, n * n + 1, -1, -1});
    int vb = static_cast<int>(out.nodes.size()) - 1;
    out.nodes.push_back({WNode::Union, 0, 0, va, vb});
    out.nodes.push_back({WNode::Join, 1, 2, static_cast<int>(out.nodes.size()) - 1, -1});
    out.nodes.push_back({WNode::Relabel, 1, 2, static_cast<int>(out.nodes.size()) - 1, -1});
    int pair = static_cast<int>(out.nodes.size()) - 1;

    out.nodes.push_back({WNode::Union, 0, 0, acc, pair});
    out.nodes.push_back({WNode::Join, 1, 2, static_cast<int>(out.nodes.size()) - 1, -1});
    out.root = static_cast<int>(out.nodes.size()) - 1;

    if (out.width() != w) throw std::logic_error("psi_expression: width drifted");
    return out;
}

namespace {

struct ExprBuilder {
    WExpression e;

    int create(int label, int id) {
        e.nodes.push_back({WNode::Create, label, id, -1, -1});
        return last();
    }
    int unite(int l, int r) {
        e.nodes.push_back({WNode::Union, 0, 0, l, r});
        return last();
    }
    int join(int i, int j, int c) {
        e.nodes.push_back({WNode::Join, i, j, c, -1});
        return last();
    }
    int relabel(int i, int j, int c) {
        e.nodes.push_back({WNode::Relabel, i, j, c, -1});
        return last();
    }
    int last() const { return static_cast<int>(e.nodes.size()) - 1; }
    WExpression done(int root) {
        e.root = root;
        return std::move(e);
    }
};

}  // namespace

WExpression builtin_expression(const std::string& kind, int p1, int p2) {
    ExprBuilder b;
    if (kind == "clique") {
        if (p1 < 1) throw std::invalid_argument("clique: size must be >= 1");
        int cur = b.create(1, 0);
        for (int i = 1; i < p1; ++i)
            cur = b.relabel(2, 1, b.join(1, 2, b.unite(cur, b.create(2, i))));
        return b.done(cur);
    }
    if (kind == "complete_bipartite") {
        if (p1 < 1 || p2 < 1)
            throw std::invalid_argument("complete_bipartite: sizes must be >= 1");
        int cur = b.create(1, 0);
        for (int i = 1; i < p1; ++i) cur = b.unite(cur, b.create(1, i));
        for (int i = 0; i < p2; ++i) cur = b.unite(cur, b.create(2, p1 + i));
        return b.done(b.join(1, 2, cur));
    }
    if (kind == "path") {
        if (p1 < 1) throw std::invalid_argument("path: size must be >= 1");
        int cur = b.create(2, 0);  // label 2 marks the growing end
        for (int i = 1; i < p1; ++i) {
            cur = b.join(2, 3, b.unite(cur, b.create(3, i)));
            cur = b.relabel(3, 2, b.relabel(2, 1, cur));
        }
        return b.done(cur);
    }
    if (kind == "cycle") {
        if (p1 < 3) throw std::invalid_argument("cycle: size must be >= 3");
        // Label 1 pins vertex 0 so the cycle can be closed at the end.
        int cur = b.join(1, 3, b.unite(b.create(1, 0), b.create(3, 1)));
        for (int i = 2; i < p1; ++i) {
            cur = b.join(3, 4, b.unite(cur, b.create(4, i)));
            cur = b.relabel(4, 3, b.relabel(3, 2, cur));
        }
        return b.done(b.join(1, 3, cur));
    }
    throw std::invalid_argument("builtin_expression: unknown kind '" + kind + "'");
}

}  // namespace bond
