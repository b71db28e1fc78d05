#include "bond/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bond {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, int line, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(line, std::string("expected integer for ") + what + ", got '" + tok + "'");
    }
}

}  // namespace

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    auto next_content_line = [&](std::vector<std::string>& toks) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line[0] == '#') continue;
            toks = tokens_of(line);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_content_line(toks)) fail(lineno, "missing header line");
    if (toks.size() < 2 || toks.size() > 4)
        fail(lineno, "header must be: n m [weighted|unweighted] [multi|simple]");
    int n = parse_int(toks[0], lineno, "n");
    int m = parse_int(toks[1], lineno, "m");
    if (n < 0 || m < 0) fail(lineno, "n and m must be non-negative");
    bool weighted = false, multi = false;
    if (toks.size() >= 3) {
        if (toks[2] == "weighted") weighted = true;
        else if (toks[2] == "unweighted") weighted = false;
        else fail(lineno, "expected 'weighted' or 'unweighted', got '" + toks[2] + "'");
    }
    if (toks.size() == 4) {
        if (toks[3] == "multi") multi = true;
        else if (toks[3] == "simple") multi = false;
        else fail(lineno, "expected 'multi' or 'simple', got '" + toks[3] + "'");
    }

    Graph g(n, multi, weighted);
    for (int i = 0; i < m; ++i) {
        if (!next_content_line(toks)) fail(lineno, "expected " + std::to_string(m) +
                                           " edges, file ended after " + std::to_string(i));
        std::size_t want = weighted ? 3 : 2;
        if (toks.size() != want)
            fail(lineno, weighted ? "weighted edge line must be: u v w"
                                  : "unexpected weight column; edge line must be: u v");
        int u = parse_int(toks[0], lineno, "u");
        int v = parse_int(toks[1], lineno, "v");
        int w = weighted ? parse_int(toks[2], lineno, "w") : 1;
        try {
            g.add_edge(u, v, w);
        } catch (const std::exception& e) {
            fail(lineno, e.what());
        }
    }
    if (next_content_line(toks)) fail(lineno, "trailing content after last edge");
    return g;
}

Graph parse_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    try {
        return parse_graph(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << ' '
        << (g.weighted() ? "weighted" : "unweighted") << ' '
        << (g.multigraph_allowed() ? "multi" : "simple") << '\n';
    for (const Edge& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (g.weighted()) out << ' ' << e.weight;
        out << '\n';
    }
    return out.str();
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << serialize_graph(g);
}

}  // namespace bond
