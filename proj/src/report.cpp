#include "bond/report.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bond {

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "text") return OutputFormat::Text;
    if (name == "dot") return OutputFormat::Dot;
    throw std::invalid_argument("unknown format '" + name + "'");
}

std::string emit_result(const SolveReport& report, const Graph& g,
                        OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: {
            nlohmann::json j;
            j["problem"] = report.problem;
            j["n"] = report.n;
            j["m"] = report.m;
            if (report.k >= 0) {
                j["k"] = report.k;
                j["answer"] = report.yes ? "YES" : "NO";
            } else {
                j["k"] = nullptr;
                j["answer"] = nullptr;
            }
            j["optimum"] = report.optimum;
            j["side"] = nlohmann::json::array();
            j["crossing_edges"] = nlohmann::json::array();
            if (report.witness) {
                j["side"] = report.witness->side.to_vector();
                for (int ei : report.witness->crossing_edges) {
                    const Edge& e = g.edge(ei);
                    j["crossing_edges"].push_back({e.u, e.v});
                }
            }
            j["elapsed_ms"] = report.elapsed_ms;
            return j.dump(2) + "\n";
        }
        case OutputFormat::Text: {
            std::ostringstream out;
            out << report.problem << ": n=" << report.n << " m=" << report.m;
            if (report.k >= 0)
                out << " k=" << report.k << " answer=" << (report.yes ? "YES" : "NO");
            out << " optimum=" << report.optimum << '\n';
            if (report.witness) {
                out << "side:";
                for (int v : report.witness->side.to_vector()) out << ' ' << v;
                out << "\ncrossing:";
                for (int ei : report.witness->crossing_edges) {
                    const Edge& e = g.edge(ei);
                    out << ' ' << e.u << '-' << e.v;
                }
                out << '\n';
            }
            return out.str();
        }
        case OutputFormat::Dot: {
            std::ostringstream out;
            out << "graph bond {\n";
            for (int v = 0; v < g.num_vertices(); ++v) {
                out << "  v" << v;
                if (report.witness && report.witness->side.contains(v))
                    out << " [style=filled, fillcolor=lightblue]";
                out << ";\n";
            }
            std::vector<char> bold(g.num_edges(), 0);
            if (report.witness)
                for (int ei : report.witness->crossing_edges) bold[ei] = 1;
            for (int ei = 0; ei < g.num_edges(); ++ei) {
                const Edge& e = g.edge(ei);
                out << "  v" << e.u << " -- v" << e.v;
                if (bold[ei]) out << " [style=bold, penwidth=2]";
                out << ";\n";
            }
            out << "}\n";
            return out.str();
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace bond
