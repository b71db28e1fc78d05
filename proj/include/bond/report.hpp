#ifndef BOND_REPORT_HPP
#define BOND_REPORT_HPP

#include <optional>
#include <string>

#include "bond/graph.hpp"

namespace bond {

/// A solver outcome ready for emission. `answer` is meaningful when k >= 0;
/// the witness is always the best bond found.
struct SolveReport {
    std::string problem;
    int n = 0, m = 0;
    int k = -1;  // -1: no threshold, report the optimum only
    bool yes = false;
    int optimum = 0;
    std::optional<Bond> witness;
    double elapsed_ms = 0.0;
};

enum class OutputFormat { Json, Text, Dot };

OutputFormat parse_format(const std::string& name);

/// JSON schema: {problem, n, m, k, answer, optimum, side, crossing_edges,
/// elapsed_ms}. DOT colors side-1 vertices and bolds crossing edges.
std::string emit_result(const SolveReport& report, const Graph& g,
                        OutputFormat format);

}  // namespace bond

#endif
