#ifndef BOND_IO_HPP
#define BOND_IO_HPP

#include <string>

#include "bond/graph.hpp"

namespace bond {

/// Edge-list text format:
///   first line:  n m [weighted|unweighted] [multi|simple]
///   then m lines: u v [w]        (0-indexed; w only on weighted graphs)
/// Lines starting with '#' are comments. Errors carry line diagnostics.
Graph parse_graph(const std::string& text);
Graph parse_graph_file(const std::string& path);

std::string serialize_graph(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

}  // namespace bond

#endif
