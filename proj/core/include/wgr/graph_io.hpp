#pragma once

#include <iosfwd>
#include <string>

#include "wgr/graph.hpp"

namespace wgr {

// Text format: first line "n m", then m lines "u v w" with 0-based ids,
// u < v, sorted by (u, v). Weights are written as shortest round-trip
// decimals so reading back reproduces the exact doubles.
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_graph_file(const std::string& path, const WeightedGraph& g);

WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);

// Shortest decimal that round-trips the exact double. +inf renders as "inf".
std::string format_double(double x);
double parse_double(const std::string& token);

}  // namespace wgr
