#include "wgr/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace wgr {

std::string format_double(double x) {
  if (x == std::numeric_limits<double>::infinity()) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  if (token == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw std::invalid_argument("invalid-pair: bad numeric token '" + token +
                                "'");
  }
  return value;
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
  }
}

void write_graph_file(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_graph(out, g);
}

WeightedGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("invalid-pair: empty graph stream");
  }
  std::istringstream header(line);
  std::size_t n = 0, m = 0;
  if (!(header >> n >> m)) {
    throw std::invalid_argument("invalid-pair: bad graph header '" + line +
                                "'");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("invalid-pair: expected " +
                                  std::to_string(m) + " edge lines");
    }
    std::istringstream row(line);
    std::uint64_t u = 0, v = 0;
    std::string w_token;
    if (!(row >> u >> v >> w_token)) {
      throw std::invalid_argument("invalid-pair: bad edge line '" + line +
                                  "'");
    }
    if (u >= v) {
      throw std::invalid_argument(
          "not-an-edge: edge lines require u < v, got '" + line + "'");
    }
    Edge e{Vertex(u), Vertex(v), parse_double(w_token)};
    if (!edges.empty()) {
      const Edge& prev = edges.back();
      if (prev.u > e.u || (prev.u == e.u && prev.v >= e.v)) {
        throw std::invalid_argument(
            "not-an-edge: edge lines must be sorted by (u, v)");
      }
    }
    edges.push_back(e);
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

}  // namespace wgr
