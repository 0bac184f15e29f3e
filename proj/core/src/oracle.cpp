#include "wgr/oracle.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <utility>

#include "wgr/components.hpp"
#include "wgr/graph_io.hpp"

namespace wgr {

namespace {

// Union-find over the layer's edges; label values are arbitrary but stable.
std::vector<std::uint32_t> dsu_labels(const WeightedGraph& g, double thr) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> parent(n);
  for (std::size_t v = 0; v < n; ++v) parent[v] = std::uint32_t(v);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : g.edges()) {
    if (e.weight < thr) continue;
    std::uint32_t a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = find(std::uint32_t(v));
  return label;
}

}  // namespace

// Reusable single-source engine. dist stays +inf except for entries touched
// by the current run; the next run resets exactly those entries.
struct OracleSession::Impl {
  const WeightedGraph* g = nullptr;

  std::vector<double> dist;
  std::vector<Vertex> touched;
  std::vector<std::pair<double, Vertex>> heap;
  double run_thr = -1.0;
  Vertex run_src = 0;
  bool has_run = false;

  std::map<double, std::vector<std::uint32_t>> comp_labels;

  // shadow-mode caches built through the public engines
  std::map<double, std::vector<std::uint32_t>> shadow_comp;
  std::map<std::pair<double, Vertex>, std::vector<double>> shadow_dist;

  const std::vector<double>& run(double thr, Vertex src) {
    if (has_run && run_thr == thr && run_src == src) return dist;
    if (dist.empty()) dist.assign(g->vertex_count(), kInfDist);
    for (Vertex v : touched) dist[v] = kInfDist;
    touched.clear();
    heap.clear();

    dist[src] = 0.0;
    touched.push_back(src);
    heap.push_back({0.0, src});
    auto cmp = [](const std::pair<double, Vertex>& a,
                  const std::pair<double, Vertex>& b) { return a > b; };
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), cmp);
      auto [d, u] = heap.back();
      heap.pop_back();
      if (d > dist[u]) continue;
      for (const AdjEntry& e : g->neighbors(u)) {
        if (e.weight < thr) continue;
        double nd = d + e.weight;
        if (nd < dist[e.to]) {
          if (dist[e.to] == kInfDist) touched.push_back(e.to);
          dist[e.to] = nd;
          heap.push_back({nd, e.to});
          std::push_heap(heap.begin(), heap.end(), cmp);
        }
      }
    }
    run_thr = thr;
    run_src = src;
    has_run = true;
    return dist;
  }

  const std::vector<std::uint32_t>& labels(double thr) {
    auto it = comp_labels.find(thr);
    if (it == comp_labels.end()) {
      it = comp_labels.emplace(thr, dsu_labels(*g, thr)).first;
    }
    return it->second;
  }

  const std::vector<std::uint32_t>& shadow_labels(double thr) {
    auto it = shadow_comp.find(thr);
    if (it == shadow_comp.end()) {
      it = shadow_comp.emplace(thr, component_labels(layer(*g, thr))).first;
    }
    return it->second;
  }

  const std::vector<double>& shadow_row(double thr, Vertex src) {
    auto key = std::make_pair(thr, src);
    auto it = shadow_dist.find(key);
    if (it == shadow_dist.end()) {
      it = shadow_dist.emplace(key, shortest_paths(layer(*g, thr), src).dist)
               .first;
    }
    return it->second;
  }
};

OracleSession::OracleSession(const WeightedGraph& hidden, OracleOptions opts)
    : g_(&hidden), opts_(opts), impl_(std::make_unique<Impl>()) {
  impl_->g = g_;
}

OracleSession::~OracleSession() = default;

std::size_t OracleSession::vertex_count() const { return g_->vertex_count(); }
double OracleSession::announced_wmax() const { return g_->max_weight(); }
std::size_t OracleSession::announced_max_degree() const {
  return g_->max_degree();
}

void OracleSession::check_threshold(double thr) {
  if (!(thr >= 1.0)) {
    throw std::invalid_argument("invalid-threshold: " + std::to_string(thr) +
                                " below 1");
  }
}

void OracleSession::check_vertex(Vertex v) const {
  if (v >= g_->vertex_count()) {
    throw std::invalid_argument("invalid-pair: vertex id " +
                                std::to_string(v) + " out of range");
  }
}

void OracleSession::precharge(std::uint64_t pending) const {
  if (budget_ && ledger_.attempt_total + pending > *budget_) {
    throw BudgetExhaustedError(*budget_);
  }
}

double OracleSession::eval_q_w(Vertex u, Vertex v, double thr) {
  double w = g_->edge_weight(u, v);
  return w >= thr ? w : 0.0;
}

double OracleSession::q_w(Vertex u, Vertex v, double thr) {
  check_threshold(thr);
  check_vertex(u);
  check_vertex(v);
  if (u == v) {
    throw std::invalid_argument("invalid-pair: q_w requires u != v");
  }
  precharge();
  double result = eval_q_w(u, v, thr);
  ledger_.charge(QueryKind::weight);
  if (opts_.trace) {
    *opts_.trace << "qw " << u << ' ' << v << ' ' << format_double(thr) << ' '
                 << format_double(result) << '\n';
  }
  if (opts_.shadow_check) {
    ++shadow_checks_;
    // independent route: scan the other endpoint's adjacency
    double check = 0.0;
    for (const AdjEntry& e : g_->neighbors(v)) {
      if (e.to == u) {
        check = e.weight >= thr ? e.weight : 0.0;
        break;
      }
    }
    if (check != result) ++shadow_mismatches_;
  }
  return result;
}

double OracleSession::q_d(Vertex u, Vertex v, double thr) {
  check_threshold(thr);
  check_vertex(u);
  check_vertex(v);
  precharge();
  double result;
  Vertex src = std::min(u, v), dst = std::max(u, v);
  if (u == v) {
    result = 0.0;
  } else {
    result = impl_->run(thr, src)[dst];
  }
  ledger_.charge(QueryKind::distance);
  if (opts_.trace) {
    *opts_.trace << "qd " << u << ' ' << v << ' ' << format_double(thr) << ' '
                 << format_double(result) << '\n';
  }
  if (opts_.shadow_check) {
    ++shadow_checks_;
    double check = u == v ? 0.0 : impl_->shadow_row(thr, src)[dst];
    if (check != result) ++shadow_mismatches_;
  }
  return result;
}

int OracleSession::q_c(Vertex u, const std::vector<Vertex>& set, double thr) {
  check_threshold(thr);
  check_vertex(u);
  for (Vertex v : set) {
    if (v >= g_->vertex_count()) {
      throw std::invalid_argument("invalid-set: vertex id " +
                                  std::to_string(v) + " out of range");
    }
    if (v == u) {
      throw std::invalid_argument("invalid-set: q_c set contains the subject " +
                                  std::to_string(u));
    }
  }
  precharge();
  const auto& labels = impl_->labels(thr);
  int result = 0;
  for (Vertex v : set) {
    if (labels[v] == labels[u]) {
      result = 1;
      break;
    }
  }
  ledger_.charge(QueryKind::component);
  if (opts_.trace) {
    *opts_.trace << "qc " << u << ' ' << set.size() << ' '
                 << format_double(thr) << ' ' << result << '\n';
  }
  if (opts_.shadow_check) {
    ++shadow_checks_;
    const auto& shadow = impl_->shadow_labels(thr);
    int check = 0;
    for (Vertex v : set) {
      if (shadow[v] == shadow[u]) {
        check = 1;
        break;
      }
    }
    if (check != result) ++shadow_mismatches_;
  }
  return result;
}

BatchTable OracleSession::batch_query(QueryKind kind,
                                      const std::vector<Vertex>& a,
                                      const std::vector<Vertex>& b,
                                      double thr) {
  if (kind == QueryKind::component) {
    throw std::invalid_argument("invalid-set: q_c does not batch");
  }
  check_threshold(thr);
  for (Vertex v : a) check_vertex(v);
  for (Vertex v : b) check_vertex(v);

  BatchTable table;
  table.rows = a.size();
  table.cols = b.size();
  table.values.assign(a.size() * b.size(), 0.0);

  if (kind == QueryKind::weight) {
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t c = 0; c < b.size(); ++c) {
        if (a[r] == b[c]) continue;  // identical pairs skipped, uncharged
        table.values[r * b.size() + c] = q_w(a[r], b[c], thr);
      }
    }
    return table;
  }

  // distance: one single-source run per row, or per column when the column
  // side is smaller (bounded so the precomputed side never gets large)
  const bool by_column = b.size() < a.size() && b.size() <= 512;
  std::vector<std::vector<double>> columns;
  if (by_column) {
    columns.reserve(b.size());
    for (Vertex src : b) columns.push_back(impl_->run(thr, src));
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    const std::vector<double>* row = nullptr;
    if (!by_column) row = &impl_->run(thr, a[r]);
    for (std::size_t c = 0; c < b.size(); ++c) {
      precharge();
      double result;
      if (a[r] == b[c]) {
        result = 0.0;
      } else {
        result = by_column ? columns[c][a[r]] : (*row)[b[c]];
      }
      table.values[r * b.size() + c] = result;
      ledger_.charge(QueryKind::distance);
      if (opts_.trace) {
        *opts_.trace << "qd " << a[r] << ' ' << b[c] << ' '
                     << format_double(thr) << ' ' << format_double(result)
                     << '\n';
      }
      if (opts_.shadow_check) {
        ++shadow_checks_;
        Vertex src = by_column ? b[c] : a[r];
        Vertex dst = by_column ? a[r] : b[c];
        double check =
            a[r] == b[c] ? 0.0 : impl_->shadow_row(thr, src)[dst];
        if (check != result) ++shadow_mismatches_;
      }
    }
  }
  return table;
}

}  // namespace wgr
