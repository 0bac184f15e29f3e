#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgr/graph.hpp"
#include "wgr/shortest_paths.hpp"

namespace wgr {

// Raised when a query would push the per-attempt total past the budget.
// The offending query is not answered and not charged.
class BudgetExhaustedError : public std::runtime_error {
public:
  explicit BudgetExhaustedError(std::uint64_t budget)
      : std::runtime_error("budget-exhausted: per-attempt query budget " +
                           std::to_string(budget) + " reached"),
        budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

private:
  std::uint64_t budget_;
};

enum class QueryKind { weight, distance, component };

// Exact query accounting. Every evaluated (pair) charges exactly one unit
// to its kind's counter, to attempt_total, and to cumulative_total.
struct QueryLedger {
  std::uint64_t q_w = 0;
  std::uint64_t q_d = 0;
  std::uint64_t q_c = 0;
  std::uint64_t attempt_total = 0;
  std::uint64_t cumulative_total = 0;
  std::uint32_t attempt_index = 0;  // attempts begun; 0 before the first

  std::uint64_t total() const { return cumulative_total; }

  void charge(QueryKind kind) {
    switch (kind) {
      case QueryKind::weight: ++q_w; break;
      case QueryKind::distance: ++q_d; break;
      case QueryKind::component: ++q_c; break;
    }
    ++attempt_total;
    ++cumulative_total;
  }

  // Starts a fresh attempt window; cumulative counters are never reset.
  void reset_attempt() {
    attempt_total = 0;
    ++attempt_index;
  }
};

// Row-major |rows| x |cols| answer table for a batch query.
struct BatchTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct OracleOptions {
  bool shadow_check = false;     // re-derive every answer via the public engines
  std::ostream* trace = nullptr; // one line per evaluated query
};

// Instrumented oracle over a hidden graph. Algorithms may touch the hidden
// graph only through this interface. The vertex count, the maximum weight,
// and the maximum degree are announced; everything else must be queried.
//
// Sessions are single-caller: no internal locking.
class OracleSession {
public:
  explicit OracleSession(const WeightedGraph& hidden, OracleOptions opts = {});
  ~OracleSession();

  OracleSession(const OracleSession&) = delete;
  OracleSession& operator=(const OracleSession&) = delete;

  std::size_t vertex_count() const;
  double announced_wmax() const;
  std::size_t announced_max_degree() const;

  // Weight of (u, v) in the layer at thr; 0.0 when absent there. u != v.
  double q_w(Vertex u, Vertex v, double thr);

  // Weighted shortest-path distance in the layer; +inf when disconnected
  // there; q_d(u, u, thr) = 0 and still charges one query.
  double q_d(Vertex u, Vertex v, double thr);

  // 1 when some v in set shares u's component in the layer, else 0.
  // u must not be in set; an empty set answers 0. Charges one query
  // regardless of |set|.
  int q_c(Vertex u, const std::vector<Vertex>& set, double thr);

  // Evaluates the full Cartesian product a x b, row-major, charging one
  // query per evaluated pair. q_w batches skip identical pairs (charged
  // nothing, table entry 0). q_d batches evaluate identical pairs as 0.
  BatchTable batch_query(QueryKind kind, const std::vector<Vertex>& a,
                         const std::vector<Vertex>& b, double thr);

  const QueryLedger& ledger() const { return ledger_; }
  void reset_attempt() { ledger_.reset_attempt(); }

  // Per-attempt budget; std::nullopt disables enforcement.
  void set_budget(std::optional<std::uint64_t> q) { budget_ = q; }
  std::optional<std::uint64_t> budget() const { return budget_; }

  std::uint64_t shadow_checks() const { return shadow_checks_; }
  std::uint64_t shadow_mismatches() const { return shadow_mismatches_; }

private:
  struct Impl;

  void precharge(std::uint64_t pending = 1) const;
  double eval_q_w(Vertex u, Vertex v, double thr);
  void check_vertex(Vertex v) const;
  static void check_threshold(double thr);

  const WeightedGraph* g_;
  QueryLedger ledger_;
  std::optional<std::uint64_t> budget_;
  OracleOptions opts_;
  std::uint64_t shadow_checks_ = 0;
  std::uint64_t shadow_mismatches_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wgr
