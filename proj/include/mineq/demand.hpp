#pragma once

#include <cstddef>
#include <vector>

#include "mineq/bipartite.hpp"
#include "mineq/model.hpp"

namespace mineq {

/// Mutable solver state: prices, permanently deleted edges, priced-out
/// buyers and marked items. Owned by a single solve.
struct DemandState {
  std::size_t m = 0;
  std::vector<Scalar> prices;
  std::vector<char> deleted;     // row-major total_buyers x m
  std::vector<char> priced_out;  // per buyer
  std::vector<char> marks;       // per item

  static DemandState initial(const Instance& inst) {
    DemandState s;
    s.m = inst.m_items();
    s.prices = inst.reserves();
    s.deleted.assign(inst.total_buyers() * s.m, 0);
    s.priced_out.assign(inst.total_buyers(), 0);
    s.marks.assign(s.m, 0);
    return s;
  }

  bool is_deleted(std::size_t i, std::size_t j) const { return deleted[i * m + j] != 0; }
  void delete_edge(std::size_t i, std::size_t j) { deleted[i * m + j] = 1; }
  bool is_marked(std::size_t j) const { return marks[j] != 0; }
};

/// Utility the buyer can actually realise from item j in this state: -1 when
/// the pair is deleted, the buyer is priced out, the price exceeds the
/// budget, or the item is marked with the budget exactly tight (a marked
/// item ends strictly above its current price).
inline Scalar effective_utility(const Instance& inst, const DemandState& s, std::size_t i, std::size_t j) {
  if (s.is_deleted(i, j) || s.priced_out[i]) return Scalar(-1);
  const Scalar& b = inst.budget(i, j);
  const Scalar& p = s.prices[j];
  if (p > b || (s.is_marked(j) && p == b)) return Scalar(-1);
  return inst.utility(i, j, p);
}

/// G+ in full index space. Isolated vertices simply have no edges; u_plus
/// and v_plus flag the non-isolated ones.
struct DemandGraph {
  BipartiteGraph graph;
  std::vector<char> u_plus;
  std::vector<char> v_plus;
};

/// Edge (i, j) iff i's realisable utility from j is strictly positive and
/// maximal over all items.
inline DemandGraph build_demand_graph(const Instance& inst, const DemandState& s) {
  const std::size_t n = inst.total_buyers();
  const std::size_t m = inst.m_items();
  DemandGraph d{BipartiteGraph(n, m), std::vector<char>(n), std::vector<char>(m)};
  std::vector<Scalar> u(m);
  for (std::size_t i = 0; i < inst.n_buyers(); ++i) {
    if (s.priced_out[i]) continue;
    Scalar best(0);
    for (std::size_t j = 0; j < m; ++j) {
      u[j] = effective_utility(inst, s, i, j);
      if (u[j] > best) best = u[j];
    }
    if (best.sign() <= 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (u[j] == best) {
        d.graph.add_edge(i, j);
        d.u_plus[i] = 1;
        d.v_plus[j] = 1;
      }
    }
  }
  // Dummy buyers never reach positive utility once prices sit at or above reserves.
  return d;
}

struct FinalGraphs {
  BipartiteGraph reduced;  // G': G+ without edges to marked items
  BipartiteGraph exact;    // G*: marked edges dropped for buyers with an unmarked neighbour
  BipartiteGraph market;   // H: G* plus zero-utility affordable edges for buyers outside U+
                           // (priced-out buyers included, their deletions notwithstanding)
};

inline BipartiteGraph reduced_graph(const DemandGraph& gplus, const DemandState& s) {
  const auto& g = gplus.graph;
  BipartiteGraph r(g.left_count(), g.right_count());
  for (std::size_t i = 0; i < g.left_count(); ++i)
    for (auto j : g.neighbors(i))
      if (!s.is_marked(j)) r.add_edge(i, j);
  return r;
}

inline FinalGraphs build_final_graphs(const Instance& inst, const DemandState& s, const DemandGraph& gplus) {
  const auto& g = gplus.graph;
  FinalGraphs f{reduced_graph(gplus, s), BipartiteGraph(g.left_count(), g.right_count()),
                BipartiteGraph(g.left_count(), g.right_count())};
  for (std::size_t i = 0; i < g.left_count(); ++i) {
    const auto& nb = g.neighbors(i);
    bool any_unmarked = false;
    for (auto j : nb) any_unmarked = any_unmarked || !s.is_marked(j);
    for (auto j : nb) {
      if (any_unmarked && s.is_marked(j)) continue;
      f.exact.add_edge(i, j);
      f.market.add_edge(i, j);
    }
  }
  for (std::size_t i = 0; i < g.left_count(); ++i) {
    if (gplus.u_plus[i]) continue;
    for (std::size_t j = 0; j < g.right_count(); ++j) {
      if (s.is_marked(j)) continue;
      const Scalar& p = s.prices[j];
      if (inst.budget(i, j) >= p && inst.utility(i, j, p).is_zero()) f.market.add_edge(i, j);
    }
  }
  return f;
}

/// Every buyer's neighbourhood is either entirely marked or entirely unmarked.
inline bool neighborhoods_uniformly_marked(const BipartiteGraph& g, const DemandState& s) {
  for (std::size_t i = 0; i < g.left_count(); ++i) {
    const auto& nb = g.neighbors(i);
    if (nb.empty()) continue;
    const bool first = s.is_marked(nb.front());
    for (auto j : nb)
      if (s.is_marked(j) != first) return false;
  }
  return true;
}

}  // namespace mineq
