#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mineq/bipartite.hpp"
#include "mineq/demand.hpp"
#include "mineq/model.hpp"

namespace mineq {

enum class EventKind { None, Alpha, Beta, Gamma };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::None: return "none";
    case EventKind::Alpha: return "alpha";
    case EventKind::Beta: return "beta";
    case EventKind::Gamma: return "gamma";
  }
  return "?";
}

/// Which bound became tight after a raise. `kind` follows the precedence
/// alpha > beta > gamma; all three hit lists are filled regardless.
struct RaiseEvent {
  EventKind kind = EventKind::None;
  std::vector<Edge> alpha;  // (i in S, j outside) now tied with i's neighbours
  std::vector<Edge> beta;   // component edges with zero utility
  std::vector<Edge> gamma;  // component edges priced exactly at budget
};

struct RaiseResult {
  std::vector<Scalar> prices;  // full price vector; only component items change
  RaiseEvent event;
  bool unbounded = false;      // every candidate was infinite
};

/// Realisable utility of (i, j) if item j were priced at p, under the
/// state's deletions and marks.
inline Scalar effective_utility_at(const Instance& inst, const DemandState& s, std::size_t i, std::size_t j,
                                   const Scalar& p) {
  if (s.is_deleted(i, j) || s.priced_out[i]) return Scalar(-1);
  const Scalar& b = inst.budget(i, j);
  if (p > b || (s.is_marked(j) && p == b)) return Scalar(-1);
  return inst.utility(i, j, p);
}

/// Price of item `to` that gives buyer i the same utility as item `from` at
/// price x; +inf when unreachable.
inline Scalar transfer(const Instance& inst, std::size_t i, std::size_t from, std::size_t to, const Scalar& x) {
  if (!x.is_finite()) return Scalar::pos_inf();
  const Scalar u = inst.utility(i, from, x);
  if (u.sign() < 0) return Scalar::pos_inf();
  return inst.inverse(i, to, u);
}

/// Best realisable utility of buyer i over items outside the component,
/// never below zero.
inline Scalar outside_max(const Instance& inst, const DemandState& s, const Component& c, std::size_t i) {
  Scalar best(0);
  for (std::size_t j = 0; j < inst.m_items(); ++j) {
    if (c.contains_item(j)) continue;
    Scalar u = effective_utility(inst, s, i, j);
    if (u > best) best = std::move(u);
  }
  return best;
}

/// Per-edge caps min{v, b, u^-1(u_max)}, aligned with c.edges, optionally
/// tightened by per-item caps.
inline std::vector<Scalar> edge_caps(const Instance& inst, const DemandState& s, const Component& c,
                                     const std::vector<Scalar>* item_caps = nullptr) {
  std::vector<Scalar> umax(c.buyers.size());
  for (std::size_t k = 0; k < c.buyers.size(); ++k) umax[k] = outside_max(inst, s, c, c.buyers[k]);
  std::vector<Scalar> caps;
  caps.reserve(c.edges.size());
  for (const auto& e : c.edges) {
    const auto k = static_cast<std::size_t>(std::lower_bound(c.buyers.begin(), c.buyers.end(), e.buyer) -
                                            c.buyers.begin());
    const Thresholds t = inst.thresholds(e.buyer, e.item);
    Scalar cap = min(min(t.value, t.budget), inst.inverse(e.buyer, e.item, umax[k]));
    if (item_caps != nullptr) cap = min(cap, (*item_caps)[e.item]);
    caps.push_back(std::move(cap));
  }
  return caps;
}

namespace detail {

inline void check_component(const Instance& inst, const DemandState& s, const Component& c) {
  if (c.buyers.empty() || c.items.empty()) throw ContractError("empty component");
  for (const auto& e : c.edges) {
    if (e.buyer >= inst.total_buyers() || e.item >= inst.m_items()) throw IndexError("component edge out of range");
    if (!c.contains_buyer(e.buyer) || !c.contains_item(e.item)) throw ContractError("edge leaves the component");
  }
  if (s.prices.size() != inst.m_items()) throw ContractError("price vector length mismatch");
}

}  // namespace detail

/// One candidate vector q^{i0 j0}: start item j0 at the edge's cap and
/// propagate equal-utility prices along component edges. Returns nullopt
/// for the infinite sentinel (some propagated price exceeds a cap).
///
/// `order`, when given, is a permutation of c.edges; the spanning tree used
/// for propagation depends on it, the values must not.
inline std::optional<std::vector<Scalar>> candidate_vector(const Instance& inst, const DemandState& s,
                                                           const Component& c, std::size_t edge_index,
                                                           const std::vector<Scalar>& caps,
                                                           const std::vector<Edge>* order = nullptr) {
  const std::vector<Edge>& edges = order ? *order : c.edges;
  const std::size_t m = inst.m_items();
  std::vector<Scalar> q = s.prices;
  std::vector<char> defined(m);
  std::vector<std::size_t> ref(inst.total_buyers(), kUnmatched);

  auto cap_of = [&](std::size_t i, std::size_t j) -> const Scalar& {
    auto it = std::lower_bound(c.edges.begin(), c.edges.end(), Edge{i, j});
    return caps[static_cast<std::size_t>(it - c.edges.begin())];
  };
  // Cap check over every component buyer adjacent to j.
  auto violates = [&](std::size_t j) {
    for (const auto& e : c.edges)
      if (e.item == j && q[j] > cap_of(e.buyer, j)) return true;
    return false;
  };

  const Edge start = c.edges.at(edge_index);
  q[start.item] = caps[edge_index];
  defined[start.item] = 1;
  if (!q[start.item].is_finite() || violates(start.item)) return std::nullopt;

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges) {
      if (defined[e.item] && ref[e.buyer] == kUnmatched) {
        ref[e.buyer] = e.item;
        changed = true;
      } else if (!defined[e.item] && ref[e.buyer] != kUnmatched) {
        q[e.item] = transfer(inst, e.buyer, ref[e.buyer], e.item, q[ref[e.buyer]]);
        defined[e.item] = 1;
        changed = true;
        if (!q[e.item].is_finite() || violates(e.item)) return std::nullopt;
      }
    }
  }
  return q;
}

/// Componentwise minimum over all finite candidate vectors, computed the
/// long way (one propagation per edge). Reference for the fast path.
inline std::optional<std::vector<Scalar>> minimum_candidate(const Instance& inst, const DemandState& s,
                                                            const Component& c, const std::vector<Scalar>& caps) {
  std::optional<std::vector<Scalar>> best;
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    auto cand = candidate_vector(inst, s, c, k, caps);
    if (!cand) continue;
    if (!best) {
      best = std::move(cand);
      continue;
    }
    for (std::size_t j : c.items)
      if ((*cand)[j] < (*best)[j]) (*best)[j] = (*cand)[j];
  }
  return best;
}

namespace detail {

// All candidates lie on one equal-utility curve through p, so the minimum
// is the candidate whose image at a reference item is smallest. A BFS tree
// rooted at that item gives each item's image in O(depth) transfers.
inline std::optional<std::vector<Scalar>> fast_minimum(const Instance& inst, const DemandState& s, const Component& c,
                                                       const std::vector<Scalar>& caps) {
  const std::size_t m = inst.m_items();
  std::vector<Scalar> item_cap(m, Scalar::pos_inf());
  for (std::size_t k = 0; k < c.edges.size(); ++k)
    if (caps[k] < item_cap[c.edges[k].item]) item_cap[c.edges[k].item] = caps[k];

  std::vector<std::vector<std::size_t>> by_buyer(inst.total_buyers()), by_item(m);
  for (const auto& e : c.edges) {
    by_buyer[e.buyer].push_back(e.item);
    by_item[e.item].push_back(e.buyer);
  }
  const std::size_t root = c.items.front();
  std::vector<std::size_t> parent_item(m, kUnmatched), via(m, kUnmatched), bfs{root};
  std::vector<char> seen_item(m), seen_buyer(inst.total_buyers());
  seen_item[root] = 1;
  for (std::size_t h = 0; h < bfs.size(); ++h) {
    const std::size_t j = bfs[h];
    for (auto i : by_item[j]) {
      if (seen_buyer[i]) continue;
      seen_buyer[i] = 1;
      for (auto k : by_buyer[i]) {
        if (seen_item[k]) continue;
        seen_item[k] = 1;
        parent_item[k] = j;
        via[k] = i;
        bfs.push_back(k);
      }
    }
  }
  if (bfs.size() != c.items.size()) throw ContractError("component is not connected");

  Scalar best = Scalar::pos_inf();
  for (auto j : c.items) {
    Scalar x = item_cap[j];
    for (std::size_t k = j; k != root && x.is_finite(); k = parent_item[k]) x = transfer(inst, via[k], k, parent_item[k], x);
    if (x < best) best = std::move(x);
  }
  if (!best.is_finite()) return std::nullopt;

  std::vector<Scalar> q = s.prices;
  q[root] = best;
  for (std::size_t h = 1; h < bfs.size(); ++h) {
    const std::size_t k = bfs[h];
    q[k] = transfer(inst, via[k], parent_item[k], k, q[parent_item[k]]);
    if (!q[k].is_finite() || q[k] > item_cap[k]) throw ContractError("inconsistent utilities in price propagation");
  }
  return q;
}

inline RaiseEvent classify(const Instance& inst, const DemandState& s, const Component& c,
                           const std::vector<Scalar>& q) {
  RaiseEvent ev;
  for (auto i : c.buyers) {
    Scalar level = Scalar::neg_inf();
    for (const auto& e : c.edges)
      if (e.buyer == i) level = max(level, inst.utility(i, e.item, q[e.item]));
    if (level.sign() <= 0) continue;
    for (std::size_t j = 0; j < inst.m_items(); ++j) {
      if (c.contains_item(j)) continue;
      if (effective_utility_at(inst, s, i, j, q[j]) == level) ev.alpha.push_back({i, j});
    }
  }
  for (const auto& e : c.edges) {
    if (inst.utility(e.buyer, e.item, q[e.item]).is_zero()) ev.beta.push_back(e);
    if (inst.budget(e.buyer, e.item) == q[e.item]) ev.gamma.push_back(e);
  }
  if (!ev.alpha.empty())
    ev.kind = EventKind::Alpha;
  else if (!ev.beta.empty())
    ev.kind = EventKind::Beta;
  else if (!ev.gamma.empty())
    ev.kind = EventKind::Gamma;
  return ev;
}

}  // namespace detail

/// Raise the prices of the component's items to the first price vector at
/// which an alpha, beta or gamma event occurs. The component must be a
/// connected piece of the critical set and its neighbourhood in G+.
inline RaiseResult increase_price(const Instance& inst, const DemandState& s, const Component& c) {
  detail::check_component(inst, s, c);
  if (c.buyers.size() <= c.items.size()) throw ContractError("component is not over-demanded");
  const auto caps = edge_caps(inst, s, c);
  auto q = detail::fast_minimum(inst, s, c, caps);
  RaiseResult r;
  if (!q) {
    r.prices = s.prices;
    r.unbounded = true;
    return r;
  }
  r.prices = std::move(*q);
  r.event = detail::classify(inst, s, c, r.prices);
  return r;
}

/// Same propagation with every item additionally capped; the result stops
/// at the first cap or event, whichever binds first.
inline std::vector<Scalar> increase_price_bounded(const Instance& inst, const DemandState& s, const Component& c,
                                                  const std::vector<Scalar>& item_caps) {
  detail::check_component(inst, s, c);
  if (item_caps.size() != inst.m_items()) throw ContractError("cap vector length mismatch");
  for (auto j : c.items)
    if (!(s.prices[j] < item_caps[j])) throw ContractError("cap not above current price");
  const auto caps = edge_caps(inst, s, c, &item_caps);
  auto q = detail::fast_minimum(inst, s, c, caps);
  if (!q) throw ContractError("bounded raise has no finite candidate");
  return *q;
}

/// Concrete prices for a plus-flagged vector: every marked item moves into
/// (p_j, p_j + epsilon] while all ties among marked items and their
/// neighbours in `h` are kept and no strict preference flips.
inline std::vector<Scalar> lift_plus(const Instance& inst, const std::vector<Scalar>& prices,
                                     const std::vector<char>& marks, const Scalar& epsilon,
                                     const BipartiteGraph& h) {
  if (!(epsilon.sign() > 0) || !epsilon.is_finite()) throw ContractError("epsilon must be positive and finite");
  if (prices.size() != inst.m_items() || marks.size() != inst.m_items()) throw ContractError("length mismatch");
  std::vector<Scalar> out = prices;
  bool any = false;
  for (char mk : marks) any = any || mk;
  if (!any) return out;

  DemandState s;
  s.m = inst.m_items();
  s.prices = prices;
  s.deleted.assign(inst.total_buyers() * s.m, 0);
  s.priced_out.assign(inst.total_buyers(), 0);
  s.marks = marks;

  BipartiteGraph k(h.left_count(), h.right_count());
  std::vector<std::size_t> buyers;
  for (std::size_t i = 0; i < h.left_count(); ++i) {
    bool touched = false;
    for (auto j : h.neighbors(i)) {
      if (!marks[j]) continue;
      k.add_edge(i, j);
      touched = true;
    }
    if (touched) buyers.push_back(i);
  }
  std::vector<char> covered(inst.m_items());
  for (const auto& c : components(k, buyers)) {
    const auto base = edge_caps(inst, s, c);
    std::vector<Scalar> item_caps(inst.m_items(), Scalar::pos_inf());
    for (auto j : c.items) item_caps[j] = epsilon;
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
      const std::size_t j = c.edges[e].item;
      const Scalar slack = base[e] - prices[j];
      if (slack.sign() <= 0) throw ContractError("marked item has no room above its price");
      if (slack.is_finite()) item_caps[j] = min(item_caps[j], slack / Scalar(2));
    }
    for (auto j : c.items) item_caps[j] = prices[j] + item_caps[j];
    const auto q = increase_price_bounded(inst, s, c, item_caps);
    for (auto j : c.items) {
      out[j] = q[j];
      covered[j] = 1;
    }
  }
  // Marked items nobody demands only need to move up.
  for (std::size_t j = 0; j < inst.m_items(); ++j)
    if (marks[j] && !covered[j]) out[j] = prices[j] + epsilon;
  return out;
}

}  // namespace mineq
