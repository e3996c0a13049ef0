#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mineq/errors.hpp"

namespace mineq {

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

struct Edge {
  std::size_t buyer;
  std::size_t item;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Left vertices are buyers, right vertices are items. Adjacency lists are
/// kept sorted so every traversal runs in ascending index order.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t left, std::size_t right) : right_count_(right), adj_(left) {}

  std::size_t left_count() const noexcept { return adj_.size(); }
  std::size_t right_count() const noexcept { return right_count_; }

  /// Adds (u, v); returns false when the edge already exists.
  bool add_edge(std::size_t u, std::size_t v) {
    check(u, v);
    auto& a = adj_[u];
    auto it = std::lower_bound(a.begin(), a.end(), v);
    if (it != a.end() && *it == v) return false;
    a.insert(it, v);
    ++edge_count_;
    return true;
  }

  bool remove_edge(std::size_t u, std::size_t v) {
    check(u, v);
    auto& a = adj_[u];
    auto it = std::lower_bound(a.begin(), a.end(), v);
    if (it == a.end() || *it != v) return false;
    a.erase(it);
    --edge_count_;
    return true;
  }

  bool has_edge(std::size_t u, std::size_t v) const {
    if (u >= adj_.size() || v >= right_count_) return false;
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  const std::vector<std::size_t>& neighbors(std::size_t u) const { return adj_.at(u); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (auto v : adj_[u]) out.push_back({u, v});
    return out;
  }

  /// Right-side adjacency, ascending.
  std::vector<std::vector<std::size_t>> right_adjacency() const {
    std::vector<std::vector<std::size_t>> r(right_count_);
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (auto v : adj_[u]) r[v].push_back(u);
    return r;
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  void check(std::size_t u, std::size_t v) const {
    if (u >= adj_.size() || v >= right_count_) throw IndexError("edge endpoint out of range");
  }

  std::size_t right_count_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Matching stored as mates on both sides.
struct Matching {
  std::vector<std::size_t> left_mate;   // item of each buyer or kUnmatched
  std::vector<std::size_t> right_mate;  // buyer of each item or kUnmatched

  Matching() = default;
  Matching(std::size_t left, std::size_t right) : left_mate(left, kUnmatched), right_mate(right, kUnmatched) {}

  std::size_t size() const {
    return static_cast<std::size_t>(
        std::count_if(left_mate.begin(), left_mate.end(), [](std::size_t v) { return v != kUnmatched; }));
  }
  std::vector<Edge> pairs() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < left_mate.size(); ++u)
      if (left_mate[u] != kUnmatched) out.push_back({u, left_mate[u]});
    return out;
  }
};

namespace detail {

// Kuhn augmenting search from `u`. Recursion depth is bounded by the
// number of items.
inline bool augment(const BipartiteGraph& g, std::size_t u, Matching& m, std::vector<char>& seen,
                    const std::vector<char>* allowed_left) {
  // A free neighbour first, so earlier buyers keep their first choice.
  for (auto v : g.neighbors(u)) {
    if (seen[v] || m.right_mate[v] != kUnmatched) continue;
    seen[v] = 1;
    m.left_mate[u] = v;
    m.right_mate[v] = u;
    return true;
  }
  for (auto v : g.neighbors(u)) {
    if (seen[v]) continue;
    seen[v] = 1;
    const std::size_t w = m.right_mate[v];
    if (w == kUnmatched || ((allowed_left == nullptr || (*allowed_left)[w]) && augment(g, w, m, seen, allowed_left))) {
      m.left_mate[u] = v;
      m.right_mate[v] = u;
      return true;
    }
  }
  return false;
}

inline void grow(const BipartiteGraph& g, Matching& m, const std::vector<char>* roots, const std::vector<char>* allowed) {
  std::vector<char> seen(g.right_count());
  for (std::size_t u = 0; u < g.left_count(); ++u) {
    if (m.left_mate[u] != kUnmatched) continue;
    if (roots != nullptr && !(*roots)[u]) continue;
    std::fill(seen.begin(), seen.end(), 0);
    augment(g, u, m, seen, allowed);
  }
}

}  // namespace detail

/// Maximum-cardinality matching by augmenting paths, buyers tried in
/// ascending index order.
inline Matching max_matching(const BipartiteGraph& g) {
  Matching m(g.left_count(), g.right_count());
  detail::grow(g, m, nullptr, nullptr);
  return m;
}

/// Buyers whose neighbourhood is non-empty.
inline std::vector<char> active_buyers(const BipartiteGraph& g) {
  std::vector<char> a(g.left_count());
  for (std::size_t u = 0; u < g.left_count(); ++u) a[u] = g.neighbors(u).empty() ? 0 : 1;
  return a;
}

namespace detail {

inline std::vector<std::size_t> critical_set_impl(const BipartiteGraph& g, bool skip_isolated) {
  const Matching m = max_matching(g);
  std::vector<char> in_set(g.left_count());
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < g.left_count(); ++u) {
    if (m.left_mate[u] != kUnmatched) continue;
    if (skip_isolated && g.neighbors(u).empty()) continue;
    in_set[u] = 1;
    stack.push_back(u);
  }
  // Alternating search: non-matching edge to an item, then its matching edge back.
  std::vector<char> item_seen(g.right_count());
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (auto v : g.neighbors(u)) {
      if (item_seen[v]) continue;
      item_seen[v] = 1;
      const std::size_t w = m.right_mate[v];
      if (w != kUnmatched && !in_set[w]) {
        in_set[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < g.left_count(); ++u)
    if (in_set[u]) out.push_back(u);
  return out;
}

}  // namespace detail

/// The unique minimal maximally-deficient buyer set: unmatched buyers of a
/// maximum matching plus every buyer reachable from them by alternating
/// paths. Empty iff some matching saturates all buyers.
inline std::vector<std::size_t> critical_set(const BipartiteGraph& g) { return detail::critical_set_impl(g, false); }

/// Critical set of the graph restricted to non-isolated buyers.
inline std::vector<std::size_t> critical_set_active(const BipartiteGraph& g) {
  return detail::critical_set_impl(g, true);
}

/// Neighbourhood N(A), ascending.
inline std::vector<std::size_t> neighborhood(const BipartiteGraph& g, const std::vector<std::size_t>& buyers) {
  std::vector<char> hit(g.right_count());
  for (auto u : buyers)
    for (auto v : g.neighbors(u)) hit[v] = 1;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < hit.size(); ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

/// A connected piece of the subgraph induced by a buyer set and its
/// neighbourhood.
struct Component {
  std::vector<std::size_t> buyers;  // ascending
  std::vector<std::size_t> items;   // ascending
  std::vector<Edge> edges;          // sorted by (buyer, item)

  bool contains_item(std::size_t j) const { return std::binary_search(items.begin(), items.end(), j); }
  bool contains_buyer(std::size_t i) const { return std::binary_search(buyers.begin(), buyers.end(), i); }
};

/// Connected components of the subgraph induced by `buyers` and N(buyers),
/// ordered by their lowest buyer index.
inline std::vector<Component> components(const BipartiteGraph& g, const std::vector<std::size_t>& buyers) {
  std::vector<char> member(g.left_count());
  for (auto u : buyers) member[u] = 1;
  const auto radj = g.right_adjacency();
  std::vector<char> seen_left(g.left_count()), seen_right(g.right_count());
  std::vector<Component> out;
  for (auto start : buyers) {
    if (seen_left[start]) continue;
    Component c;
    std::vector<std::size_t> stack{start};
    seen_left[start] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      c.buyers.push_back(u);
      for (auto v : g.neighbors(u)) {
        c.edges.push_back({u, v});
        if (seen_right[v]) continue;
        seen_right[v] = 1;
        c.items.push_back(v);
        for (auto w : radj[v]) {
          if (member[w] && !seen_left[w]) {
            seen_left[w] = 1;
            stack.push_back(w);
          }
        }
      }
    }
    std::sort(c.buyers.begin(), c.buyers.end());
    std::sort(c.items.begin(), c.items.end());
    std::sort(c.edges.begin(), c.edges.end());
    out.push_back(std::move(c));
  }
  return out;
}

/// Matching of `target_size` edges that covers every buyer flagged in
/// `must_cover`, if one exists. First saturates the must-cover buyers using
/// only paths through must-cover buyers, then grows the matching from the
/// remaining buyers; augmenting never unmatches a matched buyer.
inline std::optional<Matching> lex_matching(const BipartiteGraph& h, const std::vector<char>& must_cover,
                                            std::size_t target_size) {
  if (must_cover.size() != h.left_count()) throw ContractError("must_cover length mismatch");
  if (target_size > h.right_count() || target_size > h.left_count()) return std::nullopt;
  Matching m(h.left_count(), h.right_count());
  detail::grow(h, m, &must_cover, &must_cover);
  for (std::size_t u = 0; u < h.left_count(); ++u)
    if (must_cover[u] && m.left_mate[u] == kUnmatched) return std::nullopt;
  detail::grow(h, m, nullptr, nullptr);
  std::size_t size = m.size();
  for (std::size_t u = h.left_count(); u-- > 0 && size > target_size;) {
    if (must_cover[u] || m.left_mate[u] == kUnmatched) continue;
    m.right_mate[m.left_mate[u]] = kUnmatched;
    m.left_mate[u] = kUnmatched;
    --size;
  }
  if (size != target_size) return std::nullopt;
  return m;
}

}  // namespace mineq
