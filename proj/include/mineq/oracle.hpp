#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "mineq/bipartite.hpp"
#include "mineq/errors.hpp"
#include "mineq/model.hpp"
#include "mineq/verify.hpp"

namespace mineq {

struct GridEquilibrium {
  Allocation allocation;
  std::vector<Scalar> prices;
};

struct OracleOptions {
  std::uint64_t budget = 50'000'000;  // grid points x assignments
  std::vector<Scalar> extra_points;   // added to every item's grid
};

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

inline mpz_class gcd_all(const std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

}  // namespace detail

/// Partial assignments of n buyers to m items: sum_k C(n,k) * m!/(m-k)!.
inline std::uint64_t assignment_count(std::size_t n, std::size_t m) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= std::min(n, m); ++k) {
    std::uint64_t c = 1;
    for (std::size_t t = 0; t < k; ++t) c = detail::sat_mul(c, n - t) / (t + 1);
    std::uint64_t perm = 1;
    for (std::size_t t = 0; t < k; ++t) perm = detail::sat_mul(perm, m - t);
    total = detail::sat_add(total, detail::sat_mul(c, perm));
  }
  return total;
}

/// 1/4 of the gcd of every finite value, budget and reserve; every
/// pairwise difference is then a multiple of it too.
inline Scalar default_resolution(const Instance& inst) {
  std::vector<Scalar> xs(inst.reserves());
  for (const auto& q : inst.params()) {
    xs.push_back(q.value);
    xs.push_back(q.budget);
  }
  mpz_class den = 1;
  bool any = false;
  for (const auto& x : xs) {
    if (!x.is_finite() || x.is_zero()) continue;
    any = true;
    den = lcm(den, x.denominator());
  }
  if (!any) return Scalar(1, 4);
  // gcd of rationals a_k/d_k is gcd(a_k * L/d_k) / L with L the lcm.
  std::vector<mpz_class> scaled;
  for (const auto& x : xs) {
    if (!x.is_finite() || x.is_zero()) continue;
    scaled.push_back(x.numerator() * (den / x.denominator()));
  }
  const mpz_class g = detail::gcd_all(scaled);
  return Scalar(mpq_class(g, den * 4));
}

/// 1 + the largest finite value, budget or reserve.
inline Scalar default_bound(const Instance& inst) {
  Scalar best(0);
  for (const auto& q : inst.params()) {
    if (q.value.is_finite()) best = max(best, q.value);
    if (q.budget.is_finite()) best = max(best, q.budget);
  }
  for (const auto& r : inst.reserves()) best = max(best, r);
  return best + Scalar(1);
}

/// Points the roi oracle needs beyond the regular grid: budgets and reserves.
inline std::vector<Scalar> roi_extra_points(const Instance& inst) {
  std::vector<Scalar> pts(inst.reserves());
  for (const auto& q : inst.params())
    if (q.budget.is_finite()) pts.push_back(q.budget);
  return pts;
}

/// Per-item price grid: reserve, then {0, d, 2d, ...} <= bound and extra
/// points, keeping only prices at or above the reserve.
inline std::vector<std::vector<Scalar>> price_grid(const Instance& inst, const Scalar& resolution, const Scalar& bound,
                                                   const std::vector<Scalar>& extra = {}) {
  if (!(resolution.sign() > 0) || !resolution.is_finite()) throw ContractError("resolution must be positive");
  if (!bound.is_finite() || bound.sign() < 0) throw ContractError("bound must be finite and non-negative");
  std::vector<Scalar> base;
  for (Scalar x(0); x <= bound; x += resolution) base.push_back(x);
  for (const auto& e : extra)
    if (e.is_finite() && e.sign() >= 0 && e <= bound) base.push_back(e);
  std::vector<std::vector<Scalar>> grid(inst.m_items());
  for (std::size_t j = 0; j < inst.m_items(); ++j) {
    auto& g = grid[j];
    g.push_back(inst.reserve(j));
    for (const auto& x : base)
      if (x >= inst.reserve(j)) g.push_back(x);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  return grid;
}

/// Every (assignment, grid price vector) pair that is a competitive
/// equilibrium. Candidates are pruned with precomputed utilities and each
/// survivor is confirmed with check_competitive_equilibrium.
inline std::vector<GridEquilibrium> grid_equilibria(const Instance& inst, const Scalar& resolution, const Scalar& bound,
                                                    const OracleOptions& opt = {}) {
  const std::size_t n = inst.n_buyers();
  const std::size_t m = inst.m_items();
  const auto grid = price_grid(inst, resolution, bound, opt.extra_points);
  std::uint64_t points = 1;
  for (const auto& g : grid) points = detail::sat_mul(points, g.size());
  const std::uint64_t required = detail::sat_mul(points, assignment_count(n, m));
  if (required > opt.budget) throw BudgetExceeded(required, opt.budget);

  // util[j][k][i]: utility of buyer i for item j at grid[j][k].
  std::vector<std::vector<std::vector<Scalar>>> util(m);
  for (std::size_t j = 0; j < m; ++j) {
    util[j].resize(grid[j].size());
    for (std::size_t k = 0; k < grid[j].size(); ++k)
      for (std::size_t i = 0; i < n; ++i) util[j][k].push_back(inst.utility(i, j, grid[j][k]));
  }

  std::vector<GridEquilibrium> found;
  std::vector<std::size_t> idx(m, 0);
  std::vector<Scalar> best(n);
  Allocation x(n);
  std::vector<char> used(m);
  std::vector<Scalar> prices(m);

  auto at = [&](std::size_t i, std::size_t j) -> const Scalar& { return util[j][idx[j]][i]; };

  // Assign buyers in order; each either takes an unused item that is one
  // of its best choices with non-negative utility, or nothing when every
  // utility is non-positive.
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      for (std::size_t j = 0; j < m; ++j)
        if (!used[j] && prices[j] != inst.reserve(j)) return;
      if (check_competitive_equilibrium(inst, x, prices).ok()) found.push_back({x, prices});
      return;
    }
    if (best[i].sign() <= 0) {
      x[i].reset();
      self(self, i + 1);
    }
    if (best[i].sign() < 0) return;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j] || at(i, j) != best[i]) continue;
      used[j] = 1;
      x[i] = j;
      self(self, i + 1);
      used[j] = 0;
    }
    x[i].reset();
  };

  if (m == 0) {
    if (check_competitive_equilibrium(inst, x, prices).ok()) found.push_back({x, prices});
    return found;
  }
  for (;;) {
    for (std::size_t j = 0; j < m; ++j) prices[j] = grid[j][idx[j]];
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = Scalar(-1);
      for (std::size_t j = 0; j < m; ++j)
        if (at(i, j) > best[i]) best[i] = at(i, j);
    }
    dfs(dfs, 0);
    std::size_t j = 0;
    while (j < m && ++idx[j] == grid[j].size()) idx[j++] = 0;
    if (j == m) break;
  }
  return found;
}

/// Componentwise minimum price over all grid equilibria.
inline std::optional<std::vector<Scalar>> grid_min_prices(const Instance& inst, const Scalar& resolution,
                                                          const Scalar& bound, const OracleOptions& opt = {}) {
  const auto eq = grid_equilibria(inst, resolution, bound, opt);
  if (eq.empty()) return std::nullopt;
  std::vector<Scalar> lo = eq.front().prices;
  for (const auto& e : eq)
    for (std::size_t j = 0; j < lo.size(); ++j) lo[j] = min(lo[j], e.prices[j]);
  return lo;
}

/// Minimal subset of buyers with maximum deficiency |A| - |N(A)|, by
/// enumerating all subsets.
inline std::vector<std::size_t> critical_set_bruteforce(const BipartiteGraph& g) {
  const std::size_t n = g.left_count();
  constexpr std::size_t kLimit = 20;
  if (n > kLimit) throw BudgetExceeded(std::uint64_t{1} << n, std::uint64_t{1} << kLimit);
  const std::size_t words = (g.right_count() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> nb(n, std::vector<std::uint64_t>(words));
  for (std::size_t u = 0; u < n; ++u)
    for (auto v : g.neighbors(u)) nb[u][v / 64] |= std::uint64_t{1} << (v % 64);

  long best_def = 0;
  std::size_t best_size = 0;
  std::uint32_t best_mask = 0;
  std::vector<std::uint64_t> acc(words);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t size = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (!(mask >> u & 1U)) continue;
      ++size;
      for (std::size_t w = 0; w < words; ++w) acc[w] |= nb[u][w];
    }
    std::size_t hood = 0;
    for (auto w : acc) hood += static_cast<std::size_t>(__builtin_popcountll(w));
    const long def = static_cast<long>(size) - static_cast<long>(hood);
    if (def > best_def || (def == best_def && def > 0 && size < best_size)) {
      best_def = def;
      best_size = size;
      best_mask = mask;
    }
  }
  std::vector<std::size_t> out;
  if (best_def <= 0) return out;
  for (std::size_t u = 0; u < n; ++u)
    if (best_mask >> u & 1U) out.push_back(u);
  return out;
}

}  // namespace mineq
