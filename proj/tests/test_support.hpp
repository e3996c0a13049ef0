#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mineq/io.hpp"
#include "mineq/mineq.hpp"

namespace mineq::testing {

inline Scalar Q(long long n, long long d = 1) { return Scalar(n, d); }
inline Scalar inf() { return Scalar::pos_inf(); }

inline std::string fixture(const std::string& name) { return std::string(MINEQ_FIXTURE_DIR) + "/" + name + ".json"; }
inline InstanceDoc load_fixture(const std::string& name) { return load_instance(fixture(name)); }

/// Quasi-linear instance from value rows and one budget per buyer (or per pair).
inline Instance quasi(const std::vector<std::vector<Scalar>>& v, const std::vector<std::vector<Scalar>>& b,
                      std::vector<Scalar> reserves = {}) {
  const std::size_t n = v.size();
  const std::size_t m = n ? v[0].size() : 0;
  std::vector<PairParams> p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) p.push_back({v[i][j], b[i].size() == 1 ? b[i][0] : b[i][j]});
  return Instance(Family::QuasiLinear, n, m, std::move(p), std::move(reserves));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Random quasi-linear instance: integer values in [0, vmax], budgets in
/// [0, bmax] or infinite with probability p_inf, per-buyer budgets when
/// `uniform_budget`.
inline Instance random_quasi(Rng& r, std::size_t n, std::size_t m, long long vmax, long long bmax, double p_inf = 0.2,
                             bool uniform_budget = false) {
  std::vector<PairParams> p;
  for (std::size_t i = 0; i < n; ++i) {
    Scalar shared = r.coin(p_inf) ? inf() : Q(r.uniform(0, bmax));
    for (std::size_t j = 0; j < m; ++j) {
      Scalar b = uniform_budget ? shared : (r.coin(p_inf) ? inf() : Q(r.uniform(0, bmax)));
      p.push_back({Q(r.uniform(0, vmax)), b});
    }
  }
  return Instance(Family::QuasiLinear, n, m, std::move(p));
}

/// Random roi instance: ratios t in [0, tmax], budgets in [1, bmax] or
/// infinite, reserves in [1, rmax].
inline Instance random_roi(Rng& r, std::size_t n, std::size_t m, long long tmax, long long bmax, long long rmax) {
  std::vector<PairParams> p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) p.push_back({Q(r.uniform(0, tmax)), r.coin(0.3) ? inf() : Q(r.uniform(1, bmax))});
  std::vector<Scalar> res;
  for (std::size_t j = 0; j < m; ++j) res.push_back(Q(r.uniform(1, rmax)));
  return Instance(Family::Roi, n, m, std::move(p), std::move(res));
}

/// Random ranked instance: each buyer's items get disjoint utility bands
/// [M - b, M], stacked with random gaps.
inline Instance random_ranked(Rng& r, std::size_t n, std::size_t m, long long band) {
  std::vector<PairParams> p(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> order(m);
    for (std::size_t j = 0; j < m; ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), r.engine());
    long long top = 0;
    for (auto j : order) {
      const long long b = r.uniform(1, band);
      const long long gap = r.uniform(1, band);
      const long long M = top + gap + b;
      p[i * m + j] = {Q(M), Q(b)};
      top = M;
    }
  }
  return Instance(Family::Ranked, n, m, std::move(p));
}

/// Same parameters, new reserves.
inline Instance with_reserves(const Instance& inst, std::vector<Scalar> reserves) {
  return Instance(inst.family(), inst.n_buyers(), inst.m_items(), inst.params(), std::move(reserves));
}

/// Random instance of any family with small integer parameters and random
/// reserves (positive for roi).
inline Instance random_instance(Rng& r, Family f, std::size_t n, std::size_t m) {
  std::vector<Scalar> res;
  switch (f) {
    case Family::QuasiLinear: {
      for (std::size_t j = 0; j < m; ++j) res.push_back(Q(r.coin(0.7) ? 0 : r.uniform(0, 3)));
      return with_reserves(random_quasi(r, n, m, 8, 8, 0.3, r.coin()), std::move(res));
    }
    case Family::Roi: return random_roi(r, n, m, 6, 8, 3);
    case Family::Ranked: {
      for (std::size_t j = 0; j < m; ++j) res.push_back(Q(r.coin(0.7) ? 0 : r.uniform(0, 3)));
      return with_reserves(random_ranked(r, n, m, 4), std::move(res));
    }
  }
  return random_quasi(r, n, m, 8, 8);
}

inline Family random_family(Rng& r) {
  switch (r.uniform(0, 2)) {
    case 0: return Family::QuasiLinear;
    case 1: return Family::Roi;
    default: return Family::Ranked;
  }
}

inline BipartiteGraph random_graph(Rng& r, std::size_t left, std::size_t right, double density) {
  BipartiteGraph g(left, right);
  for (std::size_t u = 0; u < left; ++u)
    for (std::size_t v = 0; v < right; ++v)
      if (r.coin(density)) g.add_edge(u, v);
  return g;
}

/// Allocation as (buyer, item) pairs for compact assertions.
inline std::vector<Edge> pairs(const Allocation& x) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) out.push_back({i, *x[i]});
  return out;
}

inline std::vector<std::string> price_strings(const PricePlusVector& p) {
  std::vector<std::string> out;
  for (const auto& x : p) out.push_back(x.str());
  return out;
}

}  // namespace mineq::testing
