#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mineq/errors.hpp"
#include "mineq/model.hpp"

namespace mineq {

/// Per real buyer: the item won, or nothing.
using Allocation = std::vector<std::optional<std::size_t>>;

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Violation {
  std::string kind;  // unsold_above_reserve, below_reserve, negative_utility, envy, loser_envy, blocking_pair
  std::size_t buyer = kNone;
  std::size_t item = kNone;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

enum class StabilityMode { Weak, Strong };

namespace detail {

inline std::vector<std::size_t> owners(const Instance& inst, const Allocation& x, const std::vector<Scalar>& prices) {
  if (x.size() != inst.n_buyers()) throw ContractError("allocation must list every real buyer");
  if (prices.size() != inst.m_items()) throw ContractError("price vector must cover every item");
  for (const auto& p : prices)
    if (!p.is_finite() || p.sign() < 0) throw ContractError("prices must be finite and non-negative");
  std::vector<std::size_t> owner(inst.m_items(), kNone);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    const std::size_t j = *x[i];
    if (j >= inst.m_items()) throw ContractError("allocated item out of range");
    if (owner[j] != kNone) throw ContractError("item allocated twice");
    owner[j] = i;
  }
  return owner;
}

}  // namespace detail

/// Competitive equilibrium at concrete prices: unsold items sit at their
/// reserve, nothing is sold below reserve, winners get a non-negative
/// utility no smaller than from any other item, losers get nothing positive.
inline Verdict check_competitive_equilibrium(const Instance& inst, const Allocation& x,
                                             const std::vector<Scalar>& prices) {
  const auto owner = detail::owners(inst, x, prices);
  Verdict v;
  for (std::size_t j = 0; j < inst.m_items(); ++j) {
    if (prices[j] < inst.reserve(j)) v.violations.push_back({"below_reserve", owner[j], j});
    else if (owner[j] == kNone && prices[j] != inst.reserve(j)) v.violations.push_back({"unsold_above_reserve", kNone, j});
  }
  for (std::size_t i = 0; i < inst.n_buyers(); ++i) {
    if (x[i]) {
      const Scalar mine = inst.utility(i, *x[i], prices[*x[i]]);
      if (mine.sign() < 0) v.violations.push_back({"negative_utility", i, *x[i]});
      for (std::size_t j = 0; j < inst.m_items(); ++j)
        if (j != *x[i] && inst.utility(i, j, prices[j]) > mine) v.violations.push_back({"envy", i, j});
    } else {
      for (std::size_t j = 0; j < inst.m_items(); ++j)
        if (inst.utility(i, j, prices[j]).sign() > 0) v.violations.push_back({"loser_envy", i, j});
    }
  }
  return v;
}

/// Stability of an individually rational outcome. Seller payoff is the
/// price of a sold item and the reserve of an unsold one.
///
/// weak:   (i, j) blocks iff u_ij(pi_j) > u_i and pi_j < b_ij
/// strong: (i, j) blocks iff u_ij(pi_j) > u_i
inline Verdict check_stability(const Instance& inst, const Allocation& x, const std::vector<Scalar>& prices,
                               StabilityMode mode) {
  const auto owner = detail::owners(inst, x, prices);
  std::vector<Scalar> payoff(inst.m_items());
  for (std::size_t j = 0; j < inst.m_items(); ++j) {
    if (owner[j] == kNone) {
      payoff[j] = inst.reserve(j);
    } else {
      if (prices[j] < inst.reserve(j)) throw ContractError("item sold below its reserve is not individually rational");
      payoff[j] = prices[j];
    }
  }
  std::vector<Scalar> level(inst.n_buyers(), Scalar(0));
  for (std::size_t i = 0; i < inst.n_buyers(); ++i) {
    if (!x[i]) continue;
    level[i] = inst.utility(i, *x[i], prices[*x[i]]);
    if (level[i].sign() < 0) throw ContractError("winner with negative utility is not individually rational");
  }
  Verdict v;
  for (std::size_t i = 0; i < inst.n_buyers(); ++i) {
    for (std::size_t j = 0; j < inst.m_items(); ++j) {
      if (x[i] && *x[i] == j) continue;
      if (!(inst.utility(i, j, payoff[j]) > level[i])) continue;
      if (mode == StabilityMode::Weak && !(payoff[j] < inst.budget(i, j))) continue;
      v.violations.push_back({"blocking_pair", i, j});
    }
  }
  return v;
}

}  // namespace mineq
