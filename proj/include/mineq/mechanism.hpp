#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mineq/errors.hpp"
#include "mineq/model.hpp"
#include "mineq/solver.hpp"

namespace mineq {

/// The minimum equilibrium mechanism: the solver's outcome when an
/// equilibrium exists, otherwise nothing is assigned.
inline Outcome run_mechanism(const Instance& bids) { return solve(bids); }

/// A buyer's true utility at an outcome. `limit` is the value approached
/// as the plus-prices come down to their base; `minus` says the limit is
/// approached from below. `realized` is the utility at the lifted prices.
struct BuyerUtility {
  std::optional<std::size_t> item;
  Scalar limit;
  bool minus = false;
  Scalar realized;
};

/// Order on limit utilities: (x, minus) sits just below (x, exact).
inline bool limit_less(const BuyerUtility& a, const BuyerUtility& b) {
  if (a.limit != b.limit) return a.limit < b.limit;
  return a.minus && !b.minus;
}

inline BuyerUtility true_utility(const Instance& truth, std::size_t buyer, const Outcome& out,
                                 const std::vector<Scalar>& realized) {
  BuyerUtility u{std::nullopt, Scalar(0), false, Scalar(0)};
  if (!out.has_equilibrium() || !out.allocation.at(buyer)) return u;
  const std::size_t j = *out.allocation[buyer];
  const PlusPrice& p = out.prices.at(j);
  u.item = j;
  u.realized = truth.utility(buyer, j, realized.at(j));
  if (p.plus && !(p.value < truth.budget(buyer, j))) {
    u.limit = Scalar(-1);
  } else {
    u.limit = truth.utility(buyer, j, p.value);
    u.minus = p.plus;
  }
  return u;
}

struct DeviationResult {
  std::vector<PairParams> bid;
  Status status = Status::NoEquilibrium;
  BuyerUtility utility;
};

struct ProbeReport {
  BuyerUtility truthful;
  std::optional<std::size_t> best_index;  // into `runs`; empty when no deviation beats truth
  BuyerUtility best;
  bool truthful_has_equilibrium = false;
  std::vector<DeviationResult> runs;

  bool profitable() const noexcept { return best_index.has_value(); }
};

/// Replays the mechanism with the deviator's row replaced by each bid and
/// scores every outcome with the deviator's true utility. A deviation is
/// reported only if its limit utility strictly beats the truthful one.
inline ProbeReport best_response_probe(const Instance& truth, std::size_t deviator,
                                       const std::vector<std::vector<PairParams>>& deviations, const Scalar& epsilon) {
  if (deviator >= truth.n_buyers()) throw IndexError("deviator out of range");
  auto score = [&](const Outcome& out) {
    std::vector<Scalar> realized;
    if (out.has_equilibrium()) realized = realize(truth, out, epsilon);
    return true_utility(truth, deviator, out, realized);
  };
  ProbeReport rep;
  const Outcome base = run_mechanism(truth);
  rep.truthful_has_equilibrium = base.has_equilibrium();
  rep.truthful = score(base);
  rep.best = rep.truthful;
  for (const auto& row : deviations) {
    const Instance bid = truth.with_buyer_row(deviator, row);
    const Outcome out = run_mechanism(bid);
    DeviationResult r{row, out.status, {}};
    if (out.has_equilibrium()) {
      // Plus-prices are lifted in the reported market, then scored truthfully.
      const auto realized = realize(bid, out, epsilon);
      r.utility = true_utility(truth, deviator, out, realized);
    } else {
      r.utility = BuyerUtility{std::nullopt, Scalar(0), false, Scalar(0)};
    }
    if (limit_less(rep.best, r.utility)) {
      rep.best = r.utility;
      rep.best_index = rep.runs.size();
    }
    rep.runs.push_back(std::move(r));
  }
  return rep;
}

/// Systematic deviations for one buyer: every combination of per-item value
/// shifts, combined with a uniform budget shift (and optionally an infinite
/// budget). Rows with negative entries or that the family rejects are skipped.
inline std::vector<std::vector<PairParams>> deviation_grid(const Instance& truth, std::size_t deviator,
                                                           const std::vector<Scalar>& value_deltas,
                                                           const std::vector<Scalar>& budget_deltas,
                                                           bool infinite_budget = false) {
  if (deviator >= truth.n_buyers()) throw IndexError("deviator out of range");
  const std::size_t m = truth.m_items();
  std::vector<PairParams> base(m);
  for (std::size_t j = 0; j < m; ++j) base[j] = truth.param(deviator, j);

  std::vector<std::vector<Scalar>> value_rows{{}};
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::vector<Scalar>> next;
    for (const auto& prefix : value_rows)
      for (const auto& d : value_deltas) {
        Scalar v = base[j].value + d;
        if (v.sign() < 0) continue;
        auto row = prefix;
        row.push_back(std::move(v));
        next.push_back(std::move(row));
      }
    value_rows = std::move(next);
  }
  std::vector<std::optional<Scalar>> shifts(budget_deltas.begin(), budget_deltas.end());
  if (infinite_budget) shifts.push_back(std::nullopt);

  std::vector<std::vector<PairParams>> out;
  for (const auto& values : value_rows) {
    for (const auto& shift : shifts) {
      std::vector<PairParams> row(m);
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j) {
        row[j].value = values[j];
        row[j].budget = shift ? base[j].budget + *shift : Scalar::pos_inf();
        ok = row[j].budget.sign() >= 0;
      }
      if (!ok) continue;
      try {
        (void)truth.with_buyer_row(deviator, row);
      } catch (const InvalidInstance&) {
        continue;
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace mineq
