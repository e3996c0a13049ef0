#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mineq/errors.hpp"
#include "mineq/extended_rational.hpp"

namespace mineq {

using Scalar = ExtendedRational;

/// The three built-in consistent utility families.
///
///   quasi_linear: u(p) = v - p            for p <= b
///   roi:          u(p) = t / p            for 0 < p <= b, u(0) = inf if t > 0
///   ranked:       u(p) = M - p            for p <= b, curves of one buyer disjoint
///
/// Every family returns -1 above the budget.
enum class Family { QuasiLinear, Roi, Ranked };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::QuasiLinear: return "quasilinear";
    case Family::Roi: return "roi";
    case Family::Ranked: return "ranked";
  }
  return "?";
}

inline Family family_from_string(std::string_view s) {
  if (s == "quasilinear" || s == "quasi_linear") return Family::QuasiLinear;
  if (s == "roi") return Family::Roi;
  if (s == "ranked") return Family::Ranked;
  throw InvalidInstance("unknown utility family '" + std::string(s) + "'");
}

/// Per (buyer, item) parameters. `value` is v, t or M depending on the family.
struct PairParams {
  Scalar value;
  Scalar budget;

  friend bool operator==(const PairParams&, const PairParams&) = default;
};

struct Thresholds {
  Scalar value;   ///< price at which utility reaches zero
  Scalar budget;  ///< largest affordable price
};

/// A price that may carry the "plus" flag: strictly above `value` but
/// arbitrarily close to it.
struct PlusPrice {
  Scalar value;
  bool plus = false;

  friend bool operator==(const PlusPrice&, const PlusPrice&) = default;
  friend std::strong_ordering operator<=>(const PlusPrice& a, const PlusPrice& b) {
    if (auto c = a.value <=> b.value; c != 0) return c;
    return a.plus <=> b.plus;
  }
  std::string str() const { return value.str() + (plus ? "+" : ""); }
};

using PricePlusVector = std::vector<PlusPrice>;

/// Buyers x items market with one utility family.
///
/// Buyer indices [0, n_buyers()) are real buyers. When dummies are enabled,
/// indices [n_buyers(), total_buyers()) are m internal dummy buyers; dummy
/// buyers get utility r_j - p on item j up to budget r_j (the reserve), which
/// is the zero-budget, zero-utility buyer when reserves are zero.
class Instance {
 public:
  Instance(Family family, std::size_t n_buyers, std::size_t m_items, std::vector<PairParams> params,
           std::vector<Scalar> reserves = {}, bool include_dummies = true)
      : family_(family),
        n_(n_buyers),
        m_(m_items),
        params_(std::move(params)),
        reserves_(std::move(reserves)),
        include_dummies_(include_dummies) {
    if (reserves_.empty()) reserves_.assign(m_, Scalar(0));
    validate();
  }

  Family family() const noexcept { return family_; }
  std::size_t n_buyers() const noexcept { return n_; }
  std::size_t m_items() const noexcept { return m_; }
  bool include_dummies() const noexcept { return include_dummies_; }
  std::size_t total_buyers() const noexcept { return n_ + (include_dummies_ ? m_ : 0); }
  bool is_dummy(std::size_t i) const noexcept { return i >= n_; }

  const std::vector<PairParams>& params() const noexcept { return params_; }
  const std::vector<Scalar>& reserves() const noexcept { return reserves_; }
  const Scalar& reserve(std::size_t j) const {
    check_item(j);
    return reserves_[j];
  }

  /// Parameters of a real buyer, as supplied (after normalization).
  const PairParams& param(std::size_t i, std::size_t j) const {
    check_real(i);
    check_item(j);
    return params_[i * m_ + j];
  }

  /// Copy of the instance with buyer i's row replaced.
  Instance with_buyer_row(std::size_t i, const std::vector<PairParams>& row) const {
    check_real(i);
    if (row.size() != m_) throw InvalidInstance("replacement row has wrong length");
    auto p = params_;
    std::copy(row.begin(), row.end(), p.begin() + static_cast<std::ptrdiff_t>(i * m_));
    return Instance(family_, n_, m_, std::move(p), reserves_, include_dummies_);
  }

  Scalar utility(std::size_t i, std::size_t j, const Scalar& p) const {
    check_any(i);
    check_item(j);
    if (p.sign() < 0) throw ContractError("utility evaluated at a negative price");
    if (is_dummy(i)) return linear_utility(reserves_[j], reserves_[j], p);
    const PairParams& q = params_[i * m_ + j];
    if (family_ == Family::Roi) {
      if (p > q.budget) return Scalar(-1);
      if (p.is_zero()) return q.value.is_zero() ? Scalar(0) : Scalar::pos_inf();
      return q.value / p;
    }
    return linear_utility(q.value, q.budget, p);
  }

  /// Smallest price in [0, b_ij] with utility q; +inf when there is none.
  Scalar inverse(std::size_t i, std::size_t j, const Scalar& q) const {
    check_any(i);
    check_item(j);
    const PairParams& pr = is_dummy(i) ? dummy_params(j) : params_[i * m_ + j];
    if (family_ == Family::Roi && !is_dummy(i)) {
      if (pr.value.is_zero()) return q.is_zero() ? Scalar(0) : Scalar::pos_inf();
      if (q.is_pos_inf()) return Scalar(0);
      if (q.sign() <= 0 || !q.is_finite()) return Scalar::pos_inf();
      Scalar p = pr.value / q;
      return p > pr.budget ? Scalar::pos_inf() : p;
    }
    if (!q.is_finite()) return Scalar::pos_inf();
    Scalar p = pr.value - q;
    if (p.sign() < 0 || p > pr.budget) return Scalar::pos_inf();
    return p;
  }

  Thresholds thresholds(std::size_t i, std::size_t j) const {
    check_any(i);
    check_item(j);
    if (is_dummy(i)) return {reserves_[j], reserves_[j]};
    const PairParams& q = params_[i * m_ + j];
    if (family_ == Family::Roi) return {q.value.is_zero() ? Scalar(0) : Scalar::pos_inf(), q.budget};
    return {q.value, q.budget};
  }

  const Scalar& budget(std::size_t i, std::size_t j) const {
    check_any(i);
    check_item(j);
    return is_dummy(i) ? reserves_[j] : params_[i * m_ + j].budget;
  }

 private:
  static Scalar linear_utility(const Scalar& value, const Scalar& budget, const Scalar& p) {
    if (p > budget) return Scalar(-1);
    return value - p;
  }

  PairParams dummy_params(std::size_t j) const { return {reserves_[j], reserves_[j]}; }

  void check_item(std::size_t j) const {
    if (j >= m_) throw IndexError("item index " + std::to_string(j) + " out of range");
  }
  void check_real(std::size_t i) const {
    if (i >= n_) throw IndexError("buyer index " + std::to_string(i) + " out of range");
  }
  void check_any(std::size_t i) const {
    if (i >= total_buyers()) throw IndexError("buyer index " + std::to_string(i) + " out of range");
  }

  void validate() {
    if (params_.size() != n_ * m_)
      throw InvalidInstance("expected " + std::to_string(n_ * m_) + " parameter entries, got " +
                            std::to_string(params_.size()));
    if (reserves_.size() != m_) throw InvalidInstance("reserve vector length must equal item count");
    for (const auto& r : reserves_) {
      if (!r.is_finite() || r.sign() < 0) throw InvalidInstance("reserves must be finite and non-negative");
      if (family_ == Family::Roi && r.sign() == 0)
        throw InvalidInstance("roi family requires strictly positive reserve prices");
    }
    for (std::size_t k = 0; k < params_.size(); ++k) {
      auto& q = params_[k];
      const std::string where = " at (" + std::to_string(k / m_) + "," + std::to_string(k % m_) + ")";
      if (!q.value.is_finite() || q.value.sign() < 0)
        throw InvalidInstance("values must be finite and non-negative" + where);
      if (q.budget.is_neg_inf() || q.budget.sign() < 0) throw InvalidInstance("budgets must be non-negative" + where);
      if (family_ == Family::Roi && q.value.is_zero()) q.budget = Scalar(0);
    }
    if (family_ == Family::Ranked) validate_ranked();
  }

  // Each buyer's non-negative utility ranges [max(M - b, 0), M] must be
  // pairwise disjoint, so the buyer's ranking never changes within budgets.
  void validate_ranked() const {
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<std::pair<Scalar, Scalar>> ranges;
      for (std::size_t j = 0; j < m_; ++j) {
        const auto& q = params_[i * m_ + j];
        if (q.value.sign() <= 0) continue;
        Scalar lo = q.budget.is_pos_inf() ? Scalar(0) : max(q.value - q.budget, Scalar(0));
        ranges.emplace_back(std::move(lo), q.value);
      }
      std::sort(ranges.begin(), ranges.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
      for (std::size_t k = 1; k < ranges.size(); ++k) {
        if (ranges[k].first <= ranges[k - 1].second)
          throw InvalidInstance("ranked buyer " + std::to_string(i) + " has intersecting utility curves");
      }
    }
  }

  Family family_;
  std::size_t n_;
  std::size_t m_;
  std::vector<PairParams> params_;
  std::vector<Scalar> reserves_;
  bool include_dummies_;
};

}  // namespace mineq
