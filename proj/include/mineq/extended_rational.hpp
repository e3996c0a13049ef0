#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "mineq/errors.hpp"

namespace mineq {

/// Exact rational number extended with +inf and -inf.
///
/// Finite values are kept canonical (lowest terms, positive denominator),
/// so equality is structural. Arithmetic never rounds. Operations whose
/// result is undefined (inf - inf, 0 * inf, division by zero) throw
/// std::domain_error.
class ExtendedRational {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  ExtendedRational() = default;
  ExtendedRational(int n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  ExtendedRational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  ExtendedRational(long long n) : value_(mpz_from(n)) {}  // NOLINT(google-explicit-constructor)
  ExtendedRational(long long num, long long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    value_ = mpq_class(mpz_from(num), mpz_from(den));
    value_.canonicalize();
  }
  explicit ExtendedRational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

  static ExtendedRational pos_inf() { return ExtendedRational(Kind::PosInf); }
  static ExtendedRational neg_inf() { return ExtendedRational(Kind::NegInf); }

  /// Accepts "p", "p/q" (q > 0), "inf", "+inf" and "-inf".
  static ExtendedRational parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }
  bool is_zero() const noexcept { return is_finite() && sgn(value_) == 0; }
  int sign() const noexcept {
    if (kind_ == Kind::PosInf) return 1;
    if (kind_ == Kind::NegInf) return -1;
    return sgn(value_);
  }
  bool is_integer() const { return is_finite() && value_.get_den() == 1; }

  /// Underlying rational; throws for infinite values.
  const mpq_class& value() const {
    if (!is_finite()) throw std::domain_error("value() of an infinite ExtendedRational");
    return value_;
  }
  mpz_class numerator() const { return value().get_num(); }
  mpz_class denominator() const { return value().get_den(); }

  /// Canonical text form; parse(str()) == *this.
  std::string str() const {
    if (kind_ == Kind::PosInf) return "inf";
    if (kind_ == Kind::NegInf) return "-inf";
    return value_.get_str();
  }
  double to_double() const {
    if (kind_ == Kind::PosInf) return 1.0 / 0.0;
    if (kind_ == Kind::NegInf) return -1.0 / 0.0;
    return value_.get_d();
  }

  ExtendedRational operator-() const {
    if (kind_ == Kind::PosInf) return neg_inf();
    if (kind_ == Kind::NegInf) return pos_inf();
    return ExtendedRational(mpq_class(-value_), canonical_tag{});
  }

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedRational(mpq_class(a.value_ + b.value_), canonical_tag{});
    if (a.is_finite()) return b;
    if (b.is_finite()) return a;
    if (a.kind_ != b.kind_) throw std::domain_error("inf - inf is undefined");
    return a;
  }
  friend ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b) { return a + (-b); }
  friend ExtendedRational operator*(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedRational(mpq_class(a.value_ * b.value_), canonical_tag{});
    const int s = a.sign() * b.sign();
    if (s == 0) throw std::domain_error("0 * inf is undefined");
    return s > 0 ? pos_inf() : neg_inf();
  }
  friend ExtendedRational operator/(const ExtendedRational& a, const ExtendedRational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!b.is_finite()) {
      if (!a.is_finite()) throw std::domain_error("inf / inf is undefined");
      return ExtendedRational();
    }
    if (a.is_finite()) return ExtendedRational(mpq_class(a.value_ / b.value_), canonical_tag{});
    return (a.sign() * b.sign() > 0) ? pos_inf() : neg_inf();
  }
  ExtendedRational& operator+=(const ExtendedRational& o) { return *this = *this + o; }
  ExtendedRational& operator-=(const ExtendedRational& o) { return *this = *this - o; }
  ExtendedRational& operator*=(const ExtendedRational& o) { return *this = *this * o; }
  ExtendedRational& operator/=(const ExtendedRational& o) { return *this = *this / o; }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.is_finite() || cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (!a.is_finite()) return std::strong_ordering::equal;
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) { return os << x.str(); }

 private:
  struct canonical_tag {};
  explicit ExtendedRational(Kind k) : kind_(k) {}
  // gmpxx arithmetic results are already canonical.
  ExtendedRational(mpq_class q, canonical_tag) : value_(std::move(q)) {}

  static mpz_class mpz_from(long long v) {
    mpz_class z;
    const bool neg = v < 0;
    // Magnitude via unsigned arithmetic so LLONG_MIN is representable.
    unsigned long long mag = neg ? 0ULL - static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
    if (neg) z = -z;
    return z;
  }

  Kind kind_ = Kind::Finite;
  mpq_class value_;
};

inline ExtendedRational ExtendedRational::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!digits(den)) throw InvalidInstance("malformed rational '" + std::string(text) + "'");
  }
  std::string_view mag = num;
  if (!mag.empty() && mag.front() == '-') mag.remove_prefix(1);
  if (!digits(mag)) throw InvalidInstance("malformed rational '" + std::string(text) + "'");
  mpq_class q;
  q.get_num().set_str(std::string(num), 10);
  if (den.empty()) {
    q.get_den() = 1;
  } else {
    q.get_den().set_str(std::string(den), 10);
    if (sgn(q.get_den()) == 0) throw InvalidInstance("zero denominator in '" + std::string(text) + "'");
  }
  return ExtendedRational(std::move(q));
}

inline const ExtendedRational& min(const ExtendedRational& a, const ExtendedRational& b) { return b < a ? b : a; }
inline const ExtendedRational& max(const ExtendedRational& a, const ExtendedRational& b) { return a < b ? b : a; }

}  // namespace mineq
