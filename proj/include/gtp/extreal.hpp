#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gtp {

using Rational = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering (lowest terms, q > 0); integers print without "/1".
std::string format_rational(const Rational& q);

/**
 * Extended real number: an exact rational, +inf or -inf.
 *
 * Arithmetic follows the conventions 0 * inf = 0 and inf + (-inf) = inf.
 * Only scaling by finite non-negative rationals is provided; there is no
 * general product.
 */
class ExtReal {
 public:
  enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

  ExtReal() = default;
  ExtReal(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtReal(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit ExtReal(Rational q) : value_(std::move(q)) { value_.canonicalize(); }

  static ExtReal infinity() { return ExtReal(Kind::pos_inf); }
  static ExtReal neg_infinity() { return ExtReal(Kind::neg_inf); }
  static ExtReal ratio(long num, long den);

  /// Accepts "p/q", "p", "inf", "+inf", "-inf". Throws std::invalid_argument.
  static ExtReal parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  /// Finite value; throws std::domain_error on an infinity.
  const Rational& rational() const;

  /// "p/q" | "inf" | "-inf".
  std::string str() const;

  std::size_t hash() const;

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a);
  /// a + (-b), so inf - inf = inf.
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  ExtReal& operator+=(const ExtReal& b) { return *this = *this + b; }

  friend bool operator==(const ExtReal& a, const ExtReal& b);
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);

 private:
  explicit ExtReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::finite;
  Rational value_;  // zero unless finite
};

/// c * a for finite c >= 0, with 0 * (+-inf) = 0. Throws std::domain_error for c < 0.
ExtReal scale(const Rational& c, const ExtReal& a);

/// Same as above; c must be finite and non-negative.
ExtReal scale(const ExtReal& c, const ExtReal& a);

std::ostream& operator<<(std::ostream& os, const ExtReal& x);

struct ExtRealHash {
  std::size_t operator()(const ExtReal& x) const { return x.hash(); }
};

}  // namespace gtp
