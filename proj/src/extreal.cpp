#include "gtp/extreal.hpp"

#include <cctype>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace gtp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(mpz_size(z)) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::size_t>(mpz_getlimbn(z, 0)) + (h << 6) + (h >> 2);
  return mpz_sgn(z) < 0 ? ~h : h;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(negative ? mpz_class(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExtReal ExtReal::ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return ExtReal(std::move(q));
}

ExtReal ExtReal::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return infinity();
  if (text == "-inf") return neg_infinity();
  return ExtReal(parse_rational(text));
}

const Rational& ExtReal::rational() const {
  if (kind_ != Kind::finite) throw std::domain_error("rational() of an infinite value");
  return value_;
}

std::string ExtReal::str() const {
  switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    case Kind::finite: break;
  }
  return format_rational(value_);
}

std::size_t ExtReal::hash() const {
  if (kind_ != Kind::finite) return kind_ == Kind::pos_inf ? 0x51ed2701u : 0x2545f491u;
  return hash_mpz(value_.get_num_mpz_t()) * 31 + hash_mpz(value_.get_den_mpz_t());
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtReal::infinity();
  if (a.is_neg_inf() || b.is_neg_inf()) return ExtReal::neg_infinity();
  return ExtReal(Rational(a.value_ + b.value_));
}

ExtReal operator-(const ExtReal& a) {
  switch (a.kind_) {
    case ExtReal::Kind::pos_inf: return ExtReal::neg_infinity();
    case ExtReal::Kind::neg_inf: return ExtReal::infinity();
    case ExtReal::Kind::finite: break;
  }
  return ExtReal(Rational(-a.value_));
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtReal::Kind::finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != ExtReal::Kind::finite) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtReal scale(const Rational& c, const ExtReal& a) {
  if (sgn(c) < 0) throw std::domain_error("scale: negative scalar");
  if (sgn(c) == 0) return ExtReal(0);
  if (!a.is_finite()) return a;
  return ExtReal(Rational(c * a.rational()));
}

ExtReal scale(const ExtReal& c, const ExtReal& a) {
  if (!c.is_finite()) throw std::domain_error("scale: infinite scalar");
  return scale(c.rational(), a);
}

std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << x.str(); }

}  // namespace gtp
