#pragma once

// Exact ordered-field arithmetic: arbitrary-precision rationals and elements
// a + b*sqrt(d) of a single real quadratic field. No floating point is used
// for any decision.

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "plgroups/error.hpp"

namespace plg {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

namespace detail {

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_integer(const Integer& n) {
  return boost::multiprecision::hash_value(n);
}

inline std::size_t hash_rational(const Rational& q) {
  return hash_combine(hash_integer(numerator(q)), hash_integer(denominator(q)));
}

inline int sign_of(const Rational& q) { return q.sign(); }

// Floor division for integers (boost truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Integer floor_of(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}

inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

inline bool is_squarefree(std::uint64_t d) {
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

inline Integer parse_integer(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::InvalidInput, "empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(ErrorKind::InvalidInput, "malformed integer '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') {
      fail(ErrorKind::InvalidInput, "malformed integer '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

inline Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(std::string_view(s).substr(0, slash));
  Integer den = parse_integer(std::string_view(s).substr(slash + 1));
  if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + s + "'");
  return Rational(num, den);
}

inline std::string rational_str(const Rational& q) { return q.str(); }

}  // namespace detail

/// Element of Q or of Q(sqrt d) for a square-free d > 1.
///
/// Canonical form: radicand() == 0 exactly when the irrational part is zero,
/// so equality of Scalars is field-wise equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : a_(v) {}             // NOLINT(google-explicit-constructor)
  Scalar(long v) : a_(v) {}            // NOLINT(google-explicit-constructor)
  Scalar(long long v) : a_(v) {}       // NOLINT(google-explicit-constructor)
  Scalar(const Integer& v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : a_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static Scalar fraction(long long num, long long den) {
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
    return Scalar(Rational(Integer(num), Integer(den)));
  }

  static Scalar quadratic(Rational a, Rational b, std::uint32_t d) {
    if (d < 2 || !detail::is_squarefree(d)) {
      fail(ErrorKind::InvalidInput,
           "radicand must be a square-free integer > 1, got " + std::to_string(d));
    }
    Scalar s;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.d_ = d;
    s.normalize();
    return s;
  }

  bool is_rational() const { return d_ == 0; }
  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  std::uint32_t radicand() const { return d_; }

  const Rational& as_rational() const {
    if (!is_rational()) fail(ErrorKind::InvalidInput, "expected a rational, got " + str());
    return a_;
  }

  /// Exact sign of a + b*sqrt(d), decided by comparing a^2 with b^2*d.
  int sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * d_;
    // sa and sb differ: the term with the larger square wins.
    if (lhs == rhs) return 0;  // unreachable for square-free d
    return lhs > rhs ? sa : sb;
  }

  Scalar operator-() const {
    Scalar r = *this;
    r.a_ = -r.a_;
    if (d_ != 0) r.b_ = -r.b_;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    if (d_ == 0 && o.d_ == 0) {
      a_ += o.a_;
      return *this;
    }
    std::uint32_t d = joint_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = d;
    normalize();
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    if (d_ == 0 && o.d_ == 0) {
      a_ -= o.a_;
      return *this;
    }
    std::uint32_t d = joint_radicand(o);
    a_ -= o.a_;
    b_ -= o.b_;
    d_ = d;
    normalize();
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    std::uint32_t d = joint_radicand(o);
    if (d == 0) {
      a_ *= o.a_;
      return *this;
    }
    Rational a = a_ * o.a_ + b_ * o.b_ * d;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
  }

  Scalar& operator/=(const Scalar& o) {
    std::uint32_t d = joint_radicand(o);
    if (o.a_ == 0 && o.b_ == 0) fail(ErrorKind::DivisionByZero, "division by zero");
    if (o.is_rational()) {
      a_ /= o.a_;
      if (d_ != 0) b_ /= o.a_;
      return *this;
    }
    // (a + b r)/(c + e r) = (a + b r)(c - e r)/(c^2 - e^2 d)
    Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
    Rational a = (a_ * o.a_ - b_ * o.b_ * d) / norm;
    Rational b = (b_ * o.a_ - a_ * o.b_) / norm;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    if (x.is_rational() && y.is_rational()) {
      if (x.a_ < y.a_) return std::strong_ordering::less;
      if (x.a_ > y.a_) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Scalar inverse() const { return Scalar(1) / *this; }

  Scalar pow(long long e) const {
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1
                                  : static_cast<unsigned long long>(e);
    Scalar result(1);
    while (n > 0) {
      if (n & 1ULL) result *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    return result;
  }

  Scalar pow(const Integer& e) const {
    if (e > Integer(std::numeric_limits<long long>::max()) ||
        e < Integer(std::numeric_limits<long long>::min() + 1)) {
      fail(ErrorKind::Unsupported, "exponent too large");
    }
    return pow(e.convert_to<long long>());
  }

  /// Largest integer n with n <= *this.
  Integer floor() const {
    if (is_rational()) return detail::floor_of(a_);
    Integer root = boost::multiprecision::sqrt(Integer(d_));
    Rational spread = abs(b_) * Rational(root + 1);
    Integer lo = detail::floor_of(a_ - spread) - 1;
    Integer hi = detail::ceil_of(a_ + spread) + 1;
    // invariant: lo <= x < hi
    while (hi - lo > 1) {
      Integer mid = detail::floor_div(lo + hi, 2);
      if (Scalar(mid) <= *this) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  std::string str() const {
    if (is_rational()) return detail::rational_str(a_);
    return "(" + detail::rational_str(a_) + ")+(" + detail::rational_str(b_) + ")√" +
           std::to_string(d_);
  }

  /// Accepts `p`, `p/q`, and `(a)+(b)√d` (also spelled `(a)+(b)sqrt(d)`).
  static Scalar parse(std::string_view text) {
    std::string s = detail::trim(text);
    if (s.empty()) fail(ErrorKind::InvalidInput, "empty scalar literal");
    if (s[0] != '(') return Scalar(detail::parse_rational(s));
    auto close_a = s.find(')');
    if (close_a == std::string::npos || s.compare(close_a, 3, ")+(") != 0) {
      fail(ErrorKind::InvalidInput, "malformed quadratic scalar '" + s + "'");
    }
    auto close_b = s.find(')', close_a + 3);
    if (close_b == std::string::npos) {
      fail(ErrorKind::InvalidInput, "malformed quadratic scalar '" + s + "'");
    }
    Rational a = detail::parse_rational(s.substr(1, close_a - 1));
    Rational b = detail::parse_rational(s.substr(close_a + 3, close_b - close_a - 3));
    std::string rest = s.substr(close_b + 1);
    static const std::string kRoot = "√";
    std::string digits;
    if (rest.rfind(kRoot, 0) == 0) {
      digits = rest.substr(kRoot.size());
    } else if (rest.rfind("sqrt(", 0) == 0 && !rest.empty() && rest.back() == ')') {
      digits = rest.substr(5, rest.size() - 6);
    } else if (rest.rfind("sqrt", 0) == 0) {
      digits = rest.substr(4);
    } else {
      fail(ErrorKind::InvalidInput, "malformed radical in '" + s + "'");
    }
    Integer d = detail::parse_integer(digits);
    if (d < 2 || d > Integer(std::numeric_limits<std::uint32_t>::max())) {
      fail(ErrorKind::InvalidInput, "radicand out of range in '" + s + "'");
    }
    return quadratic(std::move(a), std::move(b), d.convert_to<std::uint32_t>());
  }

  std::size_t hash() const {
    std::size_t h = detail::hash_rational(a_);
    if (d_ != 0) {
      h = detail::hash_combine(h, detail::hash_rational(b_));
      h = detail::hash_combine(h, d_);
    }
    return h;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  std::uint32_t joint_radicand(const Scalar& o) const {
    if (d_ == 0) return o.d_;
    if (o.d_ == 0 || o.d_ == d_) return d_;
    fail(ErrorKind::IncompatibleRadicand,
         "incompatible radicands " + std::to_string(d_) + " and " + std::to_string(o.d_));
  }

  void normalize() {
    if (b_ == 0) d_ = 0;
  }

  Rational a_{0};
  Rational b_{0};
  std::uint32_t d_ = 0;
};

inline Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

}  // namespace plg

template <>
struct std::hash<plg::Scalar> {
  std::size_t operator()(const plg::Scalar& s) const noexcept { return s.hash(); }
};
