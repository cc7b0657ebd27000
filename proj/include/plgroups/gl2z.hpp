#pragma once

// Equivalence of points of the projective line under fractional linear maps
// with matrices in GL(2,Z), decided through continued fractions.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plgroups/error.hpp"
#include "plgroups/scalar.hpp"

namespace plg {

/// A rational, a quadratic irrational, or infinity (empty value).
struct ExtendedReal {
  std::optional<Scalar> value;

  static ExtendedReal infinity() { return {}; }
  bool is_infinite() const { return !value.has_value(); }
  bool is_rational_or_infinite() const { return !value || value->is_rational(); }

  static ExtendedReal parse(std::string_view text) {
    std::string s = detail::trim(text);
    if (s == "inf" || s == "∞" || s == "infinity") return infinity();
    return {Scalar::parse(s)};
  }
  std::string str() const { return value ? value->str() : "inf"; }
};

struct ContinuedFraction {
  std::vector<Integer> preperiod;
  std::vector<Integer> period;  // minimal; empty for rationals
};

namespace detail {

inline std::vector<Integer> minimal_period(std::vector<Integer> period) {
  const std::size_t n = period.size();
  for (std::size_t k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    bool repeats = true;
    for (std::size_t i = k; i < n && repeats; ++i) repeats = period[i] == period[i - k];
    if (repeats) {
      period.resize(k);
      break;
    }
  }
  return period;
}

inline bool is_rotation(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = a[(i + shift) % n] == b[i];
    if (same) return true;
  }
  return n == 0;
}

}  // namespace detail

/// Continued fraction of a rational (finite) or quadratic irrational
/// (eventually periodic) number.
inline ContinuedFraction continued_fraction(const Scalar& x) {
  ContinuedFraction cf;
  if (x.is_rational()) {
    Integer num = numerator(x.as_rational());
    Integer den = denominator(x.as_rational());
    while (den != 0) {
      Integer a = detail::floor_div(num, den);
      cf.preperiod.push_back(a);
      Integer r = num - a * den;
      num = std::move(den);
      den = std::move(r);
    }
    return cf;
  }
  // Write x = (P + sqrt(D)) / Q with Q | D - P^2.
  const Rational& a = x.rational_part();
  const Rational& b = x.irrational_part();
  Integer r = boost::multiprecision::lcm(denominator(a), denominator(b));
  Integer p = numerator(a * Rational(r));
  Integer q = numerator(b * Rational(r));
  Integer P = p, Q = r;
  Integer D = q * q * Integer(x.radicand());
  if (q < 0) {
    P = -P;
    Q = -Q;
  }
  if ((D - P * P) % Q != 0) {
    Integer m = Q < 0 ? Integer(-Q) : Q;
    P *= m;
    D *= m * m;
    Q *= m;
  }
  const Integer s = boost::multiprecision::sqrt(D);
  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  std::vector<Integer> terms;
  while (true) {
    auto [it, inserted] = seen.emplace(std::pair{P, Q}, terms.size());
    if (!inserted) {
      std::size_t start = it->second;
      cf.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
      cf.period = detail::minimal_period({terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end()});
      return cf;
    }
    Integer t = Q > 0 ? detail::floor_div(P + s, Q) : detail::floor_div(P + s + 1, Q);
    terms.push_back(t);
    P = t * Q - P;
    Q = (D - P * P) / Q;
  }
}

/// True iff some matrix of GL(2,Z) carries x to y. Rationals and infinity
/// form one orbit; quadratic irrationals are equivalent iff their periodic
/// tails agree up to a shift.
inline bool gl2z_equivalent(const ExtendedReal& x, const ExtendedReal& y) {
  if (x.is_rational_or_infinite() || y.is_rational_or_infinite()) {
    return x.is_rational_or_infinite() && y.is_rational_or_infinite();
  }
  if (x.value->radicand() != y.value->radicand()) return false;
  return detail::is_rotation(continued_fraction(*x.value).period,
                             continued_fraction(*y.value).period);
}

}  // namespace plg
