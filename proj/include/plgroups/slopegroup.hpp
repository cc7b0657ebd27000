#pragma once

// Multiplicative slope groups P, exponent vectors standing in for ln P,
// characters built from the endpoint germs and exact sign decisions.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plgroups/error.hpp"
#include "plgroups/factor.hpp"
#include "plgroups/lattice.hpp"
#include "plgroups/plmap.hpp"
#include "plgroups/scalar.hpp"

namespace plg {

/// Sum of e_i * ln(basis_i); never evaluated as a real number.
struct ExponentVector {
  std::vector<std::string> basis;
  IntVector exponents;

  bool is_zero() const {
    return std::all_of(exponents.begin(), exponents.end(), [](const Integer& e) { return e == 0; });
  }
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (i) s += ",";
      s += exponents[i].str();
    }
    return s + ")";
  }
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

namespace detail {

inline std::vector<Rational> add_scaled(std::vector<Rational> acc, const IntVector& v,
                                        const Rational& c) {
  if (acc.size() < v.size()) acc.resize(v.size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += c * Rational(v[i]);
  return acc;
}

inline Integer lcm_of_denominators(const std::vector<Rational>& xs) {
  Integer l = 1;
  for (auto& x : xs) l = boost::multiprecision::lcm(l, denominator(x));
  return l;
}

}  // namespace detail

/// Subgroup of the positive reals: generated by finitely many rationals, or
/// cyclic with a (possibly quadratic irrational) generator.
class SlopeGroup {
 public:
  enum class Kind { RationalGens, CyclicQuadratic };

  SlopeGroup() = default;

  static SlopeGroup rational(std::vector<Rational> generators) {
    SlopeGroup p;
    p.kind_ = Kind::RationalGens;
    std::map<Integer, bool> primes;
    for (auto& g : generators) {
      if (g <= 0 || g == 1) {
        fail(ErrorKind::InvalidInput, "slope group generators must be positive and != 1");
      }
      for (auto& [q, e] : prime_exponents(g)) primes[q] = true;
      p.generators_.emplace_back(g);
    }
    for (auto& [q, unused] : primes) p.primes_.push_back(q);
    std::vector<IntVector> rows;
    for (auto& g : generators) rows.push_back(p.prime_vector(g).value());
    p.lattice_ = Lattice::span(p.primes_.size(), rows);
    return p;
  }

  static SlopeGroup cyclic(Scalar generator) {
    if (generator.sign() <= 0 || generator == Scalar(1)) {
      fail(ErrorKind::InvalidInput, "cyclic generator must be positive and != 1");
    }
    SlopeGroup p;
    p.kind_ = Kind::CyclicQuadratic;
    p.generators_.push_back(std::move(generator));
    p.lattice_ = Lattice::span(1, {{Integer(1)}});
    return p;
  }

  /// "2,3,5" for rational generators, "cyclic:<scalar>" for a cyclic group.
  static SlopeGroup parse(std::string_view text) {
    std::string s = detail::trim(text);
    if (s.rfind("cyclic:", 0) == 0) return cyclic(Scalar::parse(s.substr(7)));
    std::vector<Rational> gens;
    if (s.empty() || s == "1" || s == "{}") return rational({});
    std::size_t start = 0;
    while (start <= s.size()) {
      auto comma = s.find(',', start);
      std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      gens.push_back(detail::parse_rational(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return rational(std::move(gens));
  }

  Kind kind() const { return kind_; }
  const std::vector<Scalar>& generators() const { return generators_; }
  bool is_trivial() const { return generators_.empty(); }

  /// Names of the ambient exponent coordinates.
  std::vector<std::string> basis() const {
    std::vector<std::string> out;
    if (kind_ == Kind::CyclicQuadratic) {
      out.push_back(generators_[0].str());
    } else {
      for (auto& p : primes_) out.push_back(p.str());
    }
    return out;
  }
  std::size_t ambient_dim() const { return kind_ == Kind::CyclicQuadratic ? 1 : primes_.size(); }
  const std::vector<Integer>& primes() const { return primes_; }

  /// Exponent lattice of P in the ambient coordinates.
  const Lattice& lattice() const { return lattice_; }

  /// Discrete logarithm; throws NotMember outside P.
  ExponentVector to_exponents(const Scalar& x) const {
    return {basis(), raw_exponents(x)};
  }

  IntVector raw_exponents(const Scalar& x) const {
    if (x.sign() <= 0) fail(ErrorKind::NotMember, x.str() + " is not positive");
    if (kind_ == Kind::CyclicQuadratic) return {cyclic_log(x)};
    if (!x.is_rational()) fail(ErrorKind::NotMember, x.str() + " is irrational");
    auto v = prime_vector(x.as_rational());
    if (!v || !lattice_.contains(*v)) fail(ErrorKind::NotMember, x.str() + " is not in " + str());
    return *v;
  }

  bool contains(const Scalar& x) const {
    try {
      raw_exponents(x);
      return true;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotMember) return false;
      throw;
    }
  }

  /// Exact sign of sum c_i ln(basis_i) for a rational coefficient vector.
  int log_sign(const std::vector<Rational>& coeffs) const {
    Integer l = detail::lcm_of_denominators(coeffs);
    Scalar product(1);
    auto names = ambient_values();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Integer e = numerator(coeffs[i] * Rational(l));
      if (e != 0) product *= names[i].pow(e);
    }
    return product > Scalar(1) ? 1 : (product < Scalar(1) ? -1 : 0);
  }

  std::string str() const {
    if (kind_ == Kind::CyclicQuadratic) return "<" + generators_[0].str() + ">";
    std::string s = "<";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (i) s += ",";
      s += generators_[i].str();
    }
    return s + ">";
  }

 private:
  std::vector<Scalar> ambient_values() const {
    if (kind_ == Kind::CyclicQuadratic) return {generators_[0]};
    return std::vector<Scalar>(primes_.begin(), primes_.end());
  }

  std::optional<IntVector> prime_vector(const Rational& q) const {
    IntVector v(primes_.size(), 0);
    for (auto& [p, e] : prime_exponents(q)) {
      auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
      if (it == primes_.end() || *it != p) return std::nullopt;
      v[static_cast<std::size_t>(it - primes_.begin())] = e;
    }
    return v;
  }

  Integer cyclic_log(const Scalar& x) const {
    const Scalar& g = generators_[0];
    if (!x.is_rational() && x.radicand() != g.radicand()) {
      fail(ErrorKind::NotMember, x.str() + " lies outside the field of " + g.str());
    }
    const bool flip = g < Scalar(1);
    const Scalar base = flip ? g.inverse() : g;
    Scalar y = x;
    Integer k = 0;
    while (y >= base) {
      y /= base;
      ++k;
    }
    while (y < Scalar(1)) {
      y *= base;
      --k;
    }
    if (y != Scalar(1)) fail(ErrorKind::NotMember, x.str() + " is not a power of " + g.str());
    return flip ? Integer(-k) : k;
  }

  Kind kind_ = Kind::RationalGens;
  std::vector<Scalar> generators_;
  std::vector<Integer> primes_;
  Lattice lattice_;
};

// ---------------------------------------------------------------------------
// Characters.

/// c_l*chi_l + c_r*chi_r (slope flavor, chi = ln sigma) or
/// c_l*tau_l + c_r*tau_r (translation flavor). Flavors never mix.
struct CharacterSpec {
  enum class Flavor { Slope, Translation };
  Flavor flavor = Flavor::Slope;
  Rational c_left = 1;
  Rational c_right = 0;

  static CharacterSpec chi_l() { return {Flavor::Slope, 1, 0}; }
  static CharacterSpec chi_r() { return {Flavor::Slope, 0, 1}; }
  static CharacterSpec tau_l() { return {Flavor::Translation, 1, 0}; }
  static CharacterSpec tau_r() { return {Flavor::Translation, 0, 1}; }
  static CharacterSpec slope(Rational cl, Rational cr) {
    return {Flavor::Slope, std::move(cl), std::move(cr)};
  }
  static CharacterSpec translation(Rational cl, Rational cr) {
    return {Flavor::Translation, std::move(cl), std::move(cr)};
  }

  bool is_zero() const { return c_left == 0 && c_right == 0; }

  CharacterSpec scaled(const Rational& k) const { return {flavor, c_left * k, c_right * k}; }

  std::string str() const {
    const bool slope_flavor = flavor == Flavor::Slope;
    if (c_left == 1 && c_right == 0) return slope_flavor ? "chi_l" : "tau_l";
    if (c_left == 0 && c_right == 1) return slope_flavor ? "chi_r" : "tau_r";
    return std::string(slope_flavor ? "slope(" : "translation(") + c_left.str() + "," +
           c_right.str() + ")";
  }

  /// Accepts chi_l, chi_r, tau_l, tau_r, slope(cl,cr) and translation(cl,cr).
  static CharacterSpec parse(std::string_view text) {
    std::string s = detail::trim(text);
    if (s == "chi_l") return chi_l();
    if (s == "chi_r") return chi_r();
    if (s == "tau_l") return tau_l();
    if (s == "tau_r") return tau_r();
    if ((s.find("chi") != std::string::npos || s.find("slope") != std::string::npos) &&
        (s.find("tau") != std::string::npos || s.find("translation") != std::string::npos)) {
      fail(ErrorKind::Unsupported, "characters mixing slope and translation flavors are unsupported");
    }
    for (auto [prefix, fl] : {std::pair{std::string("slope("), Flavor::Slope},
                              std::pair{std::string("translation("), Flavor::Translation}}) {
      if (s.rfind(prefix, 0) != 0 || s.back() != ')') continue;
      std::string inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      auto comma = inner.find(',');
      if (comma == std::string::npos) break;
      return {fl, detail::parse_rational(inner.substr(0, comma)),
              detail::parse_rational(inner.substr(comma + 1))};
    }
    fail(ErrorKind::InvalidInput, "unrecognized character '" + s + "'");
  }

  friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;
};

/// Exact sign of the character on an element with the given germ data.
inline int char_sign(const CharacterSpec& spec, const GermData& data) {
  if (spec.flavor == CharacterSpec::Flavor::Slope) {
    Integer l = detail::lcm_of_denominators({spec.c_left, spec.c_right});
    Integer el = numerator(spec.c_left * Rational(l));
    Integer er = numerator(spec.c_right * Rational(l));
    Scalar v = data.sigma_left().pow(el) * data.sigma_right().pow(er);
    return v > Scalar(1) ? 1 : (v < Scalar(1) ? -1 : 0);
  }
  Scalar total(0);
  auto amplitude = [](const AffineGerm& g, const char* name) {
    auto t = g.translation_amplitude();
    if (!t) fail(ErrorKind::InvalidInput, std::string(name) + " germ is not a translation");
    return *t;
  };
  if (spec.c_left != 0) total += Scalar(spec.c_left) * amplitude(data.lambda, "left");
  if (spec.c_right != 0) total += Scalar(spec.c_right) * amplitude(data.rho, "right");
  return total.sign();
}

/// Slope character as a rational exponent vector over P's ambient basis.
inline std::vector<Rational> char_exponents(const CharacterSpec& spec, const GermData& data,
                                            const SlopeGroup& p) {
  if (spec.flavor != CharacterSpec::Flavor::Slope) {
    fail(ErrorKind::Unsupported, "exponent vectors exist only for slope characters");
  }
  std::vector<Rational> acc(p.ambient_dim(), Rational(0));
  if (spec.c_left != 0) acc = detail::add_scaled(acc, p.raw_exponents(data.sigma_left()), spec.c_left);
  if (spec.c_right != 0) {
    acc = detail::add_scaled(acc, p.raw_exponents(data.sigma_right()), spec.c_right);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Independence and units.

/// True iff no non-trivial integer-exponent product of xs equals 1.
inline bool multiplicatively_independent(const std::vector<Rational>& xs) {
  for (auto& x : xs) {
    if (x <= 0) fail(ErrorKind::InvalidInput, "multiplicative independence needs positive rationals");
    if (x == 1) return false;
  }
  auto p = SlopeGroup::rational(xs);
  return p.lattice().rank() == xs.size();
}

struct UnitsReport {
  bool trivial = false;
  std::string certificate;
};

/// Units of ln P for a group P of positive rationals. Every subgroup of the
/// positive rationals is free abelian on a set of primes-exponent vectors, so
/// s*ln P = ln P forces s = +-1 once P is non-trivial; no search is performed.
inline UnitsReport units_trivial(const SlopeGroup& p) {
  if (p.kind() != SlopeGroup::Kind::RationalGens) {
    fail(ErrorKind::Unsupported, "units are decided only for groups of rationals");
  }
  if (p.is_trivial()) {
    return {false, "P is trivial: ln P = 0 and every non-zero real is a unit"};
  }
  return {true, "U(ln " + p.str() + ") = {1,-1}: ln P is a non-zero subgroup of the free abelian "
                "group ln Q>0 of rank " + std::to_string(p.lattice().rank()) +
                " spanned by logarithms of primes, and no real s != +-1 preserves it"};
}

struct Lemma75Result {
  enum class Verdict { DistinctForAllU, Inapplicable };
  Verdict verdict = Verdict::Inapplicable;
  std::optional<Integer> prime;
  std::size_t rank1 = 0;
  std::string reason;

  std::string verdict_str() const {
    return verdict == Verdict::DistinctForAllU ? "distinct_for_all_u" : "inapplicable";
  }
};

namespace detail {

// Primes with a non-zero exponent somewhere in P's lattice.
inline std::vector<Integer> lattice_support(const SlopeGroup& p) {
  std::vector<Integer> out;
  const auto& rows = p.lattice().rows();
  for (std::size_t j = 0; j < p.primes().size(); ++j) {
    for (auto& r : rows) {
      if (r[j] != 0) {
        out.push_back(p.primes()[j]);
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

/// One-sided criterion: ln P2 differs from u*ln P1 for every real u when a
/// prime occurs in P1 but not in P2 and ln P1 has rank at least 3.
inline Lemma75Result lemma75_distinct(const SlopeGroup& p1, const SlopeGroup& p2) {
  if (p1.kind() != SlopeGroup::Kind::RationalGens || p2.kind() != SlopeGroup::Kind::RationalGens) {
    fail(ErrorKind::Unsupported, "the prime-support criterion needs groups of rationals");
  }
  Lemma75Result out;
  out.rank1 = p1.lattice().rank();
  auto s1 = detail::lattice_support(p1);
  auto s2 = detail::lattice_support(p2);
  for (auto& q : s1) {
    if (!std::binary_search(s2.begin(), s2.end(), q)) {
      out.prime = q;
      break;
    }
  }
  if (!out.prime) {
    out.reason = "every prime of P1 also occurs in P2";
  } else if (out.rank1 < 3) {
    out.reason = "rank of ln P1 is " + std::to_string(out.rank1) + " < 3";
  } else {
    out.verdict = Lemma75Result::Verdict::DistinctForAllU;
    out.reason = "prime " + out.prime->str() + " occurs in P1 only and rank ln P1 = " +
                 std::to_string(out.rank1);
  }
  return out;
}

}  // namespace plg
