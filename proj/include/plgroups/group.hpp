#pragma once

// Finitely generated subgroups of G(I;A,P): words, balls, membership in the
// ambient group, fixed points, character images and germ constraints.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plgroups/error.hpp"
#include "plgroups/lattice.hpp"
#include "plgroups/plmap.hpp"
#include "plgroups/slopegroup.hpp"

namespace plg {

/// The additive group A of admissible breakpoints.
class ModuleSpec {
 public:
  enum class Kind { DyadicLike, QuadraticRing, Rationals, Unchecked };

  static ModuleSpec dyadic_like(long long n) {
    if (n < 2) fail(ErrorKind::InvalidInput, "Z[1/n] needs n >= 2");
    return ModuleSpec(Kind::DyadicLike, n);
  }
  static ModuleSpec quadratic_ring(std::uint32_t d) {
    if (d < 2 || !detail::is_squarefree(d)) {
      fail(ErrorKind::InvalidInput, "Z[sqrt d] needs a square-free d > 1");
    }
    return ModuleSpec(Kind::QuadraticRing, d);
  }
  static ModuleSpec rationals() { return ModuleSpec(Kind::Rationals, 0); }
  static ModuleSpec unchecked() { return ModuleSpec(Kind::Unchecked, 0); }

  /// "Z[1/n]", "Z[sqrt d]", "Q" or "unchecked".
  static ModuleSpec parse(std::string_view text) {
    std::string s = detail::trim(text);
    if (s == "Q") return rationals();
    if (s == "unchecked") return unchecked();
    if (s.rfind("Z[1/", 0) == 0 && s.back() == ']') {
      return dyadic_like(detail::parse_integer(s.substr(4, s.size() - 5)).convert_to<long long>());
    }
    if (s.rfind("Z[sqrt", 0) == 0 && s.back() == ']') {
      std::string digits = s.substr(6, s.size() - 7);
      if (!digits.empty() && digits.front() == '(') digits = digits.substr(1, digits.size() - 2);
      return quadratic_ring(detail::parse_integer(digits).convert_to<std::uint32_t>());
    }
    fail(ErrorKind::InvalidInput, "unrecognized module '" + s + "'");
  }

  Kind kind() const { return kind_; }
  long long parameter() const { return param_; }

  /// Membership of x in A; nullopt when the module is unchecked.
  std::optional<bool> contains(const Scalar& x) const {
    switch (kind_) {
      case Kind::Rationals:
        return x.is_rational();
      case Kind::DyadicLike: {
        if (!x.is_rational()) return false;
        Integer den = denominator(x.as_rational());
        Integer g;
        while ((g = boost::multiprecision::gcd(den, Integer(param_))) > 1) den /= g;
        return den == 1;
      }
      case Kind::QuadraticRing: {
        if (!x.is_rational() && x.radicand() != static_cast<std::uint32_t>(param_)) return false;
        return denominator(x.rational_part()) == 1 && denominator(x.irrational_part()) == 1;
      }
      case Kind::Unchecked:
        return std::nullopt;
    }
    return std::nullopt;
  }

  /// True when s*A = A: multiplication by s and by 1/s keep A inside itself.
  std::optional<bool> stable_under(const Scalar& s) const {
    if (kind_ == Kind::Unchecked) return std::nullopt;
    if (kind_ == Kind::QuadraticRing) return *contains(s) && *contains(s.inverse());
    return contains(s).value() && contains(s.inverse()).value();
  }

  std::string str() const {
    switch (kind_) {
      case Kind::DyadicLike:
        return "Z[1/" + std::to_string(param_) + "]";
      case Kind::QuadraticRing:
        return "Z[sqrt" + std::to_string(param_) + "]";
      case Kind::Rationals:
        return "Q";
      case Kind::Unchecked:
        return "unchecked";
    }
    return "?";
  }

  /// Description of IP*A where known.
  std::string ip_a_description() const {
    if (kind_ == Kind::DyadicLike) {
      return "(" + std::to_string(param_ - 1) + ")*Z[1/" + std::to_string(param_) +
             "] when P = <" + std::to_string(param_) + ">";
    }
    return "unknown";
  }

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;

 private:
  ModuleSpec(Kind kind, long long param) : kind_(kind), param_(param) {}
  Kind kind_ = Kind::Rationals;
  long long param_ = 0;
};

struct NamedMap {
  std::string name;
  PLMap map;
};

/// Subgroup of G(I;A,P) generated by named maps.
class FGGroup {
 public:
  FGGroup(Interval interval, SlopeGroup slopes, ModuleSpec module, std::vector<NamedMap> generators)
      : interval_(std::move(interval)),
        slopes_(std::move(slopes)),
        module_(std::move(module)),
        generators_(std::move(generators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto& g = generators_[i];
      if (g.name.empty()) fail(ErrorKind::InvalidInput, "generator names must be non-empty");
      for (std::size_t j = 0; j < i; ++j) {
        if (generators_[j].name == g.name) fail(ErrorKind::InvalidInput, "duplicate generator " + g.name);
      }
      if (!g.map.increasing()) fail(ErrorKind::InvalidInput, "generator " + g.name + " reverses orientation");
      if (!interval_.supports(g.map)) {
        fail(ErrorKind::InvalidInput, "generator " + g.name + " is not supported in " + interval_.str());
      }
    }
  }

  const Interval& interval() const { return interval_; }
  const SlopeGroup& slopes() const { return slopes_; }
  const ModuleSpec& module() const { return module_; }
  const std::vector<NamedMap>& generators() const { return generators_; }

  const PLMap& generator(const std::string& name) const {
    for (auto& g : generators_) {
      if (g.name == name) return g.map;
    }
    fail(ErrorKind::InvalidInput, "unknown generator '" + name + "'");
  }

  /// Germ data of an element of G(I;A,P); the support is not re-checked.
  GermData germs(const PLMap& g) const { return germ_data_unchecked(g, interval_); }

 private:
  Interval interval_;
  SlopeGroup slopes_;
  ModuleSpec module_;
  std::vector<NamedMap> generators_;
};

// ---------------------------------------------------------------------------
// Words.

struct Letter {
  std::string name;
  int exponent = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }

  /// Letters separated by blanks or '*'; "x^-1" inverts, "x^k" repeats, and
  /// "" or "1" is the empty word.
  static Word parse(std::string_view text) {
    Word w;
    std::string s = detail::trim(text);
    if (s.empty() || s == "1" || s == "e") return w;
    for (char& c : s) {
      if (c == '*') c = ' ';
    }
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && s[i] == ' ') ++i;
      if (i == s.size()) break;
      std::size_t j = s.find(' ', i);
      std::string tok = s.substr(i, j == std::string::npos ? std::string::npos : j - i);
      i = j == std::string::npos ? s.size() : j;
      long long power = 1;
      auto caret = tok.find('^');
      if (caret != std::string::npos) {
        power = detail::parse_integer(tok.substr(caret + 1)).convert_to<long long>();
        tok = tok.substr(0, caret);
      }
      if (tok.empty()) fail(ErrorKind::InvalidInput, "empty generator name in word");
      int sign = power < 0 ? -1 : 1;
      for (long long k = 0; k < (power < 0 ? -power : power); ++k) w.letters.push_back({tok, sign});
    }
    return w;
  }

  std::string str() const {
    if (letters.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (i) s += " ";
      s += letters[i].name;
      if (letters[i].exponent < 0) s += "^-1";
    }
    return s;
  }

  friend bool operator==(const Word&, const Word&) = default;
};

/// x1∘x2∘...∘xk for the word x1 x2 ... xk.
inline PLMap word_eval(const FGGroup& group, const Word& word) {
  PLMap result;
  for (auto& letter : word.letters) {
    const PLMap& g = group.generator(letter.name);
    result = compose(result, letter.exponent > 0 ? g : invert(g));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Balls.

inline constexpr std::size_t kDefaultBudget = 200000;

/// All elements of word length <= radius, in shortlex order of their least
/// words (generators ordered as declared, each followed by its inverse).
struct Ball {
  std::size_t radius = 0;
  std::vector<Letter> alphabet;
  std::vector<PLMap> elements;
  std::vector<Word> words;
  std::vector<std::size_t> lengths;
  /// neighbors[v][k] = index of elements[v]∘alphabet[k], or npos outside the ball.
  std::vector<std::vector<std::size_t>> neighbors;
  std::unordered_map<PLMap, std::size_t, PLMapHash> index;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t size() const { return elements.size(); }

  std::optional<std::size_t> find(const PLMap& g) const {
    auto it = index.find(g);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  /// Number of elements of length <= r.
  std::size_t count_within(std::size_t r) const {
    return static_cast<std::size_t>(
        std::upper_bound(lengths.begin(), lengths.end(), r) - lengths.begin());
  }
};

/// With edges == false the outermost layer is not expanded and its entries in
/// `neighbors` stay npos.
inline Ball ball(const FGGroup& group, std::size_t radius, std::size_t budget = kDefaultBudget,
                 bool edges = false) {
  Ball b;
  b.radius = radius;
  std::vector<PLMap> letters;
  for (auto& g : group.generators()) {
    b.alphabet.push_back({g.name, 1});
    letters.push_back(g.map);
    b.alphabet.push_back({g.name, -1});
    letters.push_back(invert(g.map));
  }
  auto add = [&](PLMap g, Word w, std::size_t len) {
    if (b.elements.size() >= budget) {
      fail(ErrorKind::BudgetExceeded, "ball budget of " + std::to_string(budget) +
                                          " elements exceeded at radius " + std::to_string(len) +
                                          " with " + std::to_string(b.elements.size()) +
                                          " elements enumerated");
    }
    b.index.emplace(g, b.elements.size());
    b.elements.push_back(std::move(g));
    b.words.push_back(std::move(w));
    b.lengths.push_back(len);
    b.neighbors.emplace_back(letters.size(), Ball::npos);
  };
  add(PLMap(), Word{}, 0);
  std::size_t layer_begin = 0;
  for (std::size_t len = 0; len <= radius; ++len) {
    if (len == radius && !edges) break;
    const std::size_t layer_end = b.elements.size();
    for (std::size_t v = layer_begin; v < layer_end; ++v) {
      for (std::size_t k = 0; k < letters.size(); ++k) {
        PLMap next = compose(b.elements[v], letters[k]);
        auto it = b.index.find(next);
        if (it != b.index.end()) {
          b.neighbors[v][k] = it->second;
        } else if (len < radius) {
          Word w = b.words[v];
          w.letters.push_back(b.alphabet[k]);
          std::size_t id = b.elements.size();
          add(std::move(next), std::move(w), len + 1);
          b.neighbors[v][k] = id;
        }
      }
    }
    layer_begin = layer_end;
  }
  return b;
}

// ---------------------------------------------------------------------------
// Membership in the ambient group G(I;A,P).

enum class Verdict { Yes, No, Indeterminate };

inline std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

struct MembershipResult {
  Verdict verdict = Verdict::Indeterminate;
  std::string reason;
  /// Derivation of "g maps A onto A" when the verdict is Yes.
  std::string certificate;
  bool member() const { return verdict == Verdict::Yes; }
};

inline MembershipResult membership(const FGGroup& group, const PLMap& g) {
  MembershipResult out;
  auto no = [&](std::string why) {
    out.verdict = Verdict::No;
    out.reason = std::move(why);
    return out;
  };
  if (!g.increasing()) return no("g reverses orientation");
  if (!group.interval().supports(g)) return no("support of g is not inside " + group.interval().str());
  for (auto& s : g.slopes()) {
    if (!group.slopes().contains(s)) return no("slope " + s.str() + " is not in " + group.slopes().str());
  }
  if (group.module().kind() == ModuleSpec::Kind::Unchecked) {
    out.reason = "slopes lie in P, but breakpoints cannot be tested in an unchecked module";
    return out;
  }
  for (auto& p : g.points()) {
    if (!*group.module().contains(p.x)) return no("breakpoint " + p.x.str() + " is not in " + group.module().str());
    if (!*group.module().contains(p.y)) {
      return no("image " + p.y.str() + " of breakpoint " + p.x.str() + " is not in " + group.module().str());
    }
  }
  if (g.points().empty() && !*group.module().contains(g(Scalar(0)))) {
    return no("g(0) = " + g(Scalar(0)).str() + " is not in " + group.module().str());
  }
  for (auto& s : group.slopes().generators()) {
    if (!*group.module().stable_under(s)) {
      out.reason = "A = " + group.module().str() + " is not stable under the slope " + s.str() +
                   "; the condition g(A) = A is not certified";
      return out;
    }
  }
  out.verdict = Verdict::Yes;
  out.reason = "support, slopes, breakpoints and their images are admissible";
  out.certificate = "P*A = A and every affine piece t -> s*t + c has s in P and c in A (it passes through a point of A x A), so g(A) is in A; the same holds for g^-1, hence g(A) = A";
  return out;
}

/// True iff both germs of g relative to I are the identity.
inline bool in_bounded(const FGGroup& group, const PLMap& g) {
  auto data = germ_data(g, group.interval());
  return data.lambda.is_identity() && data.rho.is_identity();
}

// ---------------------------------------------------------------------------
// Irreducibility.

struct IrreducibleResult {
  bool irreducible = false;
  std::optional<Scalar> witness;  // common interior fixed point
};

namespace detail {

inline std::vector<ClosedPiece> intersect(const std::vector<ClosedPiece>& a,
                                          const std::vector<ClosedPiece>& b) {
  auto lower_max = [](const Endpoint& x, const Endpoint& y) -> Endpoint {
    if (!x) return y;
    if (!y) return x;
    return *x < *y ? y : x;
  };
  auto upper_min = [](const Endpoint& x, const Endpoint& y) -> Endpoint {
    if (!x) return y;
    if (!y) return x;
    return *x < *y ? x : y;
  };
  std::vector<ClosedPiece> out;
  for (auto& p : a) {
    for (auto& q : b) {
      Endpoint lo = lower_max(p.lo, q.lo);
      Endpoint hi = upper_min(p.hi, q.hi);
      if (lo && hi && *lo > *hi) continue;
      out.push_back({lo, hi});
    }
  }
  return out;
}

}  // namespace detail

/// Decides whether the generators have a common fixed point inside (0,b).
inline IrreducibleResult irreducible(const FGGroup& group) {
  if (group.interval().kind() != Interval::Kind::Compact) {
    fail(ErrorKind::Unsupported, "irreducibility is decided only on compact intervals");
  }
  const Scalar& b = group.interval().b();
  std::vector<ClosedPiece> common = {{Scalar(0), b}};
  for (auto& g : group.generators()) common = detail::intersect(common, fix_support(g.map).fixed_set);
  for (auto& c : common) {
    const Scalar& lo = *c.lo;
    const Scalar& hi = *c.hi;
    if (lo == hi && (lo == Scalar(0) || lo == b)) continue;
    return {false, lo == hi ? lo : (lo + hi) / Scalar(2)};
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Characters on generators.

inline std::vector<GermData> generator_germs(const FGGroup& group) {
  std::vector<GermData> out;
  for (auto& g : group.generators()) out.push_back(group.germs(g.map));
  return out;
}

/// Image of a slope character as (1/denominator) * lattice.
struct CharImage {
  Lattice lattice;
  Integer denominator = 1;
  std::string str() const {
    return denominator == 1 ? lattice.str() : "(1/" + denominator.str() + ")*" + lattice.str();
  }
};

inline CharImage char_image(const FGGroup& group, const CharacterSpec& spec) {
  if (spec.flavor != CharacterSpec::Flavor::Slope) {
    fail(ErrorKind::Unsupported, "images are computed for slope characters only");
  }
  std::vector<std::vector<Rational>> values;
  std::vector<Rational> all;
  for (auto& data : generator_germs(group)) {
    values.push_back(char_exponents(spec, data, group.slopes()));
    all.insert(all.end(), values.back().begin(), values.back().end());
  }
  CharImage img;
  img.denominator = detail::lcm_of_denominators(all);
  std::vector<IntVector> rows;
  for (auto& v : values) {
    IntVector row;
    for (auto& x : v) row.push_back(numerator(x * Rational(img.denominator)));
    rows.push_back(std::move(row));
  }
  img.lattice = Lattice::span(group.slopes().ambient_dim(), rows);
  return img;
}

/// True iff the character vanishes on every generator.
inline bool char_is_zero(const FGGroup& group, const CharacterSpec& spec) {
  if (spec.is_zero()) return true;
  for (auto& data : generator_germs(group)) {
    if (char_sign(spec, data) != 0) return false;
  }
  return true;
}

struct IndependenceResult {
  enum class Kind { Independent, AlmostIndependent, Neither };
  Kind kind = Kind::Neither;
  Lattice left;   // im chi_l
  Lattice right;  // im chi_r
  Lattice joint;  // im (chi_l, chi_r)
  std::optional<Integer> index;  // [left x right : joint], nullopt when infinite

  std::string kind_str() const {
    switch (kind) {
      case Kind::Independent:
        return "independent";
      case Kind::AlmostIndependent:
        return "almost_independent";
      case Kind::Neither:
        return "neither";
    }
    return "?";
  }
};

/// Compares the joint image of (chi_l, chi_r) with im chi_l x im chi_r.
inline IndependenceResult independence(const FGGroup& group) {
  const std::size_t n = group.slopes().ambient_dim();
  std::vector<IntVector> lrows, rrows, jrows;
  for (auto& data : generator_germs(group)) {
    IntVector l = group.slopes().raw_exponents(data.sigma_left());
    IntVector r = group.slopes().raw_exponents(data.sigma_right());
    IntVector j = l;
    j.insert(j.end(), r.begin(), r.end());
    lrows.push_back(std::move(l));
    rrows.push_back(std::move(r));
    jrows.push_back(std::move(j));
  }
  IndependenceResult out;
  out.left = Lattice::span(n, lrows);
  out.right = Lattice::span(n, rrows);
  out.joint = Lattice::span(2 * n, jrows);
  Lattice product = Lattice::product(out.left, out.right);
  out.index = product.index_of(out.joint);
  if (out.joint == product) {
    out.kind = IndependenceResult::Kind::Independent;
  } else if (out.index) {
    out.kind = IndependenceResult::Kind::AlmostIndependent;
  } else {
    out.kind = IndependenceResult::Kind::Neither;
  }
  return out;
}

/// psi(g) = sigma_l(g) * sigma_r(g).
inline Scalar psi(const FGGroup& group, const PLMap& g) {
  auto data = group.germs(g);
  return data.sigma_left() * data.sigma_right();
}

// ---------------------------------------------------------------------------
// Germ constraints defining subgroup families.

struct ConstraintSpec {
  enum class Kind { G1, G2, G3, Gnu, QPair, Translations };
  Kind kind = Kind::G1;
  long long m = 1;                        // Gnu: sigma_r = sigma_l^m
  std::optional<SlopeGroup> q_left;       // QPair
  std::optional<SlopeGroup> q_right;      // QPair
  std::optional<ModuleSpec> translations; // Translations: rho(g) in A0 x {1}

  static ConstraintSpec g1() { return of(Kind::G1); }
  static ConstraintSpec g2() { return of(Kind::G2); }
  static ConstraintSpec g3() { return of(Kind::G3); }
  static ConstraintSpec gnu(long long m) {
    auto c = of(Kind::Gnu);
    c.m = m;
    return c;
  }
  static ConstraintSpec qpair(SlopeGroup ql, SlopeGroup qr) {
    auto c = of(Kind::QPair);
    c.q_left = std::move(ql);
    c.q_right = std::move(qr);
    return c;
  }
  static ConstraintSpec translations_in(ModuleSpec a0) {
    auto c = of(Kind::Translations);
    c.translations = std::move(a0);
    return c;
  }

 private:
  static ConstraintSpec of(Kind k) {
    ConstraintSpec c;
    c.kind = k;
    return c;
  }
};

inline bool constraint_check(const GermData& data, const ConstraintSpec& c) {
  const Scalar& sl = data.sigma_left();
  const Scalar& sr = data.sigma_right();
  switch (c.kind) {
    case ConstraintSpec::Kind::G1:
      return sl == Scalar(1);
    case ConstraintSpec::Kind::G2:
      return sl == sr;
    case ConstraintSpec::Kind::G3:
      return sl * sr == Scalar(1);
    case ConstraintSpec::Kind::Gnu:
      return sr == sl.pow(c.m);
    case ConstraintSpec::Kind::QPair:
      return c.q_left->contains(sl) && c.q_right->contains(sr);
    case ConstraintSpec::Kind::Translations: {
      auto amp = data.rho.translation_amplitude();
      if (!amp) return false;
      auto in = c.translations->contains(*amp);
      if (!in) fail(ErrorKind::Unsupported, "translation subgroup is unchecked");
      return *in;
    }
  }
  return false;
}

inline bool constraint_check(const FGGroup& group, const PLMap& g, const ConstraintSpec& c) {
  return constraint_check(group.germs(g), c);
}

}  // namespace plg
