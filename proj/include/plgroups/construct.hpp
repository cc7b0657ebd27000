#pragma once

// Constructors for the explicit maps used throughout the library: single
// bumps, the three-generator G_s family, multi-bumps, the Thompson-F pair,
// reflections and homotheties.

#include <string>
#include <utility>
#include <vector>

#include "plgroups/error.hpp"
#include "plgroups/plmap.hpp"

namespace plg::construct {

inline PLMap translation(const Scalar& amount) {
  return PLMap::affine(AffineMap::translation(amount));
}

inline PLMap homothety(const Scalar& ratio) {
  if (ratio.sign() <= 0) fail(ErrorKind::InvalidInput, "homothety ratio must be positive");
  return PLMap::affine(AffineMap::homothety(ratio));
}

/// Reflection t -> b - t of [0,b], or t -> -t of the line. The half line
/// has no reflection.
inline PLMap reflection(const Interval& interval) {
  switch (interval.kind()) {
    case Interval::Kind::Compact:
      return PLMap::affine(AffineMap{Scalar(-1), interval.b()});
    case Interval::Kind::Line:
      return PLMap::affine(AffineMap{Scalar(-1), Scalar(0)});
    case Interval::Kind::HalfLine:
      break;
  }
  fail(ErrorKind::Unsupported, "the half line admits no reflection");
}

/// Two-piece bump on [0,b]: slope 1/s up to s*b/(s+1), slope s after it.
inline PLMap bump(const Scalar& s, const Scalar& b) {
  if (s.sign() <= 0 || s == Scalar(1)) {
    fail(ErrorKind::InvalidInput, "bump slope must be positive and != 1, got " + s.str());
  }
  if (b.sign() <= 0) fail(ErrorKind::InvalidInput, "bump needs b > 0");
  Scalar x = s * b / (s + Scalar(1));
  Scalar y = b / (s + Scalar(1));
  return PLMap::from_raw(AffineMap::identity(), {{0, 0}, {x, y}, {b, b}}, AffineMap::identity());
}

/// Conjugate of f by the translation t -> t + amount (support shifted right).
inline PLMap shifted(const PLMap& f, const Scalar& amount) {
  return conjugate(translation(amount), f);
}

/// Bump with slopes 1/2, 1, 2 on [lo,hi] with breakpoints at the half and
/// three-quarter marks; dyadic whenever lo and hi are.
inline PLMap dyadic_bump(const Scalar& lo, const Scalar& hi) {
  if (!(lo < hi)) fail(ErrorKind::InvalidInput, "dyadic_bump needs lo < hi");
  Scalar w = hi - lo;
  return PLMap::from_raw(AffineMap::identity(),
                         {{lo, lo},
                          {lo + w / Scalar(2), lo + w / Scalar(4)},
                          {lo + w * Scalar::fraction(3, 4), lo + w / Scalar(2)},
                          {hi, hi}},
                         AffineMap::identity());
}

/// n bumps with pairwise disjoint supports filling (lo,hi) in equal pieces.
inline PLMap multibump(int n, const Scalar& lo, const Scalar& hi) {
  if (n < 1) fail(ErrorKind::InvalidInput, "multibump needs n >= 1");
  if (!(lo < hi)) fail(ErrorKind::InvalidInput, "multibump needs lo < hi");
  Scalar w = (hi - lo) / Scalar(n);
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    Scalar a = lo + w * Scalar(k);
    PLMap piece = dyadic_bump(a, a + w);
    for (const Point& p : piece.points()) {
      if (!pts.empty() && pts.back().x == p.x) continue;
      pts.push_back(p);
    }
  }
  return PLMap::from_raw(AffineMap::identity(), std::move(pts), AffineMap::identity());
}

struct GsGenerators {
  PLMap f;
  PLMap g;
  PLMap h;
};

/// f = bump(s1) on [0,3/4]; g and h are bump(s2), bump(s3) on [0,3/4]
/// shifted onto [1/4,1].
inline GsGenerators gs_family(const Scalar& s1, const Scalar& s2, const Scalar& s3) {
  for (const Scalar* s : {&s1, &s2, &s3}) {
    if (!(*s > Scalar(1))) fail(ErrorKind::InvalidInput, "G_s parameters must exceed 1");
  }
  const Scalar three_quarters = Scalar::fraction(3, 4);
  const Scalar quarter = Scalar::fraction(1, 4);
  return {bump(s1, three_quarters), shifted(bump(s2, three_quarters), quarter),
          shifted(bump(s3, three_quarters), quarter)};
}

/// The G_s family with s1 = s2 = 2 and s3 >= 2.
inline GsGenerators dyadic_fgh(const Scalar& s3) {
  if (s3 < Scalar(2)) fail(ErrorKind::InvalidInput, "dyadic family needs s3 >= 2");
  return gs_family(Scalar(2), Scalar(2), s3);
}

/// Bumps bump(s_i, b1) on [0,b1] followed by bump(s'_j, b1) shifted onto
/// [b-b1, b]. Requires b/2 < b1 < b and slopes different from 1.
inline std::vector<PLMap> independent_bumps(const std::vector<Scalar>& left,
                                            const std::vector<Scalar>& right, const Scalar& b1,
                                            const Scalar& b) {
  if (!(b1 < b) || !(b < b1 + b1)) fail(ErrorKind::InvalidInput, "need b/2 < b1 < b");
  std::vector<PLMap> out;
  for (auto& s : left) out.push_back(bump(s, b1));
  for (auto& s : right) out.push_back(shifted(bump(s, b1), b - b1));
  return out;
}

/// f, g of gs_family(sl, sr, sr) joined by u = bump(sl) on [0,1/4] and
/// v = bump(sr) on [3/4,1]; returned in the order f, g, u, v.
inline std::vector<PLMap> end_bump_family(const Scalar& sl, const Scalar& sr) {
  auto fg = gs_family(sl, sr, sr);
  const Scalar quarter = Scalar::fraction(1, 4);
  const Scalar three_quarters = Scalar::fraction(3, 4);
  return {fg.f, fg.g, bump(sl, quarter), shifted(bump(sr, quarter), three_quarters)};
}

/// For each p: f_p on (0,3/4) with sigma_l = p and g_p on (1/4,1) with
/// sigma_r = p. Returned as f_p1, g_p1, f_p2, g_p2, ...
inline std::vector<PLMap> prime_pairs(const std::vector<Scalar>& ps) {
  const Scalar quarter = Scalar::fraction(1, 4);
  const Scalar three_quarters = Scalar::fraction(3, 4);
  std::vector<PLMap> out;
  for (auto& p : ps) {
    out.push_back(bump(p.inverse(), three_quarters));
    out.push_back(shifted(bump(p, three_quarters), quarter));
  }
  return out;
}

/// Maps of [0,inf) whose right germs are translations by 1: slope 2 on [0,1],
/// slope 3 on [0,1/2], and slope 2 on [1,2] after the identity.
inline std::vector<PLMap> half_line_translations() {
  const AffineMap shift = AffineMap::translation(Scalar(1));
  const Scalar half = Scalar::fraction(1, 2);
  const AffineMap id = AffineMap::identity();
  const Point origin{Scalar(0), Scalar(0)};
  return {PLMap::from_raw(id, {origin, {Scalar(1), Scalar(2)}}, shift),
          PLMap::from_raw(id, {origin, {half, Scalar::fraction(3, 2)}}, shift),
          PLMap::from_raw(id, {{Scalar(1), Scalar(1)}, {Scalar(2), Scalar(3)}}, shift)};
}

// ---------------------------------------------------------------------------
// Thompson-F generating pairs.

/// Support/ordering conditions for a pair (f, g) on [a,d]:
/// supp f = (a,c) with f(t) < t, supp g = (b,d) with g(t) < t,
/// a < b < c < d and f(g(c)) <= b.
struct PairConditions {
  bool ordered = false;
  bool f_support = false;
  bool f_below_diagonal = false;
  bool g_support = false;
  bool g_below_diagonal = false;
  bool composite_condition = false;

  bool all() const {
    return ordered && f_support && f_below_diagonal && g_support && g_below_diagonal &&
           composite_condition;
  }
};

namespace detail {

inline bool single_component(const PLMap& f, const Scalar& lo, const Scalar& hi) {
  auto rep = fix_support(f);
  return rep.count == 1 && rep.support_components[0].lo && rep.support_components[0].hi &&
         *rep.support_components[0].lo == lo && *rep.support_components[0].hi == hi;
}

}  // namespace detail

inline PairConditions check_pair_conditions(const PLMap& f, const PLMap& g, const Scalar& a,
                                            const Scalar& b, const Scalar& c,
                                            const Scalar& d) {
  PairConditions pc;
  pc.ordered = a < b && b < c && c < d;
  pc.f_support = detail::single_component(f, a, c);
  pc.g_support = detail::single_component(g, b, d);
  // On a single support component the sign of f(t) - t is constant.
  if (pc.f_support) {
    Scalar mid = (a + c) / Scalar(2);
    pc.f_below_diagonal = f(mid) < mid;
  }
  if (pc.g_support) {
    Scalar mid = (b + d) / Scalar(2);
    pc.g_below_diagonal = g(mid) < mid;
  }
  pc.composite_condition = f(g(c)) <= b;
  return pc;
}

struct Lemma72Pair {
  PLMap f;
  PLMap g;
  /// Interior nodes t0..t5 of the interpolation.
  std::vector<Scalar> nodes;
  /// True when the requested slope was realised by inverting the normalized map.
  bool f_inverted = false;
  bool g_inverted = false;
  /// Conditions checked on the normalized pair (slopes s_f < 1 < s_g).
  PairConditions conditions;
  bool slope_condition = false;
};

/// Builds f, g on [a,d] by five-point interpolation so that the pair
/// generates Thompson's group F and f'(a) = s_f, g'(d) = s_g.
///
/// Nodes t1 < b < t2 <= t3 < c < t4 may be supplied; by default
/// t1 = (a+b)/2, t3 = (b+c)/2, t2 = (b+t3)/2, t4 = (c+d)/2.
/// Slopes on the wrong side of 1 are handled by building the map for the
/// reciprocal slope and inverting it; the conditions are then reported for
/// the normalized pair, which generates the same group.
inline Lemma72Pair lemma72_pair(const Scalar& s_f, const Scalar& s_g, const Scalar& a,
                                const Scalar& b, const Scalar& c, const Scalar& d,
                                std::optional<std::vector<Scalar>> interior = std::nullopt) {
  if (s_f.sign() <= 0 || s_g.sign() <= 0 || s_f == Scalar(1) || s_g == Scalar(1)) {
    fail(ErrorKind::InvalidInput, "slopes must be positive and != 1");
  }
  if (!(a < b && b < c && c < d)) fail(ErrorKind::InvalidInput, "need a < b < c < d");
  Scalar t1, t2, t3, t4;
  if (interior) {
    if (interior->size() != 4) fail(ErrorKind::InvalidInput, "expected four interior nodes");
    t1 = (*interior)[0];
    t2 = (*interior)[1];
    t3 = (*interior)[2];
    t4 = (*interior)[3];
  } else {
    t1 = (a + b) / Scalar(2);
    t3 = (b + c) / Scalar(2);
    t2 = (b + t3) / Scalar(2);
    t4 = (c + d) / Scalar(2);
  }
  if (!(a < t1 && t1 < b && b < t2 && t2 <= t3 && t3 < c && c < t4 && t4 < d)) {
    fail(ErrorKind::InvalidInput, "interior nodes must satisfy a < t1 < b < t2 <= t3 < c < t4 < d");
  }
  Lemma72Pair out;
  out.f_inverted = s_f > Scalar(1);
  out.g_inverted = s_g < Scalar(1);
  Scalar sf = out.f_inverted ? s_f.inverse() : s_f;
  Scalar sg = out.g_inverted ? s_g.inverse() : s_g;

  Scalar t0 = a + sf * (t1 - a);   // (t0 - a)/(t1 - a) = s_f
  Scalar t5 = d - (d - t4) / sg;   // (d - t4)/(d - t5) = s_g
  PLMap f = PLMap::from_raw(AffineMap::identity(), {{a, a}, {t1, t0}, {t3, b}, {c, c}, {d, d}},
                            AffineMap::identity());
  PLMap g = PLMap::from_raw(AffineMap::identity(), {{a, a}, {b, b}, {c, t2}, {t5, t4}, {d, d}},
                            AffineMap::identity());
  out.conditions = check_pair_conditions(f, g, a, b, c, d);
  out.slope_condition = f.slope_right_of(a) == sf && g.slope_left_of(d) == sg;
  if (!out.conditions.all() || !out.slope_condition) {
    fail(ErrorKind::InvalidInput, "internal check of the interpolated pair failed");
  }
  out.f = out.f_inverted ? invert(f) : std::move(f);
  out.g = out.g_inverted ? invert(g) : std::move(g);
  out.nodes = {t0, t1, t2, t3, t4, t5};
  return out;
}

}  // namespace plg::construct
