#pragma once

// Finitary piecewise-linear homeomorphisms of the real line.
//
// A PLMap is affine outside a bounded interval. It is stored as a left germ
// (the affine map used for t <= x_0), a strictly increasing list of
// interpolation points (x_i, y_i), and a right germ (used for t >= x_last).
// The canonical form keeps exactly the breakpoints, so equality of PLMaps is
// field-wise equality.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plgroups/error.hpp"
#include "plgroups/scalar.hpp"

namespace plg {

enum class Orientation { Increasing, Decreasing };

inline Orientation operator*(Orientation a, Orientation b) {
  return a == b ? Orientation::Increasing : Orientation::Decreasing;
}

/// t -> slope * t + intercept, slope != 0.
struct AffineMap {
  Scalar slope{1};
  Scalar intercept{0};

  static AffineMap identity() { return {}; }
  static AffineMap translation(Scalar amount) { return {Scalar(1), std::move(amount)}; }
  static AffineMap homothety(Scalar ratio) { return {std::move(ratio), Scalar(0)}; }

  Scalar operator()(const Scalar& t) const { return slope * t + intercept; }

  /// this ∘ inner
  AffineMap after(const AffineMap& inner) const {
    return {slope * inner.slope, slope * inner.intercept + intercept};
  }

  AffineMap inverse() const {
    Scalar inv = slope.inverse();
    return {inv, -intercept * inv};
  }

  bool is_identity() const { return slope == Scalar(1) && intercept == Scalar(0); }
  bool is_translation() const { return slope == Scalar(1); }

  /// Amplitude of the translation, if this is one.
  std::optional<Scalar> translation_amplitude() const {
    if (!is_translation()) return std::nullopt;
    return intercept;
  }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

using AffineGerm = AffineMap;

struct Point {
  Scalar x;
  Scalar y;
  friend bool operator==(const Point&, const Point&) = default;
};

class PLMap {
 public:
  /// The identity.
  PLMap() = default;

  /// Validates and canonicalizes raw germs and interpolation points.
  static PLMap from_raw(AffineMap left, std::vector<Point> points, AffineMap right) {
    if (left.slope.sign() == 0 || right.slope.sign() == 0) {
      fail(ErrorKind::InvalidInput, "germ slope must be non-zero");
    }
    if (left.slope.sign() != right.slope.sign()) {
      fail(ErrorKind::InvalidInput, "germ slopes of opposite sign: not monotone");
    }
    const int dir = left.slope.sign();
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (!(points[i - 1].x < points[i].x)) {
        fail(ErrorKind::InvalidInput, "x-coordinates must be strictly increasing");
      }
      if ((points[i].y - points[i - 1].y).sign() != dir) {
        fail(ErrorKind::InvalidInput, "y-coordinates are not strictly monotone");
      }
    }
    if (points.empty()) {
      if (!(left == right)) {
        fail(ErrorKind::InvalidInput, "germs differ but no interpolation point joins them");
      }
    } else {
      if (left(points.front().x) != points.front().y) {
        fail(ErrorKind::InvalidInput, "left germ is discontinuous at the first point");
      }
      if (right(points.back().x) != points.back().y) {
        fail(ErrorKind::InvalidInput, "right germ is discontinuous at the last point");
      }
    }

    PLMap f;
    f.orientation_ = dir > 0 ? Orientation::Increasing : Orientation::Decreasing;
    f.left_ = std::move(left);
    f.right_ = std::move(right);
    if (points.empty()) return f;

    // Keep a point only where the incoming and outgoing slopes differ.
    std::vector<Scalar> slopes;
    slopes.reserve(points.size() + 1);
    slopes.push_back(f.left_.slope);
    for (std::size_t i = 1; i < points.size(); ++i) {
      slopes.push_back((points[i].y - points[i - 1].y) / (points[i].x - points[i - 1].x));
    }
    slopes.push_back(f.right_.slope);
    f.points_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (slopes[i] != slopes[i + 1]) f.points_.push_back(std::move(points[i]));
    }
    if (f.points_.empty() && !(f.left_ == f.right_)) {
      fail(ErrorKind::InvalidInput, "inconsistent germs");  // unreachable with continuity
    }
    return f;
  }

  static PLMap affine(AffineMap m) {
    if (m.slope.sign() == 0) fail(ErrorKind::InvalidInput, "affine map with zero slope");
    return from_raw(m, {}, m);
  }

  /// Interpolates the points; outside them the map continues affinely with the
  /// given slopes (defaults give translations, or the identity when the
  /// extreme points are fixed). Rejects repeated x and non-monotone y.
  static PLMap interpolate(std::vector<Point> points, std::optional<Scalar> left_slope = {},
                           std::optional<Scalar> right_slope = {}) {
    if (points.empty()) fail(ErrorKind::InvalidInput, "interpolate needs at least one point");
    int dir = 1;
    if (points.size() >= 2) {
      if (!(points[0].x < points[1].x)) {
        fail(ErrorKind::InvalidInput, "interpolation x-coordinates must be strictly increasing");
      }
      dir = (points[1].y - points[0].y).sign();
      if (dir == 0) fail(ErrorKind::InvalidInput, "interpolation y-coordinates repeat");
    }
    Scalar ls = left_slope.value_or(Scalar(dir));
    Scalar rs = right_slope.value_or(Scalar(dir));
    AffineMap left{ls, points.front().y - ls * points.front().x};
    AffineMap right{rs, points.back().y - rs * points.back().x};
    return from_raw(std::move(left), std::move(points), std::move(right));
  }

  Orientation orientation() const { return orientation_; }
  bool increasing() const { return orientation_ == Orientation::Increasing; }
  const AffineMap& left_germ() const { return left_; }
  const AffineMap& right_germ() const { return right_; }
  const std::vector<Point>& points() const { return points_; }
  bool is_identity() const { return points_.empty() && left_.is_identity(); }

  Scalar operator()(const Scalar& t) const {
    if (points_.empty() || t <= points_.front().x) return left_(t);
    if (t >= points_.back().x) return right_(t);
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](const Scalar& v, const Point& p) { return v < p.x; });
    const Point& hi = *it;
    const Point& lo = *(it - 1);
    return lo.y + (hi.y - lo.y) / (hi.x - lo.x) * (t - lo.x);
  }

  /// Affine pieces in order, each with its x-range (nullopt = infinite end).
  struct Piece {
    std::optional<Scalar> lo;
    std::optional<Scalar> hi;
    AffineMap map;
  };

  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    if (points_.empty()) {
      out.push_back({std::nullopt, std::nullopt, left_});
      return out;
    }
    out.push_back({std::nullopt, points_.front().x, left_});
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const Point& a = points_[i - 1];
      const Point& b = points_[i];
      Scalar s = (b.y - a.y) / (b.x - a.x);
      out.push_back({a.x, b.x, AffineMap{s, a.y - s * a.x}});
    }
    out.push_back({points_.back().x, std::nullopt, right_});
    return out;
  }

  /// Slopes of all pieces, germs included.
  std::vector<Scalar> slopes() const {
    std::vector<Scalar> out;
    for (auto& p : pieces()) out.push_back(p.map.slope);
    return out;
  }

  /// One-sided derivative just right of t.
  Scalar slope_right_of(const Scalar& t) const {
    if (points_.empty() || t < points_.front().x) return left_.slope;
    if (t >= points_.back().x) return right_.slope;
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](const Scalar& v, const Point& p) { return v < p.x; });
    return segment_slope(*(it - 1), *it);
  }

  /// One-sided derivative just left of t.
  Scalar slope_left_of(const Scalar& t) const {
    if (points_.empty() || t <= points_.front().x) return left_.slope;
    if (t > points_.back().x) return right_.slope;
    auto it = std::lower_bound(points_.begin(), points_.end(), t,
                               [](const Point& p, const Scalar& v) { return p.x < v; });
    return segment_slope(*(it - 1), *it);
  }

  static Scalar segment_slope(const Point& a, const Point& b) { return (b.y - a.y) / (b.x - a.x); }

  friend bool operator==(const PLMap&, const PLMap&) = default;

  std::size_t hash() const {
    std::size_t h = orientation_ == Orientation::Increasing ? 1 : 2;
    h = detail::hash_combine(h, left_.slope.hash());
    h = detail::hash_combine(h, left_.intercept.hash());
    for (const Point& p : points_) {
      h = detail::hash_combine(h, p.x.hash());
      h = detail::hash_combine(h, p.y.hash());
    }
    h = detail::hash_combine(h, right_.slope.hash());
    return detail::hash_combine(h, right_.intercept.hash());
  }

 private:
  Orientation orientation_ = Orientation::Increasing;
  AffineMap left_;
  AffineMap right_;
  std::vector<Point> points_;
};

struct PLMapHash {
  std::size_t operator()(const PLMap& f) const noexcept { return f.hash(); }
};

inline PLMap invert(const PLMap& f) {
  std::vector<Point> pts;
  pts.reserve(f.points().size());
  for (const Point& p : f.points()) pts.push_back({p.y, p.x});
  if (f.increasing()) {
    return PLMap::from_raw(f.left_germ().inverse(), std::move(pts), f.right_germ().inverse());
  }
  std::reverse(pts.begin(), pts.end());
  return PLMap::from_raw(f.right_germ().inverse(), std::move(pts), f.left_germ().inverse());
}

/// compose(f, g) = f ∘ g, i.e. t -> f(g(t)).
///
/// The breakpoints of f∘g lie among those of g and the preimages under g of
/// those of f; both lists are walked once in the order of g(x).
inline PLMap compose(const PLMap& f, const PLMap& g) {
  const auto& gp = g.points();
  const auto& fp = f.points();
  const std::vector<PLMap::Piece> f_pieces = f.pieces();
  const std::vector<PLMap::Piece> g_pieces = g.pieces();
  const bool g_inc = g.increasing();
  const std::size_t m = gp.size();
  const std::size_t n = fp.size();

  // k-th f breakpoint in the order met while x increases.
  auto f_at = [&](std::size_t k) -> const Point& { return g_inc ? fp[k] : fp[n - 1 - k]; };
  // f-piece containing the y-values lying just before the k-th f breakpoint met.
  auto f_piece_before = [&](std::size_t k) -> const AffineMap& {
    return g_inc ? f_pieces[k].map : f_pieces[n - k].map;
  };
  // y1 is met before y2 as x increases.
  auto before = [&](const Scalar& y1, const Scalar& y2) { return g_inc ? y1 < y2 : y1 > y2; };

  std::vector<Point> pts;
  pts.reserve(m + n);
  std::size_t i = 0, k = 0;
  while (i < m || k < n) {
    if (k == n || (i < m && before(gp[i].y, f_at(k).x))) {
      pts.push_back({gp[i].x, f_piece_before(k)(gp[i].y)});
      ++i;
    } else if (i == m || before(f_at(k).x, gp[i].y)) {
      // Preimage of an f breakpoint inside g-piece i.
      const AffineMap& gm = g_pieces[i].map;
      pts.push_back({(f_at(k).x - gm.intercept) / gm.slope, f_at(k).y});
      ++k;
    } else {
      pts.push_back({gp[i].x, f_at(k).y});
      ++i;
      ++k;
    }
  }
  AffineMap left = (g_inc ? f.left_germ() : f.right_germ()).after(g.left_germ());
  AffineMap right = (g_inc ? f.right_germ() : f.left_germ()).after(g.right_germ());
  return PLMap::from_raw(std::move(left), std::move(pts), std::move(right));
}

inline PLMap operator*(const PLMap& f, const PLMap& g) { return compose(f, g); }

/// phi ∘ f ∘ phi^{-1}; phi may be orientation-reversing.
inline PLMap conjugate(const PLMap& phi, const PLMap& f) {
  return compose(compose(phi, f), invert(phi));
}

inline PLMap power(const PLMap& f, long long n) {
  PLMap base = n < 0 ? invert(f) : f;
  PLMap result;
  for (long long k = 0; k < (n < 0 ? -n : n); ++k) result = compose(result, base);
  return result;
}

// ---------------------------------------------------------------------------
// Fixed set and support.

/// Endpoint of an interval; nullopt stands for -inf or +inf depending on side.
using Endpoint = std::optional<Scalar>;

struct ClosedPiece {
  Endpoint lo;  // lo == hi for an isolated fixed point
  Endpoint hi;
  bool is_point() const { return lo && hi && *lo == *hi; }
  friend bool operator==(const ClosedPiece&, const ClosedPiece&) = default;
};

struct OpenInterval {
  Endpoint lo;
  Endpoint hi;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

struct FixSupportReport {
  std::vector<ClosedPiece> fixed_set;
  std::vector<OpenInterval> support_components;
  std::size_t count = 0;
};

inline FixSupportReport fix_support(const PLMap& f) {
  // Fixed set of each affine piece, then merge touching pieces.
  std::vector<ClosedPiece> raw;
  for (auto& piece : f.pieces()) {
    const AffineMap& m = piece.map;
    if (m.slope == Scalar(1)) {
      if (m.intercept == Scalar(0)) raw.push_back({piece.lo, piece.hi});
      continue;
    }
    Scalar t = m.intercept / (Scalar(1) - m.slope);
    if ((!piece.lo || *piece.lo <= t) && (!piece.hi || t <= *piece.hi)) raw.push_back({t, t});
  }
  std::vector<ClosedPiece> merged;
  for (auto& c : raw) {
    if (!merged.empty() && merged.back().hi && c.lo && *merged.back().hi >= *c.lo) {
      if (!c.hi) {
        merged.back().hi.reset();
      } else if (*c.hi > *merged.back().hi) {
        merged.back().hi = c.hi;
      }
      continue;
    }
    merged.push_back(c);
  }

  FixSupportReport report;
  report.fixed_set = merged;
  if (merged.empty()) {
    report.support_components.push_back({std::nullopt, std::nullopt});
  } else {
    if (merged.front().lo) report.support_components.push_back({std::nullopt, merged.front().lo});
    for (std::size_t i = 1; i < merged.size(); ++i) {
      report.support_components.push_back({merged[i - 1].hi, merged[i].lo});
    }
    if (merged.back().hi) report.support_components.push_back({merged.back().hi, std::nullopt});
  }
  report.count = report.support_components.size();
  return report;
}

// ---------------------------------------------------------------------------
// Intervals and endpoint germs.

class Interval {
 public:
  enum class Kind { Compact, HalfLine, Line };

  static Interval compact(Scalar b) {
    if (b.sign() <= 0) fail(ErrorKind::InvalidInput, "compact interval [0,b] needs b > 0");
    Interval i;
    i.kind_ = Kind::Compact;
    i.b_ = std::move(b);
    return i;
  }
  static Interval half_line() {
    Interval i;
    i.kind_ = Kind::HalfLine;
    return i;
  }
  static Interval line() { return Interval{}; }

  Kind kind() const { return kind_; }
  /// Right endpoint of a compact interval.
  const Scalar& b() const {
    if (kind_ != Kind::Compact) fail(ErrorKind::InvalidInput, "interval has no right endpoint");
    return b_;
  }

  /// True iff f is the identity outside the interval.
  bool supports(const PLMap& f) const {
    if (kind_ == Kind::Line) return true;
    if (!f.increasing()) return false;
    for (auto& c : fix_support(f).support_components) {
      if (!c.lo || *c.lo < Scalar(0)) return false;
      if (kind_ == Kind::Compact && (!c.hi || *c.hi > b_)) return false;
    }
    return true;
  }

  /// True iff the homeomorphism phi maps the interval onto itself.
  bool preserved_by(const PLMap& phi) const {
    switch (kind_) {
      case Kind::Line:
        return true;
      case Kind::HalfLine:
        return phi.increasing() && phi(Scalar(0)) == Scalar(0);
      case Kind::Compact:
        if (phi.increasing()) return phi(Scalar(0)) == Scalar(0) && phi(b_) == b_;
        return phi(Scalar(0)) == b_ && phi(b_) == Scalar(0);
    }
    return false;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::Compact:
        return "[0," + b_.str() + "]";
      case Kind::HalfLine:
        return "[0,inf)";
      case Kind::Line:
        return "(-inf,inf)";
    }
    return "?";
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Kind kind_ = Kind::Line;
  Scalar b_{0};
};

enum class Side { Left, Right };

namespace detail {

inline AffineGerm germ_unchecked(const PLMap& f, Side side, const Interval& interval) {
  switch (interval.kind()) {
    case Interval::Kind::Line:
      return side == Side::Left ? f.left_germ() : f.right_germ();
    case Interval::Kind::HalfLine:
      if (side == Side::Right) return f.right_germ();
      return AffineMap::homothety(f.slope_right_of(Scalar(0)));
    case Interval::Kind::Compact: {
      if (side == Side::Left) return AffineMap::homothety(f.slope_right_of(Scalar(0)));
      const Scalar& b = interval.b();
      Scalar s = f.slope_left_of(b);
      return AffineMap{s, b - s * b};
    }
  }
  return {};
}

}  // namespace detail

/// The germ homomorphisms lambda (left) and rho (right) relative to I. For a
/// compact interval [0,b] these are t -> sigma_l*t and t -> sigma_r*(t-b)+b;
/// for the half line lambda is t -> sigma_l*t.
inline AffineGerm germ(const PLMap& f, Side side, const Interval& interval) {
  if (!interval.supports(f)) {
    fail(ErrorKind::InvalidInput, "map does not preserve the interval " + interval.str());
  }
  return detail::germ_unchecked(f, side, interval);
}

/// Endpoint data of a group element: sigma values and germs.
struct GermData {
  AffineGerm lambda;
  AffineGerm rho;
  const Scalar& sigma_left() const { return lambda.slope; }
  const Scalar& sigma_right() const { return rho.slope; }
};

inline GermData germ_data(const PLMap& f, const Interval& interval) {
  if (!interval.supports(f)) {
    fail(ErrorKind::InvalidInput, "map does not preserve the interval " + interval.str());
  }
  return {detail::germ_unchecked(f, Side::Left, interval),
          detail::germ_unchecked(f, Side::Right, interval)};
}

/// germ_data without the support check, for maps known to lie in the group.
inline GermData germ_data_unchecked(const PLMap& f, const Interval& interval) {
  return {detail::germ_unchecked(f, Side::Left, interval),
          detail::germ_unchecked(f, Side::Right, interval)};
}

}  // namespace plg

template <>
struct std::hash<plg::PLMap> {
  std::size_t operator()(const plg::PLMap& f) const noexcept { return f.hash(); }
};
