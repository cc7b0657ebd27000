#pragma once

// Finite-ball exploration of the subgraph of the Cayley graph spanned by
// G_chi = {g : chi(g) >= 0}. Component counts are evidence only; a lifting
// certificate found inside a ball proves connectivity of the whole graph.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plgroups/group.hpp"

namespace plg {

inline constexpr const char* kSigma1Caveat =
    "caveat: finite balls prove neither connectivity nor disconnectivity of the full graph; "
    "component counts are evidence, not proof; only a lifting certificate proves connectivity";

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace detail

struct ComponentReport {
  std::size_t radius = 0;
  /// Paths may use vertices up to radius + slack; slack 0 is the induced subgraph.
  std::size_t slack = 0;
  std::string character;
  std::size_t ball_size = 0;       // |ball(G, radius)|
  std::size_t vertices = 0;        // |ball(G, radius) ∩ G_chi|
  std::size_t components = 0;
  std::vector<std::size_t> sizes;  // descending, counted in ball(G, radius)
};

/// The character sign of every ball element, computed once.
inline std::vector<int> ball_signs(const FGGroup& group, const Ball& b, const CharacterSpec& spec) {
  std::vector<int> signs;
  signs.reserve(b.size());
  for (auto& g : b.elements) signs.push_back(char_sign(spec, group.germs(g)));
  return signs;
}

/// Components of ball(G, radius) ∩ G_chi, joined through edges (g, g∘x) whose
/// endpoints lie in ball(G, radius + slack) ∩ G_chi. The ball must carry
/// edges and have radius >= radius + slack.
inline ComponentReport components_in(const Ball& b, const std::vector<int>& signs,
                                     const CharacterSpec& spec, std::size_t radius,
                                     std::size_t slack) {
  const std::size_t outer = radius + slack;
  if (b.radius < outer) fail(ErrorKind::InvalidInput, "ball is too small for the requested radius");
  ComponentReport rep;
  rep.radius = radius;
  rep.slack = slack;
  rep.character = spec.str();
  const std::size_t n = b.count_within(outer);
  auto kept = [&](std::size_t v) { return v < n && signs[v] >= 0; };
  detail::UnionFind uf(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!kept(v)) continue;
    // Inverse letters give the same undirected edges seen from the other end.
    for (std::size_t w : b.neighbors[v]) {
      if (w != Ball::npos && kept(w)) uf.unite(v, w);
    }
  }
  const std::size_t inner = b.count_within(radius);
  rep.ball_size = inner;
  std::vector<std::size_t> count(n, 0);
  for (std::size_t v = 0; v < inner; ++v) {
    if (!kept(v)) continue;
    ++rep.vertices;
    ++count[uf.find(v)];
  }
  for (auto c : count) {
    if (c > 0) rep.sizes.push_back(c);
  }
  std::sort(rep.sizes.begin(), rep.sizes.end(), std::greater<>());
  rep.components = rep.sizes.size();
  return rep;
}

inline ComponentReport chi_ball_components(const FGGroup& group, const CharacterSpec& spec,
                                           std::size_t radius, std::size_t slack = 0,
                                           std::size_t budget = kDefaultBudget) {
  if (spec.flavor != CharacterSpec::Flavor::Slope) {
    fail(ErrorKind::Unsupported, "rays are sampled from slope characters only");
  }
  if (char_is_zero(group, spec)) fail(ErrorKind::InvalidInput, "character " + spec.str() + " is zero on G");
  Ball b = ball(group, radius + slack, budget, true);
  return components_in(b, ball_signs(group, b, spec), spec, radius, slack);
}

// ---------------------------------------------------------------------------
// Lifting certificates.
//
// Fix a letter t with chi(t) > 0. If for every letter y there is a path from
// t to y∘t in the Cayley graph whose vertices all have chi strictly above
// min(0, chi(y)), then any path in Gamma can be pushed up until it lies in
// G_chi, so Gamma_chi is connected. Such paths are searched for inside a
// finite ball; a found certificate proves connectivity, a missing one proves
// nothing.

struct LiftingPath {
  Letter y;
  Word word;  // t∘word = y∘t, every prefix valued above min(0, chi(y))
};

struct LiftingCertificate {
  bool found = false;
  std::size_t search_radius = 0;
  std::optional<Letter> t;
  std::vector<LiftingPath> paths;
  std::string failure;  // last obstruction met when nothing was found
};

namespace detail {

inline PLMap letter_map(const FGGroup& group, const Letter& l) {
  const PLMap& g = group.generator(l.name);
  return l.exponent > 0 ? g : invert(g);
}

inline std::string letter_str(const Letter& l) { return l.name + (l.exponent < 0 ? "^-1" : ""); }

inline std::vector<Rational> minus(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

}  // namespace detail

/// Searches ball b (built with edges) for a lifting certificate of chi.
inline LiftingCertificate find_lifting_certificate(const FGGroup& group, const Ball& b,
                                                   const CharacterSpec& chi) {
  const SlopeGroup& P = group.slopes();
  LiftingCertificate cert;
  cert.search_radius = b.radius;
  auto value = [&](const PLMap& g) { return char_exponents(chi, group.germs(g), P); };

  // Rank ball elements by exact chi value.
  std::vector<std::vector<Rational>> vals;
  vals.reserve(b.size());
  for (auto& e : b.elements) vals.push_back(value(e));
  auto less = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    return P.log_sign(detail::minus(x, y)) < 0;
  };
  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return less(vals[x], vals[y]); });
  std::vector<std::size_t> rank(b.size());
  for (std::size_t i = 0, r = 0; i < order.size(); ++i) {
    if (i > 0 && less(vals[order[i - 1]], vals[order[i]])) r = i;
    rank[order[i]] = r;
  }
  // Number of elements with value <= theta.
  auto count_at_most = [&](const std::vector<Rational>& theta) {
    auto it = std::partition_point(order.begin(), order.end(),
                                   [&](std::size_t v) { return !less(theta, vals[v]); });
    return static_cast<std::size_t>(it - order.begin());
  };

  const std::vector<Rational> zero(P.ambient_dim(), Rational(0));
  for (const Letter& t : b.alphabet) {
    const PLMap tm = detail::letter_map(group, t);
    const auto ct = value(tm);
    if (P.log_sign(ct) <= 0) continue;
    const PLMap t_inv = invert(tm);
    std::vector<LiftingPath> paths;
    bool ok = true;
    for (const Letter& y : b.alphabet) {
      const PLMap ym = detail::letter_map(group, y);
      const auto cy = value(ym);
      const auto theta = detail::minus(P.log_sign(cy) < 0 ? cy : zero, ct);
      // Keep h with chi(h) > theta, i.e. rank above every value <= theta.
      const std::size_t cut = count_at_most(theta);
      std::vector<char> keep(b.size(), 0);
      for (std::size_t i = cut; i < order.size(); ++i) keep[order[i]] = 1;
      auto target = b.find(compose(compose(t_inv, ym), tm));
      if (!target || !keep[0] || !keep[*target]) {
        ok = false;
        cert.failure = "t = " + detail::letter_str(t) + ": no admissible path for y = " + detail::letter_str(y);
        break;
      }
      // Breadth-first search from the identity, recording the letter used.
      std::vector<std::size_t> parent(b.size(), Ball::npos), via(b.size(), 0);
      std::vector<std::size_t> queue{0};
      parent[0] = 0;
      for (std::size_t qi = 0; qi < queue.size() && parent[*target] == Ball::npos; ++qi) {
        std::size_t v = queue[qi];
        for (std::size_t k = 0; k < b.alphabet.size(); ++k) {
          std::size_t w = b.neighbors[v][k];
          if (w == Ball::npos || !keep[w] || parent[w] != Ball::npos) continue;
          parent[w] = v;
          via[w] = k;
          queue.push_back(w);
        }
      }
      if (parent[*target] == Ball::npos) {
        ok = false;
        cert.failure = "t = " + detail::letter_str(t) + ": no admissible path for y = " + detail::letter_str(y);
        break;
      }
      Word w;
      for (std::size_t v = *target; v != 0; v = parent[v]) w.letters.push_back(b.alphabet[via[v]]);
      std::reverse(w.letters.begin(), w.letters.end());
      paths.push_back({y, std::move(w)});
    }
    if (ok) {
      cert.found = true;
      cert.t = t;
      cert.paths = std::move(paths);
      cert.failure.clear();
      return cert;
    }
  }
  if (cert.failure.empty()) cert.failure = "no letter with positive value";
  return cert;
}

/// Independent re-check of a certificate by direct composition.
inline bool verify_lifting_certificate(const FGGroup& group, const CharacterSpec& chi,
                                       const LiftingCertificate& cert) {
  if (!cert.found || !cert.t) return false;
  const SlopeGroup& P = group.slopes();
  auto value = [&](const PLMap& g) { return char_exponents(chi, group.germs(g), P); };
  const PLMap tm = detail::letter_map(group, *cert.t);
  if (P.log_sign(value(tm)) <= 0) return false;
  if (cert.paths.size() != 2 * group.generators().size()) return false;
  const std::vector<Rational> zero(P.ambient_dim(), Rational(0));
  for (auto& path : cert.paths) {
    const PLMap ym = detail::letter_map(group, path.y);
    const auto cy = value(ym);
    const auto floor_value = P.log_sign(cy) < 0 ? cy : zero;
    PLMap vertex = tm;
    if (P.log_sign(detail::minus(value(vertex), floor_value)) <= 0) return false;
    for (auto& l : path.word.letters) {
      vertex = compose(vertex, detail::letter_map(group, l));
      if (P.log_sign(detail::minus(value(vertex), floor_value)) <= 0) return false;
    }
    if (!(vertex == compose(ym, tm))) return false;
  }
  return true;
}

struct HypothesisCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct RayEvidence {
  CharacterSpec ray;
  std::vector<std::size_t> counts;  // induced components at radius 1..rmax
  LiftingCertificate certificate;
  std::string classification;       // evidence-complement | evidence-member | unclassified
};

struct Sigma1Options {
  std::size_t slack = 0;
  /// Radius of the ball searched for lifting certificates; 0 disables the search.
  std::size_t search_radius = 0;
  std::size_t budget = kDefaultBudget;
};

struct Sigma1Evidence {
  std::vector<HypothesisCheck> hypotheses;
  std::size_t rmax = 0;
  Sigma1Options options;
  std::vector<RayEvidence> rays;

  bool hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](auto& h) { return h.holds; });
  }
};

/// "evidence-member": one component at every radius. "evidence-complement":
/// at least two components at the last two radii, never shrinking once two
/// appear.
inline std::string classify_counts(const std::vector<std::size_t>& counts) {
  if (counts.empty()) return "unclassified";
  if (std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 1; })) {
    return "evidence-member";
  }
  const std::size_t n = counts.size();
  if (n >= 2 && counts[n - 1] >= 2 && counts[n - 2] >= 2) {
    auto first = std::find_if(counts.begin(), counts.end(), [](std::size_t c) { return c >= 2; });
    if (std::is_sorted(first, counts.end())) return "evidence-complement";
  }
  return "unclassified";
}

inline std::vector<HypothesisCheck> sigma1_hypotheses(const FGGroup& group) {
  std::vector<HypothesisCheck> out;
  if (group.interval().kind() == Interval::Kind::Compact) {
    auto irr = irreducible(group);
    out.push_back({"irreducible", irr.irreducible,
                   irr.irreducible ? "no common interior fixed point"
                                   : "common fixed point " + irr.witness->str()});
  } else {
    out.push_back({"irreducible", false, "decided only on compact intervals"});
  }
  const bool left = !char_is_zero(group, CharacterSpec::chi_l());
  const bool right = !char_is_zero(group, CharacterSpec::chi_r());
  out.push_back({"chi_l non-zero", left, ""});
  out.push_back({"chi_r non-zero", right, ""});
  auto ind = independence(group);
  out.push_back({"chi_l, chi_r almost independent",
                 ind.kind != IndependenceResult::Kind::Neither, ind.kind_str()});
  return out;
}

/// Per-ray trend of induced component counts. A ray with a lifting
/// certificate is connected at every radius; otherwise the counts decide.
inline Sigma1Evidence sigma1_evidence(const FGGroup& group, const std::vector<CharacterSpec>& rays,
                                      std::size_t rmax, Sigma1Options options = {}) {
  Sigma1Evidence ev;
  ev.rmax = rmax;
  ev.options = options;
  ev.hypotheses = sigma1_hypotheses(group);
  if (!ev.hypotheses_hold()) return ev;
  for (auto& ray : rays) {
    if (ray.flavor != CharacterSpec::Flavor::Slope) {
      fail(ErrorKind::Unsupported, "rays are sampled from slope characters only");
    }
    if (char_is_zero(group, ray)) fail(ErrorKind::InvalidInput, "character " + ray.str() + " is zero on G");
  }
  const std::size_t radius = std::max(rmax + options.slack, options.search_radius);
  Ball b = ball(group, radius, options.budget, true);
  for (auto& ray : rays) {
    RayEvidence re{ray, {}, {}, {}};
    auto signs = ball_signs(group, b, ray);
    for (std::size_t r = 1; r <= rmax; ++r) {
      re.counts.push_back(components_in(b, signs, ray, r, options.slack).components);
    }
    if (options.search_radius > 0) {
      re.certificate = find_lifting_certificate(group, b, ray);
      re.certificate.search_radius = options.search_radius;
    }
    re.classification = re.certificate.found ? "evidence-member" : classify_counts(re.counts);
    ev.rays.push_back(std::move(re));
  }
  return ev;
}

}  // namespace plg
