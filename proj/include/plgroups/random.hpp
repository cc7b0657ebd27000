#pragma once

// Seeded generators for randomized property checks. Only raw mt19937_64
// output is used, so a seed gives the same data on every platform.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "plgroups/group.hpp"

namespace plg::random {

using Rng = std::mt19937_64;

/// Uniform-enough integer in [0, n).
inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

/// Integer in [lo, hi].
inline long long between(Rng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// p/q with |p| <= max_num and 1 <= q <= max_den.
inline Rational rational(Rng& rng, long long max_num, long long max_den) {
  long long p = between(rng, -max_num, max_num);
  long long q = between(rng, 1, max_den);
  return Rational(p) / Rational(q);
}

/// Product of generators of P with exponents in [-max_exp, max_exp].
inline Scalar slope(Rng& rng, const SlopeGroup& P, long long max_exp) {
  Scalar s(1);
  for (auto& g : P.generators()) s = s * g.pow(between(rng, -max_exp, max_exp));
  return s;
}

/// Increasing PL homeomorphism of the line with slopes in P and at most
/// max_breaks rational breakpoints.
inline PLMap line_map(Rng& rng, const SlopeGroup& P, std::size_t max_breaks) {
  std::size_t k = static_cast<std::size_t>(below(rng, max_breaks + 1));
  std::vector<Rational> xs;
  while (xs.size() < k) {
    Rational x = rational(rng, 24, 8);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<Scalar> slopes;
  for (std::size_t i = 0; i <= k; ++i) slopes.push_back(slope(rng, P, 2));
  Scalar y(rational(rng, 12, 4));
  if (k == 0) return PLMap::affine({slopes[0], y});
  std::vector<Point> pts{{Scalar(xs[0]), y}};
  for (std::size_t i = 1; i < k; ++i) {
    y = y + slopes[i] * Scalar(xs[i] - xs[i - 1]);
    pts.push_back({Scalar(xs[i]), y});
  }
  AffineMap left{slopes[0], pts.front().y - slopes[0] * pts.front().x};
  AffineMap right{slopes[k], pts.back().y - slopes[k] * pts.back().x};
  return PLMap::from_raw(left, std::move(pts), right);
}

/// Random word of exactly the given length with no immediate cancellation.
inline Word word(Rng& rng, const FGGroup& group, std::size_t length) {
  const auto& gens = group.generators();
  Word w;
  while (w.letters.size() < length) {
    Letter l{gens[below(rng, gens.size())].name, below(rng, 2) == 0 ? 1 : -1};
    if (!w.letters.empty() && w.letters.back().name == l.name &&
        w.letters.back().exponent == -l.exponent) {
      continue;
    }
    w.letters.push_back(std::move(l));
  }
  return w;
}

/// Element given by a random word of length in [0, max_length].
inline PLMap element(Rng& rng, const FGGroup& group, std::size_t max_length) {
  return word_eval(group, word(rng, group, static_cast<std::size_t>(below(rng, max_length + 1))));
}

}  // namespace plg::random
