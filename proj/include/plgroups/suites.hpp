#pragma once

// Seeded property suites over random maps and random group elements.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "plgroups/random.hpp"
#include "plgroups/twisted.hpp"

namespace plg {

struct SuiteReport {
  std::string property;
  std::uint64_t seed = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::optional<std::string> first_failure;

  bool holds() const { return checked > 0 && checked == passed; }
  void record(bool ok, const std::string& what) {
    ++checked;
    if (ok) {
      ++passed;
    } else if (!first_failure) {
      first_failure = what;
    }
  }
};

/// rho(theta∘g∘theta^-1) = theta∘lambda(g)∘theta^-1 and the mirrored identity
/// for lambda, with theta(t) = -t, on random increasing line maps.
inline SuiteReport line_reflection_suite(std::uint64_t seed, std::size_t count) {
  SuiteReport rep{"rho(theta g theta^-1) = theta lambda(g) theta^-1 on the line", seed, 0, 0, {}};
  random::Rng rng(seed);
  const SlopeGroup P = SlopeGroup::rational({2, 3});
  const Interval line = Interval::line();
  const PLMap theta = construct::reflection(line);
  const AffineMap th{Scalar(-1), Scalar(0)};
  for (std::size_t i = 0; i < count; ++i) {
    PLMap g = random::line_map(rng, P, 5);
    auto d = germ_data(g, line);
    auto c = germ_data(conjugate(theta, g), line);
    bool ok = c.rho == th.after(d.lambda).after(th) && c.lambda == th.after(d.rho).after(th);
    rep.record(ok, "sample " + std::to_string(i));
  }
  return rep;
}

/// sigma_l, sigma_r, lambda and rho are multiplicative: on random pairs of
/// line maps and on random pairs of elements of group.
inline SuiteReport homomorphism_suite(const FGGroup& group, std::uint64_t seed, std::size_t count,
                                      std::size_t max_length = 6) {
  SuiteReport rep{"lambda, rho, sigma_l, sigma_r multiplicative", seed, 0, 0, {}};
  random::Rng rng(seed);
  const SlopeGroup P = SlopeGroup::rational({2, 3});
  auto check = [&](const GermData& a, const GermData& b, const GermData& ab, const std::string& what) {
    bool ok = ab.lambda == a.lambda.after(b.lambda) && ab.rho == a.rho.after(b.rho) &&
              ab.sigma_left() == a.sigma_left() * b.sigma_left() &&
              ab.sigma_right() == a.sigma_right() * b.sigma_right();
    rep.record(ok, what);
  };
  const Interval line = Interval::line();
  for (std::size_t i = 0; i < count; ++i) {
    PLMap g = random::line_map(rng, P, 4);
    PLMap h = random::line_map(rng, P, 4);
    check(germ_data(g, line), germ_data(h, line), germ_data(compose(g, h), line),
          "line pair " + std::to_string(i));
  }
  for (std::size_t i = 0; i < count; ++i) {
    PLMap g = random::element(rng, group, max_length);
    PLMap h = random::element(rng, group, max_length);
    check(group.germs(g), group.germs(h), group.germs(compose(g, h)), "group pair " + std::to_string(i));
  }
  return rep;
}

/// Every selected invariant takes the same value on x and z∘x∘alpha(z)^-1.
inline SuiteReport twist_orbit_suite(const FGGroup& group, const Automorphism& alpha,
                                     const InvariantSelection& selection, std::uint64_t seed,
                                     std::size_t count, std::size_t max_length = 6) {
  SuiteReport rep{"invariants constant on twisted orbits under " + alpha.name(), seed, 0, 0, {}};
  random::Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    PLMap z = random::element(rng, group, max_length);
    PLMap x = random::element(rng, group, max_length);
    PLMap y = twist(z, x, alpha);
    bool ok = invariant_tuple(group, x, alpha, selection) == invariant_tuple(group, y, alpha, selection);
    rep.record(ok, "pair " + std::to_string(i));
  }
  return rep;
}

}  // namespace plg
