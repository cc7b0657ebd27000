#pragma once

// Relator checks for pairs (f, g) that generate Thompson's group F.
//
// With h = f∘g and ^{u}v = u∘v∘u^{-1}, disjointness of supp g from the
// supports of ^{h}f and ^{h^2}f yields the two chains
//   ^{h∘h}f   = ^{f}(^{g∘h}f)   = ^{f}(^{h}f)   = ^{f∘h}f
//   ^{h∘h^2}f = ^{f}(^{g∘h^2}f) = ^{f}(^{h^2}f) = ^{f∘h^2}f
// and the presentation <x, x1 | ^{x^2}x1 = ^{x1 x}x1, ^{x^3}x1 = ^{x1 x^2}x1>
// of F holds under x -> h, x1 -> f.

#include <string>
#include <vector>

#include "plgroups/plmap.hpp"

namespace plg {

struct NamedCheck {
  std::string name;
  bool holds = false;
};

struct FRelationsReport {
  std::vector<NamedCheck> checks;
  bool all_hold() const {
    for (auto& c : checks) {
      if (!c.holds) return false;
    }
    return !checks.empty();
  }
};

inline FRelationsReport verify_f_relations(const PLMap& f, const PLMap& g) {
  FRelationsReport report;
  auto add = [&](std::string name, bool holds) {
    report.checks.push_back({std::move(name), holds});
  };
  const PLMap h = compose(f, g);
  const PLMap h2 = compose(h, h);
  const PLMap h3 = compose(h2, h);

  const PLMap hf = conjugate(h, f);
  const PLMap h2f = conjugate(h2, f);
  add("g commutes with ^{h}f", compose(g, hf) == compose(hf, g));
  add("g commutes with ^{h^2}f", compose(g, h2f) == compose(h2f, g));

  // First chain.
  const PLMap c1a = conjugate(compose(h, h), f);
  const PLMap c1b = conjugate(f, conjugate(compose(g, h), f));
  const PLMap c1c = conjugate(f, hf);
  const PLMap c1d = conjugate(compose(f, h), f);
  add("^{h∘h}f = ^{f}(^{g∘h}f)", c1a == c1b);
  add("^{f}(^{g∘h}f) = ^{f}(^{h}f)", c1b == c1c);
  add("^{f}(^{h}f) = ^{f∘h}f", c1c == c1d);

  // Second chain.
  const PLMap c2a = conjugate(compose(h, h2), f);
  const PLMap c2b = conjugate(f, conjugate(compose(g, h2), f));
  const PLMap c2c = conjugate(f, h2f);
  const PLMap c2d = conjugate(compose(f, h2), f);
  add("^{h∘h^2}f = ^{f}(^{g∘h^2}f)", c2a == c2b);
  add("^{f}(^{g∘h^2}f) = ^{f}(^{h^2}f)", c2b == c2c);
  add("^{f}(^{h^2}f) = ^{f∘h^2}f", c2c == c2d);

  // Presentation relations under x -> h, x1 -> f.
  add("^{x^2}x1 = ^{x1 x}x1", conjugate(h2, f) == conjugate(compose(f, h), f));
  add("^{x^3}x1 = ^{x1 x^2}x1", conjugate(h3, f) == conjugate(compose(f, h2), f));

  add("f and g do not commute", !(compose(f, g) == compose(g, f)));
  return report;
}

}  // namespace plg
