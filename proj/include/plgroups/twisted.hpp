#pragma once

// The twisted conjugacy action (z, x) -> z∘x∘alpha(z)^-1 and invariants that
// are constant on its orbits.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plgroups/automorphism.hpp"

namespace plg {

inline PLMap twist(const PLMap& z, const PLMap& x, const Automorphism& alpha) {
  return compose(compose(z, x), invert(alpha(z)));
}

/// Number of support components of x∘beta(x) for an automorphism of order 2.
/// For y = twist(z, x, beta) one has y∘beta(y) = z∘(x∘beta(x))∘z^-1.
inline std::size_t order2_invariant(const PLMap& x, const Automorphism& beta) {
  if (!beta.order_two()) {
    fail(ErrorKind::InvalidInput, beta.name() + " is not known to have order 2");
  }
  return fix_support(compose(x, beta(x))).count;
}

/// Which homomorphism invariants survive alpha, checked on a ball.
struct InvariantSelection {
  std::size_t radius = 0;
  bool sigma_left = false;
  bool sigma_right = false;
  bool psi = false;
  bool order2 = false;

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    if (psi) out.push_back("psi");
    if (sigma_left) out.push_back("sigma_l");
    if (sigma_right) out.push_back("sigma_r");
    if (order2) out.push_back("order2_components");
    return out;
  }
};

/// A homomorphism chi to an abelian group with chi∘alpha = chi satisfies
/// chi(z∘x∘alpha(z)^-1) = chi(x), so it separates twisted classes.
inline InvariantSelection select_invariants(const FGGroup& group, const Automorphism& alpha,
                                            std::size_t radius, std::size_t budget = kDefaultBudget) {
  InvariantSelection sel{radius, true, true, true, alpha.order_two()};
  for (auto& g : ball(group, radius, budget).elements) {
    auto d = group.germs(g);
    auto ad = group.germs(alpha(g));
    if (ad.sigma_left() != d.sigma_left()) sel.sigma_left = false;
    if (ad.sigma_right() != d.sigma_right()) sel.sigma_right = false;
    if (ad.sigma_left() * ad.sigma_right() != d.sigma_left() * d.sigma_right()) sel.psi = false;
  }
  return sel;
}

/// Invariant tuple of x in exact notation, in the order of names().
inline std::vector<std::string> invariant_tuple(const FGGroup& group, const PLMap& x,
                                                const Automorphism& alpha,
                                                const InvariantSelection& sel) {
  std::vector<std::string> out;
  auto d = group.germs(x);
  if (sel.psi) out.push_back((d.sigma_left() * d.sigma_right()).str());
  if (sel.sigma_left) out.push_back(d.sigma_left().str());
  if (sel.sigma_right) out.push_back(d.sigma_right().str());
  if (sel.order2) out.push_back(std::to_string(order2_invariant(x, alpha)));
  return out;
}

struct PartitionCell {
  std::vector<std::string> invariants;
  std::vector<std::size_t> members;  // indices into the input list
  /// Equal invariants never prove equal classes.
  bool inconclusive() const { return members.size() > 1; }
};

struct PartitionReport {
  InvariantSelection selection;
  std::vector<PartitionCell> cells;  // ordered by first member
  /// Number of cells: inputs in different cells lie in different classes.
  std::size_t certified_distinct() const { return cells.size(); }
};

inline PartitionReport separate_classes(const FGGroup& group, const std::vector<PLMap>& xs,
                                        const Automorphism& alpha, std::size_t radius = 2,
                                        std::size_t budget = kDefaultBudget) {
  PartitionReport report;
  report.selection = select_invariants(group, alpha, radius, budget);
  std::map<std::vector<std::string>, std::size_t> cell_of;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto tuple = invariant_tuple(group, xs[i], alpha, report.selection);
    auto [it, inserted] = cell_of.emplace(tuple, report.cells.size());
    if (inserted) report.cells.push_back({tuple, {}});
    report.cells[it->second].members.push_back(i);
  }
  return report;
}

/// tau_r(alpha_p(g)) = p * tau_r(g) on ball(G, r) of a half-line group,
/// where alpha_p conjugates by t -> p*t.
inline BallCheck homothety_pullback_check(const FGGroup& group, const Scalar& p, std::size_t radius,
                                          std::size_t budget = kDefaultBudget) {
  if (group.interval().kind() != Interval::Kind::HalfLine) {
    fail(ErrorKind::InvalidInput, "the pullback check runs on half-line groups");
  }
  if (p.sign() <= 0 || !group.slopes().contains(p)) {
    fail(ErrorKind::InvalidInput, p.str() + " is not in the slope group " + group.slopes().str());
  }
  Automorphism alpha = Automorphism::homothety(group, p);
  BallCheck out{"tau_r(alpha_p(g)) = p*tau_r(g)", radius, 0, 0, {}};
  Ball b = ball(group, radius, budget);
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto tau = group.germs(b.elements[i]).rho.translation_amplitude();
    auto tau_alpha = group.germs(alpha(b.elements[i])).rho.translation_amplitude();
    if (!tau || !tau_alpha) {
      fail(ErrorKind::InvalidInput, "right germ of " + b.words[i].str() + " is not a translation");
    }
    ++out.checked;
    if (*tau_alpha == p * *tau) {
      ++out.passed;
    } else if (!out.first_failure) {
      out.first_failure = b.words[i].str();
    }
  }
  return out;
}

}  // namespace plg
