#pragma once

// Automorphisms induced by conjugation with a PL homeomorphism of I, and the
// invariance checks they support.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plgroups/construct.hpp"
#include "plgroups/group.hpp"

namespace plg {

/// g -> phi∘g∘phi^-1 for a homeomorphism phi preserving I.
class Automorphism {
 public:
  /// Checks that phi preserves I and that every image of a generator lies
  /// in the ambient group. An indeterminate membership answer leaves the
  /// automorphism uncertified instead of rejecting it.
  static Automorphism from_conjugator(const FGGroup& group, PLMap phi, std::string name) {
    if (!group.interval().preserved_by(phi)) {
      fail(ErrorKind::InvalidInput, "conjugator does not preserve " + group.interval().str());
    }
    Automorphism a;
    a.name_ = std::move(name);
    a.phi_inverse_ = invert(phi);
    a.phi_ = std::move(phi);
    a.structurally_involutive_ = compose(a.phi_, a.phi_).is_identity();
    for (auto& g : group.generators()) {
      auto m = membership(group, a(g.map));
      if (m.verdict == Verdict::No) {
        fail(ErrorKind::NotMember, a.name_ + "(" + g.name + ") leaves the group: " + m.reason);
      }
      if (m.verdict == Verdict::Indeterminate) {
        a.certified_ = false;
        a.note_ = a.name_ + "(" + g.name + "): " + m.reason;
      }
    }
    return a;
  }

  static Automorphism identity(const FGGroup& group) {
    return from_conjugator(group, PLMap(), "identity");
  }
  static Automorphism reflection(const FGGroup& group) {
    return from_conjugator(group, construct::reflection(group.interval()), "reflection");
  }
  /// Conjugation by t -> p*t.
  static Automorphism homothety(const FGGroup& group, const Scalar& p) {
    return from_conjugator(group, construct::homothety(p), "homothety(" + p.str() + ")");
  }

  PLMap operator()(const PLMap& g) const { return compose(compose(phi_, g), phi_inverse_); }

  const PLMap& conjugator() const { return phi_; }
  const std::string& name() const { return name_; }
  bool increasing() const { return phi_.increasing(); }
  bool certified() const { return certified_; }
  const std::string& note() const { return note_; }

  /// alpha∘alpha = id, known from phi∘phi = id or checked on a ball.
  bool order_two() const { return structurally_involutive_ || verified_radius_.has_value(); }
  bool structurally_involutive() const { return structurally_involutive_; }
  std::optional<std::size_t> verified_radius() const { return verified_radius_; }

  /// Verifies alpha(alpha(g)) = g on ball(group, radius); records success.
  bool verify_order_two(const FGGroup& group, std::size_t radius,
                        std::size_t budget = kDefaultBudget) {
    if (structurally_involutive_) return true;
    for (auto& g : ball(group, radius, budget).elements) {
      if (!((*this)((*this)(g)) == g)) return false;
    }
    verified_radius_ = radius;
    return true;
  }

 private:
  Automorphism() = default;
  std::string name_;
  PLMap phi_;
  PLMap phi_inverse_;
  bool certified_ = true;
  bool structurally_involutive_ = false;
  std::optional<std::size_t> verified_radius_;
  std::string note_;
};

struct BallCheck {
  std::string property;
  std::size_t radius = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::optional<std::string> first_failure;  // shortlex word of the first failing element
  bool holds() const { return checked == passed; }
};

/// psi(alpha(g)) = psi(g) on every element of ball(G, r).
inline BallCheck psi_invariance(const FGGroup& group, const Automorphism& alpha, std::size_t radius,
                                std::size_t budget = kDefaultBudget) {
  BallCheck out{"psi(alpha(g)) = psi(g)", radius, 0, 0, {}};
  Ball b = ball(group, radius, budget);
  for (std::size_t i = 0; i < b.size(); ++i) {
    ++out.checked;
    if (psi(group, alpha(b.elements[i])) == psi(group, b.elements[i])) {
      ++out.passed;
    } else if (!out.first_failure) {
      out.first_failure = b.words[i].str();
    }
  }
  return out;
}

/// For decreasing alpha: sigma_r(alpha(g)) = sigma_l(g) and
/// sigma_l(alpha(g)) = sigma_r(g) on ball(G, r).
inline BallCheck decreasing_swap_check(const FGGroup& group, const Automorphism& alpha,
                                       std::size_t radius, std::size_t budget = kDefaultBudget) {
  if (alpha.increasing()) fail(ErrorKind::InvalidInput, "the swap identity needs a decreasing automorphism");
  BallCheck out{"sigma_r(alpha(g)) = sigma_l(g) and sigma_l(alpha(g)) = sigma_r(g)", radius, 0, 0, {}};
  Ball b = ball(group, radius, budget);
  for (std::size_t i = 0; i < b.size(); ++i) {
    ++out.checked;
    auto g = group.germs(b.elements[i]);
    auto ag = group.germs(alpha(b.elements[i]));
    if (ag.sigma_right() == g.sigma_left() && ag.sigma_left() == g.sigma_right()) {
      ++out.passed;
    } else if (!out.first_failure) {
      out.first_failure = b.words[i].str();
    }
  }
  return out;
}

/// eta = sum of chi_i∘alpha_i for slope characters chi_i.
class OrbitSumCharacter {
 public:
  OrbitSumCharacter(std::vector<std::pair<CharacterSpec, Automorphism>> terms)  // NOLINT
      : terms_(std::move(terms)) {
    for (auto& [chi, alpha] : terms_) {
      if (chi.flavor != CharacterSpec::Flavor::Slope) {
        fail(ErrorKind::Unsupported, "orbit sums are formed from slope characters only");
      }
    }
  }

  /// eta(g) as a rational exponent vector over P's ambient basis.
  std::vector<Rational> evaluate(const FGGroup& group, const PLMap& g) const {
    std::vector<Rational> acc(group.slopes().ambient_dim(), Rational(0));
    for (auto& [chi, alpha] : terms_) {
      auto v = char_exponents(chi, group.germs(alpha(g)), group.slopes());
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
    }
    return acc;
  }

  int sign(const FGGroup& group, const PLMap& g) const {
    return group.slopes().log_sign(evaluate(group, g));
  }

  /// eta as c_l*chi_l + c_r*chi_r: increasing conjugators fix both endpoint
  /// slopes, decreasing ones swap them.
  CharacterSpec as_combination() const {
    Rational cl = 0, cr = 0;
    for (auto& [chi, alpha] : terms_) {
      if (alpha.increasing()) {
        cl += chi.c_left;
        cr += chi.c_right;
      } else {
        cl += chi.c_right;
        cr += chi.c_left;
      }
    }
    return CharacterSpec::slope(cl, cr);
  }

 private:
  std::vector<std::pair<CharacterSpec, Automorphism>> terms_;
};

}  // namespace plg
