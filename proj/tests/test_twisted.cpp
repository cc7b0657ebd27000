#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "plgroups/random.hpp"
#include "plgroups/suites.hpp"

using namespace plg;
using fixture::q;

namespace {

FGGroup multibump_group(int n_max) {
  std::vector<PLMap> maps;
  std::vector<std::string> names;
  for (int n = 1; n <= n_max; ++n) {
    maps.push_back(construct::multibump(n, q(0), q(1, 2)));
    names.push_back("m" + std::to_string(n));
  }
  return fixture::unit_group(maps, names, SlopeGroup::rational({2}));
}

}  // namespace

TEST(Twist, Examples) {
  FGGroup F = fixture::thompson();
  auto id = Automorphism::identity(F);
  auto beta = Automorphism::reflection(F);
  random::Rng rng(67);
  for (int i = 0; i < 50; ++i) {
    PLMap z = random::element(rng, F, 5), x = random::element(rng, F, 5);
    EXPECT_EQ(twist(z, x, id), conjugate(z, x));
    EXPECT_EQ(twist(PLMap(), x, beta), x);
    EXPECT_EQ(twist(z, PLMap(), beta), compose(z, invert(beta(z))));
  }
}

TEST(Twist, GroupAction) {
  FGGroup F = fixture::thompson();
  auto beta = Automorphism::reflection(F);
  random::Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    PLMap z1 = random::element(rng, F, 4), z2 = random::element(rng, F, 4), x = random::element(rng, F, 4);
    EXPECT_EQ(twist(z2, twist(z1, x, beta), beta), twist(compose(z2, z1), x, beta));
  }
}

TEST(Order2, IdentityHasNoComponents) {
  FGGroup F = fixture::thompson();
  EXPECT_EQ(order2_invariant(PLMap(), Automorphism::reflection(F)), 0u);
}

TEST(Order2, MultibumpCounts) {
  FGGroup G = multibump_group(10);
  auto beta = Automorphism::reflection(G);
  for (int n = 1; n <= 10; ++n) {
    EXPECT_EQ(order2_invariant(construct::multibump(n, q(0), q(1, 2)), beta), static_cast<std::size_t>(2 * n));
  }
}

TEST(Order2, SymmetricRegionCancels) {
  // The dyadic bump on (0,1) is conjugated to its inverse by the reflection.
  FGGroup F = fixture::thompson();
  EXPECT_EQ(order2_invariant(F.generator("x0"), Automorphism::reflection(F)), 0u);
}

TEST(Order2, RequiresOrderTwo) {
  FGGroup H = fixture::half_line();
  auto alpha = Automorphism::homothety(H, q(2));
  EXPECT_FALSE(alpha.order_two());
  EXPECT_THROW(order2_invariant(H.generator("a"), alpha), Error);
}

TEST(Order2, ConstantOnTwistedOrbits) {
  FGGroup G = multibump_group(3);
  auto beta = Automorphism::reflection(G);
  random::Rng rng(73);
  for (int i = 0; i < 100; ++i) {
    PLMap x = random::element(rng, G, 4), z = random::element(rng, G, 4);
    EXPECT_EQ(order2_invariant(twist(z, x, beta), beta), order2_invariant(x, beta));
  }
}

TEST(Separate, MultibumpsAreDistinct) {
  FGGroup G = multibump_group(3);
  auto beta = Automorphism::reflection(G);
  std::vector<PLMap> xs;
  for (auto& g : G.generators()) xs.push_back(g.map);
  auto rep = separate_classes(G, xs, beta);
  EXPECT_EQ(rep.certified_distinct(), 3u);
  EXPECT_TRUE(rep.selection.order2);
  EXPECT_TRUE(rep.selection.psi);
  EXPECT_FALSE(rep.selection.sigma_left);
}

TEST(Separate, SameOrbitIsInconclusive) {
  FGGroup F = fixture::thompson();
  auto beta = Automorphism::reflection(F);
  PLMap x = F.generator("x1");
  PLMap y = twist(F.generator("x0"), x, beta);
  auto rep = separate_classes(F, {x, y}, beta);
  ASSERT_EQ(rep.cells.size(), 1u);
  EXPECT_TRUE(rep.cells[0].inconclusive());
}

TEST(Separate, FallsBackToLeftSlope) {
  PLMap b2 = construct::bump(q(2), q(1)), b4 = construct::bump(q(4), q(1));
  FGGroup G = fixture::unit_group({b2, b4}, {"a", "b"}, SlopeGroup::rational({2}));
  auto rep = separate_classes(G, {b2, b4}, Automorphism::identity(G));
  EXPECT_EQ(rep.certified_distinct(), 2u);
  EXPECT_EQ(rep.cells[0].invariants[0], "1");  // psi
  EXPECT_EQ(rep.cells[0].invariants[1], "1/2");
  EXPECT_EQ(rep.cells[1].invariants[1], "1/4");
}

TEST(Homothety, TranslationAmplitudeScales) {
  FGGroup H = fixture::half_line();
  const PLMap& a = H.generator("a");
  EXPECT_EQ(*H.germs(a).rho.translation_amplitude(), q(1));
  auto a2 = Automorphism::homothety(H, q(2));
  EXPECT_EQ(*H.germs(a2(a)).rho.translation_amplitude(), q(2));
  auto a_half = Automorphism::homothety(H, q(1, 2));
  PLMap a4 = power(a, 4);
  EXPECT_EQ(*H.germs(a_half(a4)).rho.translation_amplitude(), q(2));
  for (auto p : {q(1), q(2), q(3), q(1, 2)}) {
    auto check = homothety_pullback_check(H, p, 3);
    EXPECT_TRUE(check.holds()) << p.str();
    EXPECT_EQ(check.checked, ball(H, 3).size());
  }
  EXPECT_THROW(homothety_pullback_check(H, q(5), 1), Error);
  EXPECT_THROW(homothety_pullback_check(fixture::thompson(), q(2), 1), Error);
}

TEST(Suites, OrbitSuiteHolds) {
  FGGroup F = fixture::thompson();
  for (auto alpha : {Automorphism::identity(F), Automorphism::reflection(F)}) {
    auto sel = select_invariants(F, alpha, 3);
    auto rep = twist_orbit_suite(F, alpha, sel, 99, 200);
    EXPECT_TRUE(rep.holds()) << rep.first_failure.value_or("");
    EXPECT_EQ(rep.checked, 200u);
  }
}

TEST(Suites, LineReflectionAndHomomorphism) {
  EXPECT_TRUE(line_reflection_suite(5, 100).holds());
  auto rep = homomorphism_suite(fixture::end_bumps_23(), 5, 100);
  EXPECT_TRUE(rep.holds());
  EXPECT_EQ(rep.checked, 200u);
}

TEST(Suites, Deterministic) {
  FGGroup F = fixture::thompson();
  auto beta = Automorphism::reflection(F);
  auto sel = select_invariants(F, beta, 2);
  random::Rng a(1234), b(1234);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(random::element(a, F, 6), random::element(b, F, 6));
  auto r1 = twist_orbit_suite(F, beta, sel, 8, 50), r2 = twist_orbit_suite(F, beta, sel, 8, 50);
  EXPECT_EQ(r1.passed, r2.passed);
}
