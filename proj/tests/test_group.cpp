#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "oracles/grid.hpp"
#include "plgroups/io.hpp"
#include "plgroups/random.hpp"

using namespace plg;
using fixture::q;

TEST(Word, EvaluationBasics) {
  FGGroup G = fixture::dyadic_gs(2);
  EXPECT_TRUE(word_eval(G, Word::parse("")).is_identity());
  EXPECT_TRUE(word_eval(G, Word::parse("f f^-1")).is_identity());
  EXPECT_EQ(word_eval(G, Word::parse("f^3")), power(G.generator("f"), 3));
  EXPECT_EQ(Word::parse("f g^-1*h").str(), "f g^-1 h");
  EXPECT_THROW(word_eval(G, Word::parse("z")), Error);
}

TEST(Word, DyadicCompositeAgainstOracle) {
  FGGroup G = fixture::dyadic_gs(3);
  const PLMap& f = G.generator("f");
  const PLMap& h = G.generator("h");
  PLMap fh = word_eval(G, Word::parse("f h"));
  EXPECT_TRUE(oracle::agrees_with_composite(f, h, fh));
  EXPECT_TRUE(verify_f_relations(f, h).all_hold());
}

TEST(Ball, Sizes) {
  FGGroup single = fixture::single_bump();
  EXPECT_EQ(ball(single, 2).size(), 5u);
  EXPECT_EQ(ball(fixture::dyadic_gs(2), 0).size(), 1u);
  // g = h when s3 = 2, so the group is generated by two elements.
  EXPECT_EQ(fixture::dyadic_gs(2).generator("g"), fixture::dyadic_gs(2).generator("h"));
  std::vector<std::size_t> sizes;
  Ball b = ball(fixture::dyadic_gs(2), 3);
  for (std::size_t r = 0; r <= 3; ++r) sizes.push_back(b.count_within(r));
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 5, 17, 53}));
}

TEST(Ball, NestedAndShortlex) {
  FGGroup G = fixture::thompson();
  Ball b2 = ball(G, 2), b3 = ball(G, 3);
  for (std::size_t i = 0; i < b2.size(); ++i) {
    EXPECT_EQ(b3.elements[i], b2.elements[i]);
    EXPECT_EQ(b3.words[i], b2.words[i]);
  }
  for (std::size_t i = 0; i < b3.size(); ++i) {
    EXPECT_EQ(word_eval(G, b3.words[i]), b3.elements[i]);
    EXPECT_EQ(b3.words[i].length(), b3.lengths[i]);
    EXPECT_TRUE(membership(G, b3.elements[i]).member());
  }
}

TEST(Ball, BudgetIsReported) {
  try {
    ball(fixture::thompson(), 6, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
}

TEST(Ball, EdgesPointToProducts) {
  FGGroup G = fixture::end_bumps_23();
  Ball b = ball(G, 2, kDefaultBudget, true);
  for (std::size_t v = 0; v < b.size(); ++v) {
    for (std::size_t k = 0; k < b.alphabet.size(); ++k) {
      std::size_t w = b.neighbors[v][k];
      if (w == Ball::npos) continue;
      const PLMap& x = G.generator(b.alphabet[k].name);
      EXPECT_EQ(b.elements[w], compose(b.elements[v], b.alphabet[k].exponent > 0 ? x : invert(x)));
    }
  }
}

TEST(Membership, Examples) {
  FGGroup F = fixture::thompson();
  auto r = membership(F, construct::bump(q(2), q(1)));
  EXPECT_EQ(r.verdict, Verdict::No);
  EXPECT_NE(r.reason.find("2/3"), std::string::npos);
  PLMap d = PLMap::from_raw(AffineMap::identity(), {{q(0), q(0)}, {q(1, 2), q(1, 4)}, {q(3, 4), q(1, 2)}, {q(1), q(1)}},
                            AffineMap::identity());
  EXPECT_EQ(membership(F, d).verdict, Verdict::Yes);
  EXPECT_FALSE(membership(F, d).certificate.empty());
  EXPECT_EQ(membership(F, PLMap()).verdict, Verdict::Yes);
  EXPECT_EQ(membership(F, construct::bump(q(3), q(1))).verdict, Verdict::No);
  EXPECT_EQ(membership(F, construct::reflection(Interval::compact(q(1)))).verdict, Verdict::No);
}

TEST(Membership, UncheckedModuleIsIndeterminate) {
  FGGroup G(Interval::compact(q(1)), SlopeGroup::rational({2}), ModuleSpec::unchecked(),
            fixture::named({construct::dyadic_bump(q(0), q(1))}, {"x"}));
  EXPECT_EQ(membership(G, G.generator("x")).verdict, Verdict::Indeterminate);
  EXPECT_EQ(membership(G, construct::bump(q(3), q(1))).verdict, Verdict::No);
}

TEST(Membership, ModuleParsing) {
  EXPECT_EQ(ModuleSpec::parse("Z[1/6]"), ModuleSpec::dyadic_like(6));
  EXPECT_EQ(ModuleSpec::parse("Z[sqrt2]"), ModuleSpec::quadratic_ring(2));
  EXPECT_EQ(ModuleSpec::parse("Z[sqrt(3)]"), ModuleSpec::quadratic_ring(3));
  EXPECT_TRUE(*ModuleSpec::dyadic_like(6).contains(q(5, 36)));
  EXPECT_FALSE(*ModuleSpec::dyadic_like(6).contains(q(1, 5)));
  EXPECT_THROW(ModuleSpec::parse("Z[x]"), Error);
}

TEST(Bounded, Examples) {
  FGGroup F = fixture::thompson();
  EXPECT_FALSE(in_bounded(F, construct::bump(q(2), q(1))));
  EXPECT_TRUE(in_bounded(F, construct::multibump(2, q(1, 4), q(1, 2))));
  FGGroup L(Interval::line(), SlopeGroup::rational({2}), ModuleSpec::rationals(), {});
  EXPECT_FALSE(in_bounded(L, construct::translation(q(1))));
}

TEST(Irreducible, Examples) {
  EXPECT_TRUE(irreducible(fixture::dyadic_gs(2)).irreducible);
  auto half = irreducible(fixture::unit_group({construct::bump(q(2), q(1, 2))}, {"f"}, SlopeGroup::rational({2})));
  EXPECT_FALSE(half.irreducible);
  EXPECT_EQ(half.witness, q(3, 4));
  EXPECT_FALSE(irreducible(fixture::unit_group({}, {}, SlopeGroup::rational({2}))).irreducible);
  auto gap = irreducible(fixture::unit_group({construct::bump(q(2), q(1, 2)), construct::shifted(construct::bump(q(2), q(1, 4)), q(3, 4))},
                                             {"f", "g"}, SlopeGroup::rational({2})));
  EXPECT_FALSE(gap.irreducible);
  EXPECT_EQ(gap.witness, q(5, 8));
  EXPECT_THROW(irreducible(fixture::half_line()), Error);
}

TEST(Independence, Examples) {
  EXPECT_EQ(independence(fixture::independent_bumps_23()).kind_str(), "independent");
  auto single = independence(fixture::single_bump());
  EXPECT_EQ(single.kind_str(), "neither");
  EXPECT_EQ(single.joint.rank(), 1u);
  EXPECT_FALSE(single.index.has_value());
  EXPECT_EQ(independence(fixture::gnu2_group()).kind_str(), "neither");
  EXPECT_EQ(independence(fixture::thompson()).kind_str(), "independent");
  EXPECT_EQ(independence(fixture::end_bumps_23()).kind_str(), "independent");
}

TEST(Independence, AlmostIndependentIndex) {
  // Exponent pairs (-2,0), (0,2), (-1,1): joint image {(a,b) : a = b mod 2}, index 2 in Z x Z.
  PLMap u = construct::bump(q(4), q(1, 2));
  PLMap v = construct::shifted(construct::bump(q(4), q(1, 2)), q(1, 2));
  PLMap w = construct::bump(q(2), q(1));
  auto r = independence(fixture::unit_group({u, v, w}, {"u", "v", "w"}, SlopeGroup::rational({2})));
  EXPECT_EQ(r.kind_str(), "almost_independent");
  EXPECT_EQ(r.index, Integer(2));
}

TEST(Independence, StableUnderBallGenerators) {
  FGGroup G = fixture::independent_bumps_23();
  Ball b = ball(G, 2);
  std::vector<PLMap> maps(b.elements.begin() + 1, b.elements.end());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < maps.size(); ++i) names.push_back("e" + std::to_string(i));
  auto r = independence(fixture::unit_group(maps, names, SlopeGroup::rational({2, 3})));
  auto s = independence(G);
  EXPECT_EQ(r.joint, s.joint);
  EXPECT_EQ(r.kind_str(), s.kind_str());
}

TEST(CharImage, FiniteIndexLattice) {
  // Left slopes 2^5 and 2^-5: image 5*Z*ln2 inside Z*ln2.
  FGGroup G = fixture::unit_group({construct::bump(q(32), q(1, 2))}, {"f"}, SlopeGroup::rational({2}));
  auto img = char_image(G, CharacterSpec::chi_l());
  EXPECT_EQ(img.lattice.rank(), 1u);
  EXPECT_EQ(Lattice::span(1, {{Integer(1)}}).index_of(img.lattice), Integer(5));
  EXPECT_TRUE(char_is_zero(fixture::unit_group({construct::multibump(2, q(1, 4), q(3, 4))}, {"m"}, SlopeGroup::rational({2})),
                           CharacterSpec::chi_l()));
}

TEST(Psi, Examples) {
  FGGroup single = fixture::single_bump();
  EXPECT_EQ(psi(single, construct::bump(q(2), q(1))), q(1));
  FGGroup G = fixture::dyadic_gs(2);
  EXPECT_EQ(psi(G, G.generator("f")), q(1, 2));
}

TEST(Psi, ReflectionInvariance) {
  FGGroup G = fixture::dyadic_gs(2);
  auto alpha = Automorphism::reflection(G);
  auto check = psi_invariance(G, alpha, 3);
  EXPECT_TRUE(check.holds());
  EXPECT_EQ(check.checked, 53u);
  auto swap = decreasing_swap_check(G, alpha, 3);
  EXPECT_TRUE(swap.holds());
  EXPECT_THROW(decreasing_swap_check(G, Automorphism::identity(G), 1), Error);
}

TEST(Psi, GermsAreHomomorphismsOnBall) {
  FGGroup G = fixture::end_bumps_23();
  Ball b = ball(G, 2);
  for (std::size_t i = 0; i < b.size(); i += 3) {
    for (std::size_t j = 0; j < b.size(); j += 5) {
      auto x = G.germs(b.elements[i]), y = G.germs(b.elements[j]);
      auto xy = G.germs(compose(b.elements[i], b.elements[j]));
      EXPECT_EQ(xy.lambda, x.lambda.after(y.lambda));
      EXPECT_EQ(xy.rho, x.rho.after(y.rho));
    }
  }
}

TEST(Automorphism, RejectsConjugatorsLeavingTheGroup) {
  FGGroup F = fixture::thompson();
  EXPECT_THROW(Automorphism::homothety(F, q(2)), Error);
  try {
    Automorphism::from_conjugator(F, construct::bump(q(3), q(1)), "bump3");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMember);
  }
  auto r = Automorphism::reflection(F);
  EXPECT_TRUE(r.order_two());
  EXPECT_TRUE(r.certified());
}

TEST(Constraints, Examples) {
  GermData id = germ_data(PLMap(), Interval::compact(q(1)));
  GermData b = germ_data(construct::bump(q(2), q(1)), Interval::compact(q(1)));
  for (auto c : {ConstraintSpec::g1(), ConstraintSpec::g2(), ConstraintSpec::g3(), ConstraintSpec::gnu(2),
                 ConstraintSpec::qpair(SlopeGroup::rational({2}), SlopeGroup::rational({3}))}) {
    EXPECT_TRUE(constraint_check(id, c));
  }
  EXPECT_TRUE(constraint_check(b, ConstraintSpec::g3()));
  EXPECT_FALSE(constraint_check(b, ConstraintSpec::g1()));
  EXPECT_FALSE(constraint_check(b, ConstraintSpec::g2()));
  EXPECT_TRUE(constraint_check(b, ConstraintSpec::gnu(-1)));
  EXPECT_FALSE(constraint_check(b, ConstraintSpec::qpair(SlopeGroup::rational({2}), SlopeGroup::rational({3}))));
}

TEST(Constraints, GnuMatchesSpecialCases) {
  FGGroup G = fixture::end_bumps_23();
  Ball b = ball(G, 2);
  for (auto& g : b.elements) {
    auto d = G.germs(g);
    EXPECT_EQ(constraint_check(d, ConstraintSpec::gnu(1)), constraint_check(d, ConstraintSpec::g2()));
    EXPECT_EQ(constraint_check(d, ConstraintSpec::gnu(-1)), constraint_check(d, ConstraintSpec::g3()));
  }
  FGGroup N = fixture::gnu2_group();
  for (auto& g : ball(N, 3).elements) EXPECT_TRUE(constraint_check(N, g, ConstraintSpec::gnu(2)));
}

TEST(Constraints, TranslationSubgroup) {
  FGGroup H = fixture::half_line();
  auto c = ConstraintSpec::translations_in(ModuleSpec::dyadic_like(2));
  for (auto& g : ball(H, 2).elements) {
    auto amp = H.germs(g).rho.translation_amplitude();
    ASSERT_TRUE(amp);
    EXPECT_EQ(constraint_check(H, g, c), *ModuleSpec::dyadic_like(2).contains(*amp));
  }
}

TEST(OrbitSum, Examples) {
  FGGroup G = fixture::dyadic_gs(2);
  OrbitSumCharacter eta({{CharacterSpec::chi_l(), Automorphism::identity(G)},
                         {CharacterSpec::chi_l(), Automorphism::reflection(G)}});
  EXPECT_EQ(eta.as_combination(), CharacterSpec::slope(1, 1));
  OrbitSumCharacter single({{CharacterSpec::chi_l(), Automorphism::identity(G)}});
  EXPECT_EQ(single.as_combination(), CharacterSpec::chi_l());
  FGGroup S = fixture::single_bump();
  OrbitSumCharacter eta_s({{CharacterSpec::chi_l(), Automorphism::identity(S)},
                           {CharacterSpec::chi_l(), Automorphism::reflection(S)}});
  auto v = eta_s.evaluate(S, S.generator("f"));
  for (auto& x : v) EXPECT_EQ(x, 0);
  // eta = ln psi on a ball.
  for (auto& g : ball(G, 3).elements) {
    EXPECT_EQ(eta.sign(G, g), psi(G, g) > q(1) ? 1 : (psi(G, g) < q(1) ? -1 : 0));
  }
}

TEST(Serialization, GroupRoundTrip) {
  for (const FGGroup& G : {fixture::thompson(), fixture::end_bumps_23(), fixture::half_line()}) {
    io::Document doc = io::group_document(G);
    FGGroup back = io::group_from_payload(io::Document::parse(doc.emit()).payload);
    EXPECT_EQ(io::group_document(back).emit(), doc.emit());
    EXPECT_EQ(back.generators().size(), G.generators().size());
  }
}
