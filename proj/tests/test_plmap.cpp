#include <gtest/gtest.h>

#include "oracles/grid.hpp"
#include "plgroups/construct.hpp"
#include "plgroups/io.hpp"
#include "plgroups/random.hpp"

using namespace plg;

namespace {

Scalar q(long long p, long long d = 1) { return Scalar::fraction(p, d); }

const SlopeGroup& P23() {
  static const SlopeGroup p = SlopeGroup::rational({2, 3});
  return p;
}

std::vector<Scalar> sample_points() {
  std::vector<Scalar> ts;
  for (int k = -12; k <= 12; ++k) ts.push_back(q(k, 3));
  ts.push_back(Scalar::quadratic(Rational(0), Rational(1), 2));
  return ts;
}

}  // namespace

TEST(Canonicalize, CollinearPointsCollapse) {
  PLMap f = PLMap::from_raw(AffineMap::identity(), {{q(0), q(0)}, {q(1, 2), q(1, 2)}, {q(1), q(1)}},
                            AffineMap::identity());
  EXPECT_TRUE(f.is_identity());
  EXPECT_TRUE(f.points().empty());
}

TEST(Canonicalize, BumpData) {
  PLMap f = construct::bump(q(2), q(1));
  std::vector<Point> expected{{q(0), q(0)}, {q(2, 3), q(1, 3)}, {q(1), q(1)}};
  EXPECT_EQ(f.points(), expected);
  EXPECT_TRUE(f.left_germ().is_identity());
  EXPECT_TRUE(f.right_germ().is_identity());
}

TEST(Canonicalize, DecreasingMap) {
  PLMap f = PLMap::from_raw(AffineMap{q(-1), q(1)}, {{q(0), q(1)}, {q(1), q(0)}}, AffineMap{q(-1), q(1)});
  EXPECT_FALSE(f.increasing());
  EXPECT_EQ(f(q(1, 4)), q(3, 4));
}

TEST(Canonicalize, RejectsBadData) {
  EXPECT_THROW(PLMap::from_raw(AffineMap::identity(), {{q(0), q(0)}, {q(1), q(-1)}}, AffineMap::identity()),
               Error);
  EXPECT_THROW(PLMap::from_raw(AffineMap::identity(), {{q(0), q(0)}, {q(1), q(2)}}, AffineMap::identity()),
               Error);
  EXPECT_THROW(PLMap::interpolate({{q(1), q(1)}, {q(1), q(2)}}), Error);
  EXPECT_THROW(PLMap::interpolate({{q(0), q(0)}, {q(1), q(2)}, {q(2), q(1)}}), Error);
  EXPECT_THROW(PLMap::affine(AffineMap{q(0), q(1)}), Error);
}

TEST(Canonicalize, Idempotent) {
  random::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    PLMap f = random::line_map(rng, P23(), 5);
    EXPECT_EQ(PLMap::from_raw(f.left_germ(), f.points(), f.right_germ()), f);
  }
}

TEST(Eval, BumpBranches) {
  PLMap f = construct::bump(q(2), q(1));
  EXPECT_EQ(f(q(1, 2)), q(1, 4));
  EXPECT_EQ(f(q(5, 6)), q(2, 3));
  EXPECT_EQ(PLMap()(q(7, 9)), q(7, 9));
}

TEST(Compose, InverseGivesIdentity) {
  PLMap f = construct::bump(q(2), q(1));
  EXPECT_TRUE(compose(f, invert(f)).is_identity());
}

TEST(Compose, LeftSlopesMultiply) {
  PLMap h = compose(construct::bump(q(2), q(1)), construct::bump(q(3), q(1)));
  EXPECT_EQ(germ(h, Side::Left, Interval::compact(q(1))).slope, q(1, 6));
}

TEST(Compose, DyadicMapsAgainstGridOracle) {
  PLMap a = construct::dyadic_bump(q(0), q(1));
  PLMap b = construct::dyadic_bump(q(1, 4), q(3, 4));
  PLMap c = construct::multibump(3, q(0), q(1, 2));
  for (auto& [f, g] : std::vector<std::pair<PLMap, PLMap>>{{a, b}, {b, a}, {a, c}, {c, invert(b)}}) {
    EXPECT_TRUE(oracle::agrees_with_composite(f, g, compose(f, g)));
  }
}

TEST(Compose, RandomMapsAgainstGridOracle) {
  random::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    PLMap f = random::line_map(rng, P23(), 5);
    PLMap g = random::line_map(rng, P23(), 5);
    ASSERT_TRUE(oracle::agrees_with_composite(f, g, compose(f, g))) << i;
  }
}

TEST(Compose, GroupLaws) {
  random::Rng rng(5);
  for (int i = 0; i < 150; ++i) {
    PLMap f = random::line_map(rng, P23(), 4);
    PLMap g = random::line_map(rng, P23(), 4);
    PLMap h = random::line_map(rng, P23(), 4);
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    EXPECT_EQ(compose(f, PLMap()), f);
    EXPECT_EQ(compose(PLMap(), f), f);
    EXPECT_TRUE(compose(invert(f), f).is_identity());
    EXPECT_TRUE(compose(f, invert(f)).is_identity());
  }
}

TEST(Compose, OrientationMultiplies) {
  PLMap theta = construct::reflection(Interval::line());
  PLMap f = construct::bump(q(2), q(1));
  EXPECT_FALSE(compose(theta, f).increasing());
  EXPECT_TRUE(compose(theta, theta).increasing());
  EXPECT_TRUE(compose(theta, theta).is_identity());
  EXPECT_FALSE(invert(compose(f, theta)).increasing());
}

TEST(Compose, EqualityMatchesPointwiseOracle) {
  random::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    PLMap f = random::line_map(rng, P23(), 3);
    PLMap g = i % 2 ? f : random::line_map(rng, P23(), 3);
    EXPECT_EQ(f == g, oracle::pointwise_equal(f, g));
  }
}

TEST(FixSupport, Examples) {
  EXPECT_EQ(fix_support(PLMap()).count, 0u);
  auto b = fix_support(construct::bump(q(2), q(1)));
  ASSERT_EQ(b.count, 1u);
  EXPECT_EQ(b.support_components[0], (OpenInterval{q(0), q(1)}));
  EXPECT_EQ(fix_support(construct::multibump(3, q(0), q(1, 2))).count, 3u);
  auto t = fix_support(construct::translation(q(1)));
  EXPECT_EQ(t.count, 1u);
  EXPECT_TRUE(t.fixed_set.empty());
}

TEST(FixSupport, IsolatedFixedPoint) {
  // t -> 2t fixes only 0.
  auto r = fix_support(construct::homothety(q(2)));
  ASSERT_EQ(r.fixed_set.size(), 1u);
  EXPECT_TRUE(r.fixed_set[0].is_point());
  EXPECT_EQ(r.count, 2u);
}

TEST(FixSupport, ConjugationPreservesCount) {
  random::Rng rng(23);
  PLMap theta = construct::reflection(Interval::line());
  for (int n = 1; n <= 5; ++n) {
    PLMap f = construct::multibump(n, q(0), q(1, 2));
    for (int i = 0; i < 10; ++i) {
      PLMap phi = random::line_map(rng, P23(), 4);
      if (i % 2) phi = compose(theta, phi);
      EXPECT_EQ(fix_support(conjugate(phi, f)).count, fix_support(f).count);
    }
  }
}

TEST(Germ, Examples) {
  Interval unit = Interval::compact(q(1));
  EXPECT_TRUE(germ(PLMap(), Side::Left, unit).is_identity());
  PLMap b = construct::bump(q(2), q(1));
  EXPECT_EQ(germ(b, Side::Left, unit).slope, q(1, 2));
  EXPECT_EQ(germ(b, Side::Right, unit).slope, q(2));
  EXPECT_EQ(germ(b, Side::Right, unit), (AffineMap{q(2), q(-1)}));
  auto tau = germ(construct::translation(q(1)), Side::Right, Interval::line()).translation_amplitude();
  ASSERT_TRUE(tau);
  EXPECT_EQ(*tau, q(1));
}

TEST(Germ, RejectsMapsOutsideInterval) {
  EXPECT_THROW(germ(construct::bump(q(2), q(2)), Side::Left, Interval::compact(q(1))), Error);
  EXPECT_THROW(germ(construct::translation(q(1)), Side::Left, Interval::half_line()), Error);
}

TEST(Germ, Multiplicative) {
  random::Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    PLMap f = random::line_map(rng, P23(), 4);
    PLMap g = random::line_map(rng, P23(), 4);
    for (Side side : {Side::Left, Side::Right}) {
      EXPECT_EQ(germ(compose(f, g), side, Interval::line()),
                germ(f, side, Interval::line()).after(germ(g, side, Interval::line())));
    }
  }
}

TEST(Conjugate, ReflectionSwapsEndSlopes) {
  PLMap theta = construct::reflection(Interval::compact(q(1)));
  PLMap c = conjugate(theta, construct::bump(q(2), q(1)));
  EXPECT_TRUE(c.increasing());
  EXPECT_EQ(germ(c, Side::Left, Interval::compact(q(1))).slope, q(2));
  PLMap f = construct::dyadic_bump(q(0), q(1));
  EXPECT_EQ(conjugate(PLMap(), f), f);
}

TEST(Conjugate, LineReflectionExchangesGerms) {
  random::Rng rng(31);
  PLMap theta = construct::reflection(Interval::line());
  AffineMap th{q(-1), q(0)};
  for (int i = 0; i < 100; ++i) {
    PLMap g = random::line_map(rng, P23(), 5);
    GermData d = germ_data(g, Interval::line());
    GermData c = germ_data(conjugate(theta, g), Interval::line());
    EXPECT_EQ(c.rho, th.after(d.lambda).after(th));
    EXPECT_EQ(c.lambda, th.after(d.rho).after(th));
  }
}

TEST(Conjugate, PointwiseIntertwining) {
  random::Rng rng(37);
  PLMap theta = construct::reflection(Interval::line());
  for (int i = 0; i < 60; ++i) {
    PLMap phi = random::line_map(rng, P23(), 3);
    if (i % 3 == 0) phi = compose(theta, phi);
    PLMap f = random::line_map(rng, P23(), 3);
    PLMap c = conjugate(phi, f);
    for (auto& t : sample_points()) EXPECT_EQ(c(phi(t)), phi(f(t)));
  }
}

TEST(Construct, GsFamilyF) {
  auto fgh = construct::gs_family(q(2), q(3), q(5));
  EXPECT_EQ(fgh.f(q(1, 2)), q(1, 4));
  auto s = fix_support(fgh.f);
  ASSERT_EQ(s.count, 1u);
  EXPECT_EQ(s.support_components[0], (OpenInterval{q(0), q(3, 4)}));
}

TEST(Construct, DyadicH) {
  auto fgh = construct::dyadic_fgh(q(2));
  EXPECT_EQ(fgh.h(q(3, 4)), q(1, 2));
  EXPECT_EQ(fgh.h.slope_left_of(q(3, 4)), q(1, 2));
  EXPECT_EQ(fgh.h.slope_right_of(q(3, 4)), q(2));
  EXPECT_EQ(fix_support(fgh.h).support_components[0], (OpenInterval{q(1, 4), q(1)}));
}

TEST(Construct, Lemma72Pair) {
  auto pair = construct::lemma72_pair(q(1, 2), q(2), q(0), q(1, 4), q(3, 4), q(1));
  EXPECT_EQ(pair.nodes[1], q(1, 8));
  EXPECT_EQ(pair.nodes[2], q(3, 8));
  EXPECT_EQ(pair.nodes[3], q(1, 2));
  EXPECT_EQ(pair.nodes[4], q(7, 8));
  EXPECT_EQ(pair.f(q(1, 8)), q(1, 16));
  EXPECT_EQ(pair.g(q(3, 4)), q(3, 8));
  EXPECT_EQ(pair.f(pair.g(q(3, 4))), q(3, 16));
  EXPECT_LE(pair.f(pair.g(q(3, 4))), q(1, 4));
  EXPECT_TRUE(pair.conditions.all());
  EXPECT_EQ(pair.f.slope_right_of(q(0)), q(1, 2));
  EXPECT_EQ(pair.g.slope_left_of(q(1)), q(2));
}

TEST(Construct, Lemma72RejectsBadParameters) {
  EXPECT_THROW(construct::lemma72_pair(q(1), q(2), q(0), q(1, 4), q(3, 4), q(1)), Error);
  EXPECT_THROW(construct::lemma72_pair(q(1, 2), q(2), q(0), q(3, 4), q(1, 4), q(1)), Error);
  EXPECT_THROW(construct::bump(q(1), q(1)), Error);
  EXPECT_THROW(construct::multibump(0, q(0), q(1)), Error);
  EXPECT_THROW(construct::reflection(Interval::half_line()), Error);
}

TEST(Construct, MultibumpStaysInRegion) {
  for (int n = 1; n <= 6; ++n) {
    auto s = fix_support(construct::multibump(n, q(0), q(1, 2)));
    EXPECT_EQ(s.count, static_cast<std::size_t>(n));
    EXPECT_EQ(s.support_components.front().lo, q(0));
    EXPECT_EQ(s.support_components.back().hi, q(1, 2));
  }
}

TEST(Serialization, MapRoundTrip) {
  random::Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    PLMap f = random::line_map(rng, P23(), 5);
    io::Document doc = io::map_document(f, Interval::line());
    io::Document back = io::Document::parse(doc.emit());
    EXPECT_EQ(back.emit(), doc.emit());
    EXPECT_EQ(io::map_from_payload(back.payload).map, f);
  }
  PLMap r = compose(construct::reflection(Interval::compact(q(1))), construct::bump(q(2), q(1)));
  auto back = io::map_from_payload(io::Document::parse(io::map_document(r, Interval::compact(q(1))).emit()).payload);
  EXPECT_EQ(back.map, r);
  EXPECT_EQ(back.interval, Interval::compact(q(1)));
}

TEST(Serialization, RejectsMalformedDocuments) {
  EXPECT_THROW(io::Document::parse("{"), Error);
  EXPECT_THROW(io::Document::parse(R"({"kind":"map","payload":{}})"), Error);
  try {
    io::Document::parse(R"({"format_version":99,"kind":"map","payload":{}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}
