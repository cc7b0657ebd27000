#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <vector>

#include "plgroups/scalar.hpp"

using plg::ErrorKind;
using plg::Rational;
using plg::Scalar;

namespace {

Scalar q(long long p, long long d = 1) { return Scalar::fraction(p, d); }
Scalar root2(long long a, long long b) { return Scalar::quadratic(Rational(a), Rational(b), 2); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const plg::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Scalar, RationalSum) { EXPECT_EQ(q(2, 3) + q(1, 6), q(5, 6)); }

TEST(Scalar, ConjugateProduct) { EXPECT_EQ(root2(1, 1) * root2(-1, 1), q(1)); }

TEST(Scalar, SelfQuotient) { EXPECT_EQ(root2(1, 1) / root2(1, 1), q(1)); }

TEST(Scalar, LowestTerms) {
  Scalar x = q(6, -4);
  EXPECT_EQ(x.str(), "-3/2");
  EXPECT_TRUE(x.is_rational());
}

TEST(Scalar, QuadraticWithZeroRootPartIsRational) {
  Scalar x = Scalar::quadratic(Rational(3), Rational(0), 5);
  EXPECT_TRUE(x.is_rational());
  EXPECT_EQ(x, q(3));
  EXPECT_EQ(root2(2, 1) - root2(0, 1), q(2));
}

TEST(Scalar, CompareRationals) { EXPECT_GT(q(2, 3), q(1, 2)); }

TEST(Scalar, CompareQuadraticWithRational) {
  // (12/5 - 1)^2 = 49/25 < 2.
  EXPECT_GT(root2(1, 1), q(12, 5));
  EXPECT_LT(root2(1, 1), q(5, 2));
  EXPECT_EQ(root2(0, 1), root2(0, 1));
  EXPECT_LT(root2(-1, 1), q(1, 2));
  EXPECT_GT(root2(-1, 1), q(2, 5));
  EXPECT_LT(root2(3, -2), q(1, 5));
  EXPECT_GT(root2(3, -2).sign(), 0);
}

TEST(Scalar, DivisionByZero) {
  EXPECT_EQ(kind_of([] { (void)(q(1) / q(0)); }), ErrorKind::DivisionByZero);
  EXPECT_EQ(kind_of([] { (void)(root2(1, 1) / (root2(1, 1) - root2(1, 1))); }), ErrorKind::DivisionByZero);
}

TEST(Scalar, IncompatibleRadicands) {
  Scalar r3 = Scalar::quadratic(Rational(0), Rational(1), 3);
  EXPECT_EQ(kind_of([&] { (void)(root2(0, 1) + r3); }), ErrorKind::IncompatibleRadicand);
  EXPECT_EQ(kind_of([&] { (void)(root2(0, 1) < r3); }), ErrorKind::IncompatibleRadicand);
}

TEST(Scalar, ParsePrintRoundTrip) {
  for (const char* text : {"0", "-7", "3/4", "-22/7", "(1)+(1)√2", "(-1/2)+(3/4)√5", "(0)+(-1)√7"}) {
    Scalar x = Scalar::parse(text);
    EXPECT_EQ(Scalar::parse(x.str()), x) << text;
    EXPECT_EQ(Scalar::parse(x.str()).str(), x.str()) << text;
  }
  EXPECT_EQ(Scalar::parse("(1)+(1)sqrt(2)"), root2(1, 1));
  EXPECT_EQ(Scalar::parse("(1)+(1)sqrt2"), root2(1, 1));
  EXPECT_EQ(Scalar::parse("6/8"), q(3, 4));
}

TEST(Scalar, ParseRejectsGarbage) {
  for (const char* text : {"", "1/0", "abc", "(1)+(1)√4", "(1)+(1)", "1//2"}) {
    EXPECT_THROW(Scalar::parse(text), plg::Error) << text;
  }
}

TEST(Scalar, Powers) {
  EXPECT_EQ(root2(1, 1).pow(2), root2(3, 2));
  EXPECT_EQ(root2(1, 1).pow(-1), root2(-1, 1));
  EXPECT_EQ(q(2, 3).pow(-3), q(27, 8));
  EXPECT_EQ(q(5).pow(0), q(1));
}

TEST(Scalar, FloorOfQuadratic) {
  EXPECT_EQ(root2(0, 1).floor(), 1);
  EXPECT_EQ(root2(0, -1).floor(), -2);
  EXPECT_EQ(root2(1, 1).floor(), 2);
  EXPECT_EQ(q(-7, 2).floor(), -4);
}

class ScalarProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240611};
  Scalar random_scalar(bool quadratic) {
    auto r = [&] { return Rational(static_cast<long long>(rng() % 41) - 20) / Rational(1 + rng() % 9); };
    if (!quadratic) return Scalar(r());
    return Scalar::quadratic(r(), r(), 2);
  }
};

TEST_F(ScalarProperties, InverseIsInverse) {
  for (int i = 0; i < 300; ++i) {
    Scalar x = random_scalar(i % 2 == 0);
    if (x.sign() == 0) continue;
    EXPECT_EQ(x * (Scalar(1) / x), Scalar(1)) << x.str();
  }
}

TEST_F(ScalarProperties, OrderIsTotalAndCompatible) {
  for (int i = 0; i < 300; ++i) {
    Scalar x = random_scalar(i % 3 != 0), y = random_scalar(i % 3 != 1), z = random_scalar(true);
    int lt = x < y, eq = x == y, gt = x > y;
    EXPECT_EQ(lt + eq + gt, 1);
    if (x < y) {
      EXPECT_LT(x + z, y + z);
      Scalar p = abs(z) + Scalar(1);
      EXPECT_LT(x * p, y * p);
    }
    // Sign of a difference agrees with the order.
    EXPECT_EQ((x - y).sign(), lt ? -1 : eq ? 0 : 1);
  }
}

TEST_F(ScalarProperties, FieldAxioms) {
  for (int i = 0; i < 200; ++i) {
    Scalar x = random_scalar(true), y = random_scalar(true), z = random_scalar(i % 2 == 0);
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ((x + y) - y, x);
    EXPECT_EQ(x * y, y * x);
  }
}

TEST_F(ScalarProperties, HashRespectsEquality) {
  for (int i = 0; i < 100; ++i) {
    Scalar x = random_scalar(true);
    Scalar y = Scalar::parse(x.str());
    EXPECT_EQ(x.hash(), y.hash());
  }
}
