#include <gtest/gtest.h>

#include "padic_lattice/rational.hpp"
#include "test_util.hpp"

namespace padic {
namespace {

Rat q(long a, long b) { return Rat(mpz_class(a), mpz_class(b)); }

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(2, Rat(8)), Valuation::finite(3));
  EXPECT_EQ(valuation(3, q(2, 9)), Valuation::finite(-2));
  EXPECT_TRUE(valuation(5, Rat(0)).is_infinite());
  EXPECT_EQ(valuation(7, q(-49, 5)), Valuation::finite(2));
}

TEST(Valuation, RejectsNonPrime) {
  EXPECT_THROW(valuation(4, Rat(8)), InvalidParameter);
  EXPECT_THROW(valuation(1, Rat(8)), InvalidParameter);
  EXPECT_THROW(in_zp(0, Rat(1)), InvalidParameter);
  EXPECT_THROW(Prime(-3), InvalidParameter);
}

TEST(Valuation, InfinityOrdering) {
  EXPECT_LT(Valuation::finite(1000), Valuation::infinity());
  EXPECT_EQ(Valuation::finite(2) + Valuation::infinity(), Valuation::infinity());
}

TEST(InZp, Examples) {
  EXPECT_TRUE(in_zp(2, q(3, 5)));
  EXPECT_FALSE(in_zp(2, q(1, 2)));
  EXPECT_TRUE(in_zp(7, Rat(0)));
  EXPECT_TRUE(is_unit(Prime(3), q(2, 5)));
  EXPECT_FALSE(is_unit(Prime(3), Rat(6)));
  EXPECT_FALSE(is_unit(Prime(3), Rat(0)));
}

TEST(Rat, CanonicalText) {
  EXPECT_EQ(q(2, 4).str(), "1/2");
  EXPECT_EQ(q(3, -6).str(), "-1/2");
  EXPECT_EQ(Rat::parse("-7/3"), q(-7, 3));
  EXPECT_EQ(Rat::parse("0"), Rat(0));
  for (const char* bad : {"", "-", "2/4", "3/1", "-0", "+1", "1/0", "0/5", "1.5", "1 / 2", "007", "1/-2", "/2"}) {
    EXPECT_THROW(Rat::parse(bad), InvalidParameter) << bad;
  }
}

TEST(Rat, PowP) {
  EXPECT_EQ(pow_p(Prime(3), 2), Rat(9));
  EXPECT_EQ(pow_p(Prime(2), -3), q(1, 8));
  EXPECT_EQ(pow_p(Prime(5), 0), Rat(1));
}

TEST(Rat, Ceil) {
  EXPECT_EQ(q(3, 2).ceil(), 2);
  EXPECT_EQ(q(-3, 2).ceil(), -1);
  EXPECT_EQ(Rat(4).ceil(), 4);
}

TEST(ValuationProperty, MultiplicativeAndUltrametric) {
  Rng rng(11);
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    for (int it = 0; it < 2000; ++it) {
      const Rat x = testing::random_rat(p, rng);
      const Rat y = testing::random_rat(p, rng);
      const Valuation vx = valuation(p, x);
      const Valuation vy = valuation(p, y);
      EXPECT_EQ(valuation(p, x * y), vx + vy);
      const Valuation vs = valuation(p, x + y);
      EXPECT_GE(vs, std::min(vx, vy));
      if (vx != vy) {
        EXPECT_EQ(vs, std::min(vx, vy));
      }
    }
  }
}

TEST(ValuationProperty, ZpIsARing) {
  Rng rng(12);
  for (std::int64_t pv : {2, 3, 5}) {
    const Prime p(pv);
    for (int it = 0; it < 2000; ++it) {
      const Rat x = testing::random_rat(p, rng);
      const Rat y = testing::random_rat(p, rng);
      if (in_zp(p, x) && in_zp(p, y)) {
        EXPECT_TRUE(in_zp(p, x + y));
        EXPECT_TRUE(in_zp(p, x * y));
      }
      EXPECT_EQ(in_zp(p, x), valuation(p, x) >= Valuation::finite(0));
    }
  }
}

TEST(RatProperty, ParseInvertsStr) {
  Rng rng(13);
  for (int it = 0; it < 500; ++it) {
    const Rat x = testing::random_rat(Prime(3), rng, -6, 6);
    EXPECT_EQ(Rat::parse(x.str()), x);
  }
}

}  // namespace
}  // namespace padic
