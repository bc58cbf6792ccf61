#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qseq/gf2poly.hpp"
#include "test_util.hpp"

using qseq::BitPoly;
using qseq::Errc;

namespace {

BitPoly P(const char* s) { return qseq::parse_poly(s); }

BitPoly random_poly(std::mt19937_64& rng, std::size_t max_bits) {
  const std::size_t bits = std::uniform_int_distribution<std::size_t>(0, max_bits)(rng);
  std::vector<std::uint64_t> w((bits + 63) / 64);
  for (auto& x : w) x = rng();
  if (bits % 64 != 0 && !w.empty()) w.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  return BitPoly::from_words(std::move(w));
}

}  // namespace

TEST(Gf2Poly, ZeroHasNoDegree) {
  BitPoly zero;
  EXPECT_TRUE(zero.is_zero());
  EXPECT_FALSE(zero.degree().has_value());
  expect_error(Errc::zero_polynomial, [&] { (void)zero.deg(); });
  EXPECT_EQ(BitPoly::one().degree(), 0U);
  EXPECT_EQ(BitPoly::monomial(200).degree(), 200U);
}

TEST(Gf2Poly, Add) {
  EXPECT_TRUE(qseq::add(P("x+1"), P("x+1")).is_zero());
  EXPECT_EQ(qseq::add(P("x^2+x+1"), P("x+1")), P("x^2"));
  EXPECT_EQ(qseq::add(P("x^3+x+1"), BitPoly{}), P("x^3+x+1"));
}

TEST(Gf2Poly, Mul) {
  EXPECT_EQ(qseq::mul(P("x+1"), P("x+1")), P("x^2+1"));
  EXPECT_EQ(oracle::mul(0xB, 0xD), 0x7FU);
  EXPECT_EQ(qseq::mul(P("x^3+x+1"), P("x^3+x^2+1")), P("x^6+x^5+x^4+x^3+x^2+x+1"));
  EXPECT_EQ(qseq::mul(P("x^6+x^3+1"), BitPoly::one()), P("x^6+x^3+1"));
  EXPECT_TRUE(qseq::mul(P("x^6+x^3+1"), BitPoly{}).is_zero());
}

TEST(Gf2Poly, MulMatchesSchoolbookUpToDegree8) {
  for (std::uint64_t a = 0; a < 512; ++a) {
    for (std::uint64_t b = 0; b < 512; ++b) {
      ASSERT_EQ(qseq::mul(BitPoly(a), BitPoly(b)).low_word(), oracle::mul(a, b)) << a << " * " << b;
    }
  }
}

TEST(Gf2Poly, PortableAndHardwareKernelsAgree) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const BitPoly p = random_poly(rng, 700);
    const BitPoly q = random_poly(rng, 700);
    ASSERT_EQ(qseq::mul(p, q, qseq::ClmulBackend::portable), qseq::mul(p, q, qseq::ClmulBackend::hardware));
  }
  // all-ones words exercise every carry position
  const BitPoly ones = BitPoly::from_words({~0ULL, ~0ULL});
  EXPECT_EQ(qseq::mul(ones, ones, qseq::ClmulBackend::portable), qseq::mul(ones, ones, qseq::ClmulBackend::hardware));
  EXPECT_EQ(qseq::mul(ones, ones), qseq::square(ones));
}

TEST(Gf2Poly, SquareMatchesMul) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const BitPoly p = random_poly(rng, 500);
    ASSERT_EQ(qseq::square(p), qseq::mul(p, p));
  }
}

TEST(Gf2Poly, Distributivity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const BitPoly p = random_poly(rng, 300), q = random_poly(rng, 300), r = random_poly(rng, 300);
    ASSERT_EQ(qseq::mul(p, q + r), qseq::mul(p, q) + qseq::mul(p, r));
  }
}

TEST(Gf2Poly, DivRem) {
  auto [q1, r1] = qseq::divrem(P("x^2+1"), P("x+1"));
  EXPECT_EQ(q1, P("x+1"));
  EXPECT_TRUE(r1.is_zero());

  EXPECT_EQ(oracle::quot(0x7F, 0xB), 0xDU);
  EXPECT_EQ(oracle::rem(0x7F, 0xB), 0U);
  auto [q2, r2] = qseq::divrem(P("x^6+x^5+x^4+x^3+x^2+x+1"), P("x^3+x+1"));
  EXPECT_EQ(q2, P("x^3+x^2+1"));
  EXPECT_TRUE(r2.is_zero());

  auto [q3, r3] = qseq::divrem(P("x"), P("x^2+x+1"));
  EXPECT_TRUE(q3.is_zero());
  EXPECT_EQ(r3, P("x"));

  expect_error(Errc::division_by_zero, [] { (void)qseq::divrem(BitPoly(5), BitPoly{}); });
}

TEST(Gf2Poly, DivRemRecomposes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const BitPoly p = random_poly(rng, 900);
    BitPoly d = random_poly(rng, 400);
    if (d.is_zero()) d = BitPoly::one();
    auto [q, r] = qseq::divrem(p, d);
    ASSERT_EQ(qseq::mul(q, d) + r, p);
    if (!r.is_zero()) {
      ASSERT_LT(r.deg(), d.deg());
    }
  }
}

TEST(Gf2Poly, Gcd) {
  EXPECT_EQ(qseq::gcd(P("x^2+1"), P("x+1")), P("x+1"));
  ASSERT_TRUE(oracle::irreducible(0xB) && oracle::irreducible(0xD));
  EXPECT_EQ(qseq::gcd(P("x^3+x+1"), P("x^3+x^2+1")), BitPoly::one());
  EXPECT_EQ(qseq::gcd(P("x^5+x^2+1"), BitPoly{}), P("x^5+x^2+1"));
  expect_error(Errc::both_zero, [] { (void)qseq::gcd(BitPoly{}, BitPoly{}); });
}

TEST(Gf2Poly, FrobeniusPower) {
  EXPECT_EQ(oracle::rem(0b100, 0b111), 0b11U);
  EXPECT_EQ(qseq::frobenius_power(1, P("x^2+x+1")), P("x+1"));
  EXPECT_EQ(qseq::frobenius_power(0, P("x^5+x^2+1")), P("x"));
  EXPECT_EQ(qseq::frobenius_power(0, P("x")), BitPoly{});
  EXPECT_EQ(qseq::frobenius_power(2, P("x^2+x+1")), P("x"));
  expect_error(Errc::degree_zero, [] { (void)qseq::frobenius_power(1, BitPoly::one()); });
}

TEST(Gf2Poly, FrobeniusFixesXForEveryIrreducibleUpTo12) {
  for (int n = 1; n <= 12; ++n) {
    for (auto f : oracle::irreducibles(n)) {
      const BitPoly fp(f);
      ASSERT_EQ(qseq::frobenius_power(static_cast<std::size_t>(n), fp), qseq::mod(BitPoly::x(), fp)) << f;
    }
  }
}

TEST(Gf2Poly, Reciprocal) {
  EXPECT_EQ(qseq::reciprocal(P("x^3+x+1")), P("x^3+x^2+1"));
  EXPECT_EQ(qseq::reciprocal(P("x^2+x+1")), P("x^2+x+1"));
  EXPECT_TRUE(qseq::is_self_reciprocal(P("x^4+x^3+x^2+x+1")));
  EXPECT_FALSE(qseq::is_self_reciprocal(P("x^3+x+1")));
  EXPECT_EQ(qseq::reciprocal(P("x^3+x")), P("x^2+1"));
  expect_error(Errc::zero_polynomial, [] { (void)qseq::reciprocal(BitPoly{}); });
}

TEST(Gf2Poly, ReciprocalIsAnInvolutionOnUnitConstantTerm) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    BitPoly p = random_poly(rng, 400);
    p.set_coeff(0, true);
    const BitPoly r = qseq::reciprocal(p);
    ASSERT_EQ(r.deg(), p.deg());
    ASSERT_EQ(qseq::reciprocal(r), p);
    if (p.deg() < 60) {
      ASSERT_EQ(r.low_word(), oracle::reverse(p.low_word()));
    }
  }
}

TEST(Gf2Poly, TextAndHexEncodings) {
  const BitPoly f = P("x^6+x^3+1");
  EXPECT_EQ(f.low_word(), 0x49U);
  EXPECT_EQ(qseq::to_hex(f), "0x49");
  EXPECT_EQ(qseq::to_text(f), "x^6+x^3+1");
  EXPECT_EQ(P("0x49"), f);
  EXPECT_EQ(P("0X49"), f);
  EXPECT_EQ(P(" 1 + x^3 + x^6 "), f);
  EXPECT_EQ(qseq::to_text(P("0xd")), "x^3+x^2+1");
  EXPECT_EQ(qseq::to_text(P("x")), "x");
  EXPECT_EQ(qseq::to_text(BitPoly{}), "0");
  EXPECT_EQ(qseq::to_hex(BitPoly{}), "0x0");
  EXPECT_TRUE(P("0").is_zero());

  const BitPoly big = BitPoly::monomial(130) + BitPoly::one();
  EXPECT_EQ(qseq::to_hex(big), "0x400000000000000000000000000000001");
  EXPECT_EQ(P(qseq::to_hex(big).c_str()), big);
  EXPECT_EQ(P(qseq::to_text(big).c_str()), big);
}

TEST(Gf2Poly, ParseErrors) {
  for (const char* bad : {"", "x^", "x^-1", "2", "x+x", "y^2+1", "0x", "0xg1", "x^2++1"}) {
    expect_error(Errc::parse_error, [bad] { (void)qseq::parse_poly(bad); });
  }
}

TEST(Gf2Poly, EncodingsRoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const BitPoly p = random_poly(rng, 300);
    ASSERT_EQ(qseq::parse_poly(qseq::to_hex(p)), p);
    ASSERT_EQ(qseq::parse_poly(qseq::to_text(p)), p);
  }
}

TEST(Gf2Poly, OrderingIsNumeric) {
  EXPECT_LT(P("x^3+x+1"), P("x^3+x^2+1"));
  EXPECT_LT(P("x^2+x+1"), P("x^3"));
  EXPECT_LT(BitPoly{}, BitPoly::one());
}
