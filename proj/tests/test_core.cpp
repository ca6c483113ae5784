#include <gtest/gtest.h>

#include <random>

#include "pierce/pierce.hpp"

using namespace pierce;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Digits by the integer recursion p -> q mod p with q fixed, on machine words.
std::vector<std::uint64_t> oracle_digits(std::uint64_t p, std::uint64_t den) {
  std::vector<std::uint64_t> out;
  while (p != 0) {
    out.push_back(den / p);
    p = den % p;
  }
  return out;
}

// Alternating sum of reciprocal partial products, term by term.
Rational oracle_value(const std::vector<BigInt>& d) {
  Rational s = 0;
  BigInt prod = 1;
  for (size_t k = 0; k < d.size(); ++k) {
    prod *= d[k];
    Rational term(BigInt(1), prod);
    if (k % 2 == 0) s += term;
    else s -= term;
  }
  return s;
}

std::vector<BigInt> big(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(FirstDigit, Examples) {
  EXPECT_EQ(first_digit(Rational(1)), 1);
  EXPECT_EQ(first_digit(q(1, 2)), 2);
  EXPECT_EQ(first_digit(q(7, 9)), 1);
}

TEST(FirstDigit, RejectsOutsideUnitInterval) {
  EXPECT_THROW(first_digit(Rational(0)), std::domain_error);
  EXPECT_THROW(first_digit(q(3, 2)), std::domain_error);
  EXPECT_THROW(first_digit(q(-1, 2)), std::domain_error);
}

TEST(Shift, Examples) {
  EXPECT_EQ(shift(q(1, 2)), 0);
  EXPECT_EQ(shift(q(2, 3)), q(1, 3));
  EXPECT_EQ(shift(q(2, 9)), q(1, 9));
}

TEST(Shift, DenominatorDividesInput) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    long d = 2 + static_cast<long>(rng() % 100000);
    long p = 1 + static_cast<long>(rng() % static_cast<unsigned long>(d));
    Rational x = q(p, d);
    Rational t = shift(x);
    EXPECT_TRUE(mpz_divisible_p(x.get_den_mpz_t(), t.get_den_mpz_t()));
    EXPECT_GE(t, 0);
    EXPECT_LT(t, Rational(1) / Rational(first_digit(x) + 1));
  }
}

TEST(Expand, Examples) {
  auto a = expand(q(1, 2), 10);
  EXPECT_EQ(a.digits, Word({2}));
  EXPECT_TRUE(a.terminated);
  auto b = expand(q(2, 3), 10);
  EXPECT_EQ(b.digits, Word({1, 3}));
  auto c = expand(q(7, 9), 10);
  EXPECT_EQ(c.digits, Word({1, 4, 9}));
  EXPECT_TRUE(c.terminated);
  EXPECT_EQ(c.remainder, 0);
  EXPECT_EQ(expand(Rational(1)).digits, Word({1}));
}

TEST(Expand, CapStopsEarlyWithRemainder) {
  auto r = expand(q(7, 9), 2);
  EXPECT_FALSE(r.terminated);
  EXPECT_EQ(r.digits, Word({1, 4}));
  // x = 1 - 1/4 + T^2(x)/4, so T^2(x) = 1/9
  EXPECT_EQ(r.remainder, q(1, 9));
  EXPECT_EQ(affine_shift(r.digits, r.remainder), q(7, 9));
}

TEST(Expand, MatchesMachineWordOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    std::uint64_t den = 2 + rng() % (1ULL << 62);
    std::uint64_t p = 1 + rng() % den;
    auto want = oracle_digits(p, den);
    Rational x(BigInt(std::to_string(p)), BigInt(std::to_string(den)));
    x.canonicalize();
    auto got = expand(x);
    ASSERT_TRUE(got.terminated);
    ASSERT_EQ(got.digits.size(), want.size());
    for (size_t k = 0; k < want.size(); ++k) EXPECT_EQ(got.digits[k], BigInt(std::to_string(want[k])));
  }
}

TEST(Expand, DigitGrowthAndFinalDigitRule) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    long d = 2 + static_cast<long>(rng() % 1000000);
    long p = 1 + static_cast<long>(rng() % static_cast<unsigned long>(d));
    Word w = expand(q(p, d)).digits;
    for (size_t k = 0; k < w.size(); ++k) EXPECT_GE(w[k], BigInt(static_cast<long>(k + 1)));
    EXPECT_TRUE(is_admissible(w.view()));
    EXPECT_TRUE(is_terminal_expansion(w));
    if (w.size() >= 2) {
      EXPECT_GT(w[w.size() - 1], w[w.size() - 2] + 1);
    }
  }
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(Word({2})), q(1, 2));
  EXPECT_EQ(evaluate(Word({1, 3})), q(2, 3));
  EXPECT_EQ(evaluate(Word({1, 4, 9})), q(7, 9));
  EXPECT_THROW(evaluate(Word()), std::invalid_argument);
}

TEST(Evaluate, MatchesAlternatingSum) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::vector<BigInt> d;
    long cur = 0;
    int len = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < len; ++k) {
      cur += 1 + static_cast<long>(rng() % 50);
      d.emplace_back(cur);
    }
    EXPECT_EQ(evaluate(Word(d)), oracle_value(d));
  }
}

TEST(Underline, Examples) {
  EXPECT_EQ(underline(Word({2})), Word({3}));
  EXPECT_EQ(underline(Word({1, 4, 9})), Word({1, 4, 10}));
  EXPECT_EQ(evaluate(underline(Word({1, 3}))), q(3, 4));
}

TEST(Extend, Examples) {
  EXPECT_EQ(extend(Word({1, 3}), 4), Word({1, 3, 4}));
  EXPECT_THROW(extend(Word({1, 3}), 3), std::invalid_argument);
  EXPECT_EQ(evaluate(extend(Word({1, 3}), 4)), q(3, 4));
}

TEST(Extend, UnderlineEqualsExtensionByNextDigit) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    std::vector<BigInt> d;
    long cur = 0;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < len; ++k) {
      cur += 1 + static_cast<long>(rng() % 30);
      d.emplace_back(cur);
    }
    Word w(d);
    EXPECT_EQ(evaluate(underline(w)), evaluate(extend(w, w.back() + 1)));
  }
}

TEST(Admissible, Examples) {
  EXPECT_TRUE(is_admissible(big({1, 3, 7})));
  EXPECT_FALSE(is_admissible(big({2, 2, 5})));
  EXPECT_FALSE(is_admissible(std::vector<BigInt>{}));
  EXPECT_FALSE(is_admissible(big({0, 1})));
  EXPECT_THROW(Word({3, 2}), std::invalid_argument);
}

TEST(ParseWord, AcceptsBothSpellings) {
  EXPECT_EQ(parse_word("1,4,9"), Word({1, 4, 9}));
  EXPECT_EQ(parse_word("<1, 4, 9>"), Word({1, 4, 9}));
  EXPECT_THROW(parse_word("2,2"), std::invalid_argument);
  EXPECT_THROW(parse_word("1,x"), std::invalid_argument);
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("7/9"), q(7, 9));
  EXPECT_EQ(parse_rational("1.25"), q(5, 4));
  EXPECT_EQ(parse_rational("2/4"), q(1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(AffineShift, Examples) {
  Rational x = q(2, 7);
  EXPECT_EQ(affine_shift(Word({1}), x), 1 - x);
  EXPECT_EQ(affine_shift(Word({2}), q(1, 3)), q(1, 3));
}

TEST(AffineShift, SlopeIsReciprocalProduct) {
  std::mt19937_64 rng(23);
  Word w({2, 5, 6, 11});
  Rational slope(BigInt(1), digit_product(w.view()));
  for (int i = 0; i < 200; ++i) {
    Rational x = q(1 + static_cast<long>(rng() % 999), 1000), y = q(1 + static_cast<long>(rng() % 999), 1000);
    Rational gap = affine_shift(w, x) - affine_shift(w, y);
    EXPECT_EQ(abs(gap), slope * abs(x - y));
  }
}

TEST(AffineShift, PrependsWordToExpansion) {
  Word w({1, 3, 7});
  for (long j = 9; j < 40; ++j) {
    Rational y = q(1, j);  // expansion <j>, and 1/j < 1/8
    EXPECT_EQ(expand(affine_shift(w, y)).digits, extend(w, j));
  }
}
