#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "pierce/pierce.hpp"

using namespace pierce;

namespace {

// floor(e^{g(k)}) for k = 1..N, strictly increasing for the g used here.
Word word_from_logs(long N, const std::function<double(long)>& g) {
  std::vector<BigInt> d;
  for (long k = 1; k <= N; ++k) {
    Real ex = exp(Real(g(k), 256));
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), ex.get(), MPFR_RNDD);
    d.push_back(z);
  }
  return Word(std::move(d));
}

}  // namespace

TEST(Sampler, DeterministicPerSeedAndIndex) {
  Word a = sample_digits(42, 50, 3), b = sample_digits(42, 50, 3);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(sample_digits(42, 50, 4) == a);
  EXPECT_FALSE(sample_digits(43, 50, 3) == a);
}

TEST(Sampler, WordsAdmissibleWithGrowth) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Word w = sample_digits(9, 60, i);
    EXPECT_TRUE(is_admissible(w.view()));
    for (size_t k = 0; k < w.size(); ++k) EXPECT_GE(w[k], BigInt(static_cast<long>(k + 1)));
  }
}

// The refined interval must lie in the cylinder of the emitted word.
TEST(Sampler, EnclosureInsideCylinder) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    LazySample s(5, i);
    for (int k = 0; k < 8; ++k) {
      s.next();
      Interval enc = s.enclosing_interval();
      Interval cyl = fundamental_interval(s.word());
      EXPECT_GE(enc.lo, cyl.lo);
      EXPECT_LE(enc.hi, cyl.hi);
      EXPECT_LT(enc.lo, enc.hi);
      // interior points expand with the emitted prefix
      Word got = expand(enc.midpoint(), s.word().size()).digits;
      EXPECT_EQ(got, s.word());
    }
  }
}

TEST(Sampler, FirstDigitLaw) {
  const int N = 100000;
  std::map<long, long> counts;
  for (int i = 0; i < N; ++i) ++counts[LazySample(77, static_cast<std::uint64_t>(i)).next().get_si()];
  for (long k = 1; k <= 3; ++k) {
    double p = 1.0 / static_cast<double>(k * (k + 1));
    EXPECT_NEAR(static_cast<double>(counts[k]) / N, p, 0.01) << "k=" << k;
  }
}

// Two-digit prefixes against the exact cylinder lengths, four standard errors.
TEST(Sampler, PrefixFrequencies) {
  const int N = 40000;
  std::map<std::pair<long, long>, long> counts;
  for (int i = 0; i < N; ++i) {
    LazySample s(123, static_cast<std::uint64_t>(i));
    long a = s.next().get_si();
    long b = s.next().get_si();
    ++counts[{a, b}];
  }
  for (long a = 1; a <= 3; ++a)
    for (long b = a + 1; b <= 6; ++b) {
      double p = to_double(interval_length(Word({a, b})));
      double se = std::sqrt(p * (1 - p) / N);
      EXPECT_NEAR(static_cast<double>(counts[{a, b}]) / N, p, 4 * se) << a << "," << b;
    }
}

TEST(Sampler, NeighbouringSamplesUncorrelated) {
  const int N = 4000;
  std::vector<double> x, y;
  for (int i = 0; i < N; ++i) {
    x.push_back(LazySample(1, static_cast<std::uint64_t>(2 * i)).next() > 1 ? 1.0 : 0.0);
    y.push_back(LazySample(1, static_cast<std::uint64_t>(2 * i + 1)).next() > 1 ? 1.0 : 0.0);
  }
  double mx = 0, my = 0;
  for (int i = 0; i < N; ++i) {
    mx += x[static_cast<size_t>(i)] / N;
    my += y[static_cast<size_t>(i)] / N;
  }
  double cov = 0, vx = 0, vy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my);
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
  }
  EXPECT_LT(std::fabs(cov / std::sqrt(vx * vy)), 4.0 / std::sqrt(static_cast<double>(N)));
}

TEST(Statistics, SyntheticWords) {
  Word en = word_from_logs(120, [](long k) { return static_cast<double>(k); });
  EXPECT_NEAR(lln_stat(en, 100), 1.0, 1e-3);
  EXPECT_NEAR(clt_stat(en, 100), 0.0, 1e-3);
  EXPECT_NEAR(lil_stat(en, 100), 0.0, 1e-3);
  Word shifted = word_from_logs(120, [](long k) { return k + std::sqrt(static_cast<double>(k)); });
  EXPECT_NEAR(clt_stat(shifted, 100), 1.0, 1e-3);
  std::vector<BigInt> lin;
  for (long k = 1; k <= 100; ++k) lin.emplace_back(k);
  EXPECT_NEAR(lln_stat(Word(lin), 100), std::log(100.0) / 100.0, 1e-12);
  EXPECT_NEAR(lln_stat(Word(lin), 100), 0.04605, 1e-5);
}

TEST(Statistics, LengthAndDomainErrors) {
  Word w({1, 2, 3});
  EXPECT_THROW(lln_stat(w, 4), std::invalid_argument);
  EXPECT_THROW(clt_stat(w, 0), std::invalid_argument);
  EXPECT_THROW(lil_stat(w, 2), std::invalid_argument);
}

TEST(NormalCdf, Values) {
  EXPECT_DOUBLE_EQ(normal_cdf(0), 0.5);
  EXPECT_NEAR(normal_cdf(1.96), 0.9750021048517795, 1e-12);
  for (double t : {0.3, 1.1, 2.5, 4.0}) EXPECT_NEAR(normal_cdf(-t), 1 - normal_cdf(t), 1e-15);
}

TEST(Ks, DegenerateSamples) {
  EXPECT_DOUBLE_EQ(ks_distance({0.0}, normal_cdf), 0.5);
  double c = 0.7;
  EXPECT_NEAR(ks_distance({c, c, c}, normal_cdf), std::max(normal_cdf(c), 1 - normal_cdf(c)), 1e-15);
  EXPECT_THROW(ks_distance({}, normal_cdf), std::invalid_argument);
}

TEST(Ks, SelfTest) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nd;
  std::vector<double> v(10000);
  for (auto& x : v) x = nd(rng);
  EXPECT_LT(ks_distance(v, normal_cdf), 0.02);
  for (auto& x : v) x += 0.2;
  EXPECT_GT(ks_distance(v, normal_cdf), 0.05);
}

TEST(RunLaw, ThreadCountDoesNotChangeResults) {
  LawConfig c{Law::CLT, 80, 40, 9, 1};
  auto one = run_law(c);
  c.threads = 4;
  auto four = run_law(c);
  EXPECT_EQ(one.statistics, four.statistics);
  ASSERT_TRUE(one.ks_distance);
  EXPECT_DOUBLE_EQ(*one.ks_distance, *four.ks_distance);
}

TEST(RunLaw, LlnMean) {
  auto r = run_law({Law::LLN, 200, 2000, 42, 0});
  EXPECT_GE(r.summary.mean, 0.95);
  EXPECT_LE(r.summary.mean, 1.05);
  EXPECT_EQ(r.sample_count, 2000);
  EXPECT_LE(r.summary.min, r.summary.q25);
  EXPECT_LE(r.summary.q25, r.summary.median);
  EXPECT_LE(r.summary.median, r.summary.q75);
  EXPECT_LE(r.summary.q75, r.summary.max);
}

TEST(RunLaw, LilRunningExtremes) {
  auto r = run_law({Law::LIL, 500, 20, 5, 0});
  ASSERT_EQ(r.running_max.size(), 20u);
  for (size_t i = 0; i < 20; ++i) {
    EXPECT_GE(r.running_max[i], r.statistics[i]);
    EXPECT_LE(r.running_min[i], r.statistics[i]);
  }
  ASSERT_TRUE(r.lil_pass_rate);
  EXPECT_THROW(run_law({Law::LIL, 2, 5, 1, 0}), std::invalid_argument);
  EXPECT_THROW(run_law({Law::LLN, 0, 5, 1, 0}), std::invalid_argument);
}

TEST(RunLaw, ParseLaw) {
  EXPECT_EQ(parse_law("clt"), Law::CLT);
  EXPECT_THROW(parse_law("xyz"), std::invalid_argument);
}
