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

GrowthProfile n() { return GrowthProfile::index(); }

// Strictly increasing words with l_k < s_k <= r_k, counted digit by digit.
long brute_count(const std::vector<Rational>& l, const std::vector<Rational>& r, size_t k = 0, long prev = 0) {
  if (k == l.size()) return 1;
  long total = 0;
  long lo = floor(l[k]).get_si(), hi = floor(r[k]).get_si();
  for (long d = std::max(lo + 1, prev + 1); d <= hi; ++d) total += brute_count(l, r, k + 1, d);
  return total;
}

// Random nested table profile: floor(r_k) <= floor(l_{k+1}), widths >= 2.
std::pair<std::vector<Rational>, std::vector<Rational>> random_nested(std::mt19937_64& rng, size_t len) {
  std::vector<Rational> l, r;
  Rational cur = q(static_cast<long>(rng() % 7), 1) + q(static_cast<long>(rng() % 4), 4);
  for (size_t k = 0; k < len; ++k) {
    Rational width = Rational(2) + q(static_cast<long>(rng() % 40), 4);
    l.push_back(cur);
    r.push_back(cur + width);
    cur = Rational(floor(cur + width)) + q(static_cast<long>(rng() % 8), 4);
  }
  return {l, r};
}

SetSpec spec(Family f) {
  SetSpec s;
  s.family = f;
  return s;
}

}  // namespace

TEST(Upsilon, TableExample) {
  auto b = BoundsProfile::from_tables({Rational(2), Rational(4)}, {Rational(4), Rational(8)});
  EXPECT_EQ(upsilon_count(2, b), 8);
  auto words = upsilon_enumerate(2, b);
  EXPECT_EQ(words.size(), 8u);
  auto ranges = digit_ranges(b, 2);
  EXPECT_EQ(ranges[0].second - ranges[0].first, 2);
  EXPECT_EQ(ranges[1].second - ranges[1].first, 4);
}

TEST(Upsilon, FirstLevelWords) {
  auto b = BoundsProfile::from_tables({Rational(2)}, {Rational(4)});
  auto words = upsilon_enumerate(1, b);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[0], Word({3}));
  EXPECT_EQ(words[1], Word({4}));
}

TEST(Upsilon, EmptyLevelGivesZero) {
  auto b = BoundsProfile::from_tables({Rational(2), q(51, 10)}, {Rational(5), q(59, 10)});
  EXPECT_EQ(upsilon_count(2, b), 0);
  EXPECT_TRUE(upsilon_enumerate(2, b).empty());
}

TEST(Upsilon, MatchesBruteForceOnRandomProfiles) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 100; ++t) {
    auto [l, r] = random_nested(rng, 1 + rng() % 4);
    auto b = BoundsProfile::from_tables(l, r);
    long n = static_cast<long>(l.size());
    long want = brute_count(l, r);
    EXPECT_EQ(upsilon_count(n, b), want);
    auto words = upsilon_enumerate(n, b);
    EXPECT_EQ(static_cast<long>(words.size()), want);
    for (const Word& w : words) {
      EXPECT_TRUE(is_admissible(w.view()));
      EXPECT_TRUE(in_window(w, b));
    }
  }
}

TEST(Upsilon, CountInsideBracket) {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 100; ++t) {
    auto [l, r] = random_nested(rng, 1 + rng() % 4);
    auto b = BoundsProfile::from_tables(l, r);
    long n = static_cast<long>(l.size());
    CountBracket c = count_bracket(n, b);
    Rational count(upsilon_count(n, b));
    EXPECT_LE(c.lower, count);
    EXPECT_LE(count, c.upper);
  }
}

TEST(Upsilon, RefusesOverlapAndCap) {
  auto overlap = BoundsProfile::from_tables({Rational(1), Rational(2)}, {Rational(5), Rational(9)});
  EXPECT_THROW(upsilon_count(2, overlap), std::invalid_argument);
  auto b = BoundsProfile::from_pair(Rational(2) * n(), Rational(2) * n() + Rational(2));
  EXPECT_THROW(upsilon_enumerate(12, b, 100), std::length_error);
}

TEST(Conditions, PurePrefixProfile) {
  auto b = BoundsProfile::from_pair(Rational(2) * n(), Rational(2) * n() + Rational(2));
  EXPECT_TRUE(check_conditions(b, 1, 200).ok);
  auto t = find_threshold_K(b, 200);
  ASSERT_TRUE(t.K);
  EXPECT_EQ(*t.K, 0);
  for (long k = 1; k <= 20; ++k) {
    EXPECT_EQ(*b.width.exact(k), 2);
    EXPECT_EQ(*b.upper.exact(k), *b.lower.exact(k + 1));
  }
}

TEST(Conditions, UnitWidthHasNoThreshold) {
  auto b = BoundsProfile::from_pair(n(), n() + Rational(1));
  auto rep = check_conditions(b, 1, 50);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.condition, 1);
  EXPECT_FALSE(find_threshold_K(b, 50).K);
}

TEST(EstarBounds, GeometricProfile) {
  auto u = catalog::geometric_u(Rational(3));
  auto b = estar_bounds(u.profile, 200);
  EXPECT_EQ(*b.lower.exact(2), 36);
  EXPECT_EQ(*b.upper.exact(2), 54);
  for (long k = 1; k <= 30; ++k) {
    EXPECT_EQ(*b.width.exact(k), *u.profile.exact(k));
    Rational step = *b.lower.exact(k + 1) - *b.upper.exact(k);
    EXPECT_EQ(step, Rational(k + 1) * (*u.profile.exact(k + 1) - *u.profile.exact(k)));
    EXPECT_GE(step, 0);
  }
  auto t = find_threshold_K(b, 200);
  ASSERT_TRUE(t.K);
  EXPECT_EQ(*t.K, 0);
}

TEST(EstarBounds, RejectsSmallOrDecreasingU) {
  EXPECT_THROW(estar_bounds(GrowthProfile::constant(Rational(1)), 10), std::invalid_argument);
  EXPECT_THROW(estar_bounds(GrowthProfile::table({Rational(5), Rational(4), Rational(6)}), 2),
               std::invalid_argument);
}

TEST(CltBounds, SqrtPsiBetaZero) {
  auto psi = catalog::power_psi(q(1, 2));
  auto b = clt_bounds(psi.profile, Rational(0), 2000);
  long K = b.threshold_K;
  EXPECT_TRUE(check_conditions(b, K + 1, 2000).ok);
  for (long k = 1; k <= K; ++k) EXPECT_EQ(*b.width.exact(k), 2);
  // beyond K the lower bound is e^n
  long probe = K + 5;
  EXPECT_NEAR(b.lower.log(probe).to_double(), static_cast<double>(probe), 1e-12);
}

TEST(CltBounds, LilPsiPassesWindowChecks) {
  auto psi = catalog::lil_psi();
  EXPECT_EQ(check_psi_window(psi.profile, 10000), "");
  // increments shrink: psi(n+1) - psi(n) -> 0
  double d1 = (psi.profile.value(101) - psi.profile.value(100)).to_double();
  double d2 = (psi.profile.value(10001) - psi.profile.value(10000)).to_double();
  EXPECT_LT(d2, d1);
  EXPECT_LT(d2, 0.05);
}

TEST(Catalog, LimitsMatchWindows) {
  // sqrt: xi -> 0 ; n^2: xi -> 0 ; 3^n: xi -> 2 ; 2 log n: theta -> 1 slowly
  auto xi_sqrt = estimate_limits(catalog::sqrt_phi().profile, LimitQuantity::Xi, 1, 4000);
  EXPECT_LT(xi_sqrt.last, 0.01);
  auto xi_sq = estimate_limits(catalog::square_phi().profile, LimitQuantity::Xi, 1, 4000);
  EXPECT_LT(xi_sq.last, 0.01);
  auto xi_exp = estimate_limits(catalog::exponential_phi(Rational(3)).profile, LimitQuantity::Xi, 1, 400);
  EXPECT_NEAR(xi_exp.tail_min, 2.0, 1e-9);
  EXPECT_NEAR(xi_exp.tail_max, 2.0, 1e-9);
  EXPECT_EQ(xi_exp.stability, Stability::Settled);
  auto theta = estimate_limits(catalog::log_phi(Rational(2)).profile, LimitQuantity::Theta, 2, 10000);
  double L = std::log(10000.0);
  EXPECT_NEAR(theta.last, L / (L - 1), 0.01);
  auto gamma = estimate_limits(catalog::log_phi(Rational(2)).profile, LimitQuantity::Gamma, 2, 1000);
  EXPECT_NEAR(gamma.last, 2.0, 1e-12);
  auto eta = estimate_limits(catalog::geometric_u(Rational(3)).profile, LimitQuantity::Eta, 1, 4000);
  EXPECT_LT(eta.last, 0.2);
  EXPECT_LT(eta.last, eta.values[eta.values.size() / 2]);
}

TEST(Catalog, StoredLimits) {
  auto s = catalog::sqrt_phi();
  EXPECT_FALSE(s.info.gamma->is_finite());
  EXPECT_EQ(*s.info.xi, 0);
  EXPECT_EQ(*catalog::exponential_phi(Rational(3)).info.xi, 2);
  EXPECT_EQ(builtin_profiles().size(), 12u);
}

TEST(Stability, Classifier) {
  std::vector<double> flat(40, 1.0), grow, wobble;
  for (int i = 1; i <= 40; ++i) {
    grow.push_back(std::exp(0.2 * i));
    wobble.push_back(i % 2 ? 0.0 : 1.0);
  }
  EXPECT_EQ(classify_window(flat), Stability::Settled);
  EXPECT_EQ(classify_window(grow), Stability::Diverging);
  EXPECT_EQ(classify_window(wobble), Stability::Unsettled);
  EXPECT_EQ(classify_window({1.0, 1.0}), Stability::Unsettled);
}

TEST(Emptiness, ParameterRules) {
  SetSpec a = spec(Family::A_alpha);
  a.alpha = ExtReal::finite(q(1, 2));
  EXPECT_EQ(emptiness_check(a), Emptiness::EmptyProven);
  SetSpec e = spec(Family::E_alpha_beta);
  e.alpha = ExtReal::finite(2);
  e.beta = ExtReal::finite(-1);
  EXPECT_EQ(emptiness_check(e), Emptiness::EmptyProven);
  SetSpec p = spec(Family::E_phi);
  p.profile = catalog::square_phi();
  EXPECT_EQ(emptiness_check(p), Emptiness::NonemptyOrUnknown);
  SetSpec g = spec(Family::E_phi);
  g.profile = catalog::log_phi(q(1, 2));
  EXPECT_EQ(emptiness_check(g), Emptiness::EmptyProven);
}

TEST(Emptiness, WindowCertifiedForUncataloguedPhi) {
  SetSpec s = spec(Family::E_phi);
  s.profile = NamedProfile{q(1, 2) * log(n() + Rational(1)), ProfileInfo{"half_log", "generic", "", {}, {}, {}, {}}};
  EXPECT_EQ(emptiness_check(s, 2000), Emptiness::EmptyWindowCertified);
}

TEST(Emptiness, InfeasibleWindows) {
  SetSpec s = spec(Family::E_bounds);
  s.bounds = BoundsProfile::from_tables({Rational(2), Rational(2)}, {Rational(3), Rational(3)});
  EXPECT_EQ(emptiness_check(s), Emptiness::EmptyProven);
  s.bounds = BoundsProfile::from_tables({Rational(2), Rational(3)}, {Rational(3), Rational(5)});
  EXPECT_EQ(emptiness_check(s), Emptiness::NonemptyOrUnknown);
}

TEST(Membership, ForAllFamilies) {
  SetSpec a = spec(Family::A_kappa);
  a.kappa = ExtReal::finite(1);
  auto r = membership(Word({1, 5, 30}), a, 3);
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(r.failing_index, 1);
  EXPECT_EQ(membership(Word({3, 8, 21}), a, 3).verdict, Verdict::SatisfiedSoFar);

  SetSpec b = spec(Family::B_kappa);
  b.kappa = ExtReal::finite(1);
  EXPECT_EQ(membership(Word({1, 2, 3}), b, 3).verdict, Verdict::Violated);
  b.kappa = ExtReal::finite(2);
  EXPECT_EQ(membership(Word({2, 3, 5}), b, 3).verdict, Verdict::SatisfiedSoFar);
  auto v = membership(Word({2, 3, 7}), b, 3);
  EXPECT_EQ(v.verdict, Verdict::Violated);
  EXPECT_EQ(v.failing_index, 3);
}

TEST(Membership, RatioOfLogsForDoublyExponentialDigits) {
  std::vector<BigInt> d;
  for (long k = 1; k <= 6; ++k) d.push_back(BigInt(1) << static_cast<mp_bitcnt_t>(1L << k));
  SetSpec f = spec(Family::F_alpha);
  f.alpha = ExtReal::finite(2);
  Word w(d);
  for (size_t h = 2; h <= 6; ++h) {
    auto r = membership(w, f, h);
    EXPECT_EQ(r.verdict, Verdict::EstimateOnly);
    EXPECT_NEAR(*r.estimate, 2.0, 1e-12);
  }
}

TEST(Membership, GenericWindowFamily) {
  SetSpec s = spec(Family::S_generic);
  s.h1 = DigitMap::affine(Rational(2));
  s.h2 = DigitMap::affine(Rational(1));
  s.h3 = DigitMap::affine(Rational(3));
  EXPECT_EQ(membership(Word({1, 3, 7, 20}), s, 4).verdict, Verdict::SatisfiedSoFar);
  auto r = membership(Word({1, 3, 5}), s, 3);
  EXPECT_EQ(r.verdict, Verdict::Violated);
  EXPECT_EQ(r.failing_index, 3);
}

TEST(SpecJson, ParsesFamiliesAndRejectsBadInput) {
  auto s = set_spec_from_json(Json::parse(R"({"family":"F_alpha","params":{"alpha":"inf"}})"));
  EXPECT_EQ(s.family, Family::F_alpha);
  EXPECT_FALSE(s.alpha.is_finite());
  auto e = set_spec_from_json(Json::parse(R"({"family":"E_alpha_beta","params":{"alpha":"-3","beta":"-inf"}})"));
  EXPECT_EQ(e.alpha.value, -3);
  EXPECT_THROW(set_spec_from_json(Json::parse(R"({"family":"E_phi"})")), std::invalid_argument);
  EXPECT_THROW(set_spec_from_json(Json::parse(R"({"family":"nope"})")), std::invalid_argument);
  EXPECT_THROW(set_spec_from_json(Json::parse(R"({"family":"E_alpha_beta","params":{"alpha":"inf"}})")),
               std::invalid_argument);
}

TEST(Fixture, SqrtShiftWord) {
  Word w = sqrt_shift_word(40);
  ASSERT_EQ(w.size(), 40u);
  EXPECT_EQ(w[0], 2);
  EXPECT_EQ(w[1], 30);
  // d_n = floor(e^{n - [n odd] + sqrt(n)}), checked at 512 bits
  for (size_t k = 0; k < 40; ++k) {
    int n = static_cast<int>(k + 1);
    Real x = exp(Real(n % 2 ? n - 1 : n, 512) + sqrt(Real(n, 512)));
    EXPECT_LE(Real(w[k], 512), x) << "n=" << n;
    EXPECT_GT(Real(BigInt(w[k] + 1), 512), x) << "n=" << n;
  }
  EXPECT_THROW(sqrt_shift_word(1), std::invalid_argument);
}
