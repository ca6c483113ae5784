#include <gtest/gtest.h>

#include "pierce/pierce.hpp"

using namespace pierce;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Every admissible word of length 1..max_len with digits <= max_digit.
std::vector<Word> small_words(size_t max_len, long max_digit) {
  std::vector<Word> out;
  std::vector<Word> frontier = {Word()};
  for (size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      long start = w.empty() ? 1 : w.back().get_si() + 1;
      for (long j = start; j <= max_digit; ++j) next.push_back(extend(w, j));
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

bool starts_with(const Word& w, const Word& prefix) {
  if (w.size() < prefix.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i)
    if (w[i] != prefix[i]) return false;
  return true;
}

// Two intervals share a point.
bool overlap(const Interval& a, const Interval& b) {
  if (a.hi < b.lo || b.hi < a.lo) return false;
  if (a.hi == b.lo) return a.hi_closed && b.lo_closed;
  if (b.hi == a.lo) return b.hi_closed && a.lo_closed;
  return true;
}

bool inside(const Interval& child, const Interval& parent) {
  bool lo_ok = child.lo > parent.lo || (child.lo == parent.lo && (parent.lo_closed || !child.lo_closed));
  bool hi_ok = child.hi < parent.hi || (child.hi == parent.hi && (parent.hi_closed || !child.hi_closed));
  return lo_ok && hi_ok;
}

}  // namespace

TEST(FundamentalInterval, Examples) {
  EXPECT_EQ(fundamental_interval(Word({2})), (Interval{q(1, 3), q(1, 2), false, true}));
  EXPECT_EQ(fundamental_interval(Word({1, 3})), (Interval{q(2, 3), q(3, 4), true, false}));
  EXPECT_EQ(fundamental_interval(Word({1, 2})), (Interval{q(1, 2), q(2, 3), false, false}));
}

TEST(IntervalLength, Examples) {
  EXPECT_EQ(interval_length(Word({2})), q(1, 6));
  EXPECT_EQ(interval_length(Word({1, 3})), q(1, 12));
  EXPECT_EQ(interval_length(Word({1, 2, 3})), q(1, 24));
}

TEST(IntervalLength, EqualsEndpointDistance) {
  for (const Word& w : small_words(4, 9)) {
    Rational d = evaluate(w) - evaluate(underline(w));
    EXPECT_EQ(interval_length(w), abs(d)) << w.str();
    EXPECT_EQ(fundamental_interval(w).length(), interval_length(w)) << w.str();
  }
}

// x lies in I(w) exactly when the expansion of x starts with w.
TEST(FundamentalInterval, PrefixDuality) {
  auto words = small_words(3, 8);
  std::vector<std::pair<Rational, Word>> points;
  for (long d = 1; d <= 80; ++d)
    for (long p = 1; p <= d; ++p)
      if (std::gcd(p, d) == 1) points.emplace_back(q(p, d), expand(q(p, d)).digits);
  for (const Word& w : words) {
    Interval iv = fundamental_interval(w);
    for (const auto& [x, digits] : points) ASSERT_EQ(iv.contains(x), starts_with(digits, w)) << w.str() << " x=" << x;
  }
}

TEST(FundamentalInterval, SiblingsDisjointChildrenNested) {
  auto words = small_words(3, 8);
  for (size_t i = 0; i < words.size(); ++i) {
    const Word& a = words[i];
    Interval ia = fundamental_interval(a);
    if (a.size() > 1) {
      EXPECT_TRUE(inside(ia, fundamental_interval(a.prefix(a.size() - 1)))) << a.str();
    }
    for (size_t j = i + 1; j < words.size(); ++j) {
      const Word& b = words[j];
      if (b.size() != a.size() || !(a.prefix(a.size() - 1) == b.prefix(b.size() - 1))) continue;
      EXPECT_FALSE(overlap(ia, fundamental_interval(b))) << a.str() << " vs " << b.str();
    }
  }
}

// sum_{j=s_n+1}^{J} len I(w j) + prod(1/w)/(J+1) = len I(w)
TEST(IntervalLength, ChildrenTelescope) {
  for (const Word& w : small_words(3, 7)) {
    Rational sum = 0;
    long J = w.back().get_si() + 25;
    for (long j = w.back().get_si() + 1; j <= J; ++j) sum += interval_length(extend(w, j));
    Rational tail(BigInt(1), digit_product(w.view()) * (J + 1));
    EXPECT_EQ(sum + tail, interval_length(w)) << w.str();
  }
}

TEST(BasicInterval, Examples) {
  EXPECT_EQ(basic_interval(Word(), Rational(2), Rational(4)), (Interval{q(1, 5), q(1, 3), true, true}));
  EXPECT_EQ(basic_interval(Word({3}), Rational(4), Rational(6)), (Interval{q(4, 15), q(2, 7), true, true}));
}

// J(w) is the closed hull of the child cylinders, and its length matches the
// product formula.
TEST(BasicInterval, HullOfChildren) {
  for (const Word& w : small_words(2, 6)) {
    long last = w.back().get_si();
    for (long fl = last; fl <= last + 3; ++fl)
      for (long fr = fl + 1; fr <= fl + 4; ++fr) {
        Rational lo = 2, hi = -1;
        for (long j = fl + 1; j <= fr; ++j) {
          Interval c = fundamental_interval(extend(w, j));
          lo = std::min(lo, c.lo);
          hi = std::max(hi, c.hi);
        }
        Interval b = basic_interval_from_floors(w, fl, fr);
        EXPECT_EQ(b, (Interval{lo, hi, true, true})) << w.str();
        EXPECT_EQ(b.length(), basic_interval_diameter(w, fl, fr));
        Rational formula = (Rational(1, fl + 1) - Rational(1, fr + 1)) / Rational(digit_product(w.view()));
        EXPECT_EQ(b.length(), formula);
      }
  }
}

TEST(BasicInterval, RejectsEmptyRange) {
  EXPECT_THROW(basic_interval(Word({2}), Rational(5), Rational(5)), std::invalid_argument);
  EXPECT_THROW(basic_interval(Word({4}), Rational(2), Rational(6)), std::invalid_argument);
}

TEST(GapBound, FirstLevelValue) {
  BoundsProfile b = BoundsProfile::from_pair(Rational(2) * GrowthProfile::index(),
                                             Rational(2) * GrowthProfile::index() + Rational(2));
  EXPECT_EQ(gap_lower_bound(Word({3}), b), q(1, 96));
}

TEST(GapExact, SeparatesNeighbouringBasicIntervals) {
  BoundsProfile b = BoundsProfile::from_pair(Rational(3) * GrowthProfile::index(),
                                             Rational(3) * GrowthProfile::index() + Rational(3));
  Word w({4, 7});
  Interval g = gap_exact(w, b);
  Interval jw = basic_interval_from_floors(w, b.floor_lower(3), b.floor_upper(3));
  Interval ju = basic_interval_from_floors(underline(w), b.floor_lower(3), b.floor_upper(3));
  // even length: J(w) sits to the left of J(underline(w))
  EXPECT_EQ(g.lo, jw.hi);
  EXPECT_EQ(g.hi, ju.lo);
  EXPECT_GT(g.length(), 0);
}
