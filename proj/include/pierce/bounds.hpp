#pragma once

// Digit-window profiles l_n < d_n <= r_n and the finite combinatorics they
// induce: admissible word counts, enumeration, gap bounds and the index past
// which the structural conditions hold.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pierce/intervals.hpp"
#include "pierce/profile.hpp"

namespace pierce {

/// Pair of growth profiles with l_n < r_n, plus the width r_n - l_n kept as
/// its own expression so that it stays accurate in log space.
struct BoundsProfile {
  GrowthProfile lower;
  GrowthProfile upper;
  GrowthProfile width;
  long threshold_K = 0;  ///< levels <= K use the fallback window (2n, 2(n+1)]
  std::string label;

  static BoundsProfile from_pair(GrowthProfile l, GrowthProfile r, std::string label = "") {
    BoundsProfile b{l, r, r - l, 0, std::move(label)};
    return b;
  }
  static BoundsProfile from_tables(const std::vector<Rational>& l, const std::vector<Rational>& r) {
    if (l.size() != r.size()) throw std::invalid_argument("bound tables differ in length");
    std::vector<Rational> w(l.size());
    for (size_t i = 0; i < l.size(); ++i) w[i] = r[i] - l[i];
    return {GrowthProfile::table(l), GrowthProfile::table(r), GrowthProfile::table(w), 0, "table"};
  }

  BigInt floor_lower(long n) const { return lower.floor(n); }
  BigInt floor_upper(long n) const { return upper.floor(n); }

  /// Largest level the profile is defined on (-1 when unbounded).
  long max_level() const {
    long a = lower.max_index(), b = upper.max_index();
    if (a < 0) return b;
    if (b < 0) return a;
    return std::min(a, b);
  }
};

/// Result of checking the three structural conditions on a range of levels.
struct ConditionReport {
  bool ok = true;
  int condition = 0;  ///< 1: width >= 2, 2: r_n <= 2 l_n - 1, 3: r_n <= l_{n+1}
  long index = 0;
  std::string message;
};

namespace detail {

// Non-strict comparisons accept an unresolved tie: at 4096 bits that only
// happens for values that agree symbolically.
inline bool at_least(Ordering o) { return o != Ordering::Less; }
inline bool at_most(Ordering o) { return o != Ordering::Greater; }

inline bool width_ok(const BoundsProfile& b, long n) { return at_least(compare_value(b.width, n, Rational(2))); }
inline bool doubling_ok(const BoundsProfile& b, long n) {
  // r_n <= 2 l_n - 1  <=>  l_n - width_n >= 1
  return at_least(compare_value(b.lower - b.width, n, Rational(1)));
}
inline bool nesting_ok(const BoundsProfile& b, long n) { return at_most(compare_values(b.upper, n, b.lower, n + 1)); }

}  // namespace detail

/// Checks width >= 2 on [from, to], r_n <= 2 l_n - 1 on [max(2, from), to] and
/// r_n <= l_{n+1} on [from, to]. Stops at the first failure.
inline ConditionReport check_conditions(const BoundsProfile& b, long from, long to) {
  for (long n = from; n <= to; ++n) {
    if (!detail::width_ok(b, n)) return {false, 1, n, "r_n - l_n < 2 at n=" + std::to_string(n)};
    if (n >= 2 && !detail::doubling_ok(b, n)) return {false, 2, n, "r_n > 2 l_n - 1 at n=" + std::to_string(n)};
    if (!detail::nesting_ok(b, n)) return {false, 3, n, "r_n > l_{n+1} at n=" + std::to_string(n)};
  }
  return {};
}

struct ThresholdResult {
  std::optional<long> K;
  int failing_condition = 0;  ///< condition that failed at the largest index (0: splice)
  long failing_index = 0;
  std::string message;
};

/// Smallest K such that the profile satisfies the structural conditions on
/// (K, n_limit] and, when K >= 1, the fallback window 2(K+1) <= l_{K+1} splices in.
inline ThresholdResult find_threshold_K(const BoundsProfile& tail, long n_limit) {
  if (n_limit < 2) throw std::invalid_argument("n_limit must be at least 2");
  ThresholdResult res;
  long last_fail = 0;
  for (long n = n_limit; n >= 1; --n) {
    int failed = 0;
    if (!detail::width_ok(tail, n)) failed = 1;
    else if (n >= 2 && !detail::doubling_ok(tail, n)) failed = 2;
    else if (!detail::nesting_ok(tail, n)) failed = 3;
    if (failed) {
      last_fail = n;
      res.failing_condition = failed;
      res.failing_index = n;
      break;
    }
  }
  if (last_fail == 0) {
    res.K = 0;
    return res;
  }
  for (long K = last_fail; K < n_limit; ++K) {
    // index K+1 >= 2 now needs the doubling condition too
    if (K + 1 <= n_limit && !detail::doubling_ok(tail, K + 1)) continue;
    if (detail::at_least(compare_value(tail.lower, K + 1, Rational(2 * (K + 1))))) {
      res.K = K;
      return res;
    }
  }
  res.message = "no threshold below n_limit=" + std::to_string(n_limit) + "; condition " +
                std::to_string(res.failing_condition) + " fails at n=" + std::to_string(res.failing_index);
  return res;
}

/// Replaces levels <= K by the window (2n, 2(n+1)].
inline BoundsProfile splice_fallback(const BoundsProfile& tail, long K) {
  if (K <= 0) return tail;
  auto n = GrowthProfile::index();
  BoundsProfile out;
  out.lower = GrowthProfile::piecewise(K, Rational(2) * n, tail.lower);
  out.upper = GrowthProfile::piecewise(K, Rational(2) * n + Rational(2), tail.upper);
  out.width = GrowthProfile::piecewise(K, GrowthProfile::constant(Rational(2)), tail.width);
  out.threshold_K = K;
  out.label = tail.label;
  return out;
}

/// l_n = n u_n, r_n = (n+1) u_n. Requires 2 <= u_n <= u_{n+1} on [1, window].
inline BoundsProfile estar_bounds(const GrowthProfile& u, long window = 10000) {
  for (long n = 1; n <= window; ++n) {
    if (!detail::at_least(compare_value(u, n, Rational(2))))
      throw std::invalid_argument("u_n < 2 at n=" + std::to_string(n));
    if (!detail::at_most(compare_values(u, n, u, n + 1)))
      throw std::invalid_argument("u is decreasing at n=" + std::to_string(n));
  }
  auto n = GrowthProfile::index();
  BoundsProfile b;
  b.lower = n * u;
  b.upper = (n + Rational(1)) * u;
  b.width = u;
  b.label = "estar(" + u.describe() + ")";
  return b;
}

/// Checks the two window conditions on psi used by the central-limit profile:
/// increments eventually small (sup over the second half below 1/2) and no
/// exponential decay (log psi(N) / N > -1/100). Returns an empty string when
/// both hold, otherwise the reason.
inline std::string check_psi_window(const GrowthProfile& psi, long window) {
  if (window < 4) return "window too short";
  Real worst(0);
  for (long n = 1; n <= window; ++n) {
    if (compare_value(psi, n, Rational(0)) != Ordering::Greater) return "psi is not positive at n=" + std::to_string(n);
    if (n >= window / 2 && n < window) {
      Real d = abs(psi.value(n + 1) - psi.value(n));
      if (d > worst) worst = d;
    }
  }
  if (worst >= Real(0.5)) return "psi increments do not settle (sup " + worst.str(6) + " on the second half)";
  if (psi.log(window) / Real::from_long(window) <= Real(-0.01)) return "psi decays exponentially";
  return "";
}

/// Profile built from f(n) = n + beta psi(n): L_n = e^{f(n)},
/// R_n = (1 + psi(n)/n) L_n, with the fallback window below the threshold.
inline BoundsProfile clt_bounds(const GrowthProfile& psi, const Rational& beta, long n_limit = 10000) {
  if (std::string why = check_psi_window(psi, n_limit); !why.empty())
    throw std::invalid_argument("psi rejected: " + why);
  auto n = GrowthProfile::index();
  GrowthProfile L = exp(n + beta * psi);
  GrowthProfile ratio = psi / n;
  BoundsProfile tail{L, (Rational(1) + ratio) * L, ratio * L, 0, ""};
  ThresholdResult t = find_threshold_K(tail, n_limit);
  if (!t.K) throw std::domain_error("no splice threshold: " + t.message);
  BoundsProfile b = splice_fallback(tail, *t.K);
  b.label = "clt(psi=" + psi.describe() + ", beta=" + beta.get_str() + ")";
  return b;
}

/// Floors (floor l_k, floor r_k) for k = 1..n.
inline std::vector<std::pair<BigInt, BigInt>> digit_ranges(const BoundsProfile& b, long n) {
  std::vector<std::pair<BigInt, BigInt>> out;
  out.reserve(static_cast<size_t>(n));
  for (long k = 1; k <= n; ++k) out.emplace_back(b.floor_lower(k), b.floor_upper(k));
  return out;
}

/// Number of words of length n with l_k < d_k <= r_k for every k.
inline BigInt upsilon_count(long n, const BoundsProfile& b) {
  if (n < 1) throw std::invalid_argument("level must be >= 1");
  auto ranges = digit_ranges(b, n);
  BigInt count = 1;
  for (size_t k = 0; k < ranges.size(); ++k) {
    const auto& [fl, fr] = ranges[k];
    if (fr < fl) throw std::invalid_argument("r_k < l_k at k=" + std::to_string(k + 1));
    if (k + 1 < ranges.size() && fr > ranges[k + 1].first)
      throw std::invalid_argument("digit windows overlap at k=" + std::to_string(k + 1) +
                                  "; product count needs floor r_k <= floor l_{k+1}");
    count *= fr - fl;
  }
  return count;
}

/// All words of length n in the window product, in lexicographic order.
/// Refuses when the count exceeds `cap`.
inline std::vector<Word> upsilon_enumerate(long n, const BoundsProfile& b, size_t cap = 1000000) {
  BigInt count = upsilon_count(n, b);
  if (count > cap) throw std::length_error("enumeration of " + count.get_str() + " words exceeds cap " + std::to_string(cap));
  auto ranges = digit_ranges(b, n);
  std::vector<Word> out;
  out.reserve(count.get_ui());
  if (count == 0) return out;
  std::vector<BigInt> cur;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == ranges.size()) {
      out.emplace_back(cur);
      return;
    }
    for (BigInt d = ranges[k].first + 1; d <= ranges[k].second; ++d) {
      cur.push_back(d);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// True when l_k < w_k <= r_k for every k <= |w|.
inline bool in_window(const Word& w, const BoundsProfile& b) {
  for (size_t k = 0; k < w.size(); ++k) {
    long idx = static_cast<long>(k) + 1;
    if (w[k] <= b.floor_lower(idx) || w[k] > b.floor_upper(idx)) return false;
  }
  return true;
}

/// Constant c = D/(D-1), D = min_{k<=n} width_k, together with the bracket
/// c^{-n} prod width_k <= count <= c^n prod width_k. Needs exact widths.
struct CountBracket {
  Rational c;
  Rational lower;
  Rational upper;
};

inline CountBracket count_bracket(long n, const BoundsProfile& b) {
  Rational prod = 1, dmin;
  for (long k = 1; k <= n; ++k) {
    auto w = b.width.exact(k);
    if (!w) throw std::domain_error("count bracket needs rational widths");
    if (k == 1 || *w < dmin) dmin = *w;
    prod *= *w;
  }
  if (dmin <= 1) throw std::domain_error("count bracket needs widths above 1");
  Rational c = dmin / (dmin - 1);
  Rational cn = pow(c, static_cast<unsigned long>(n));
  return {c, prod / cn, prod * cn};
}

/// Gap between the basic intervals of w and underline(w) at level n+1.
inline Interval gap_exact(const Word& w, const BoundsProfile& b) {
  long n = static_cast<long>(w.size());
  return gap_interval_from_floors(w, b.floor_lower(n + 1), b.floor_upper(n + 1));
}

/// log of eps_n = 1/2 prod_{k<=n} (1/r_k) width_{n+1} / (r_n r_{n+1}).
inline Real log_gap_lower_bound(long n, const BoundsProfile& b, mpfr_prec_t prec = default_precision()) {
  if (n < 1) throw std::invalid_argument("level must be >= 1");
  Real s = -log_real(Rational(2), prec);
  for (long k = 1; k <= n; ++k) s -= b.upper.log(k, prec);
  s += b.width.log(n + 1, prec) - b.upper.log(n, prec) - b.upper.log(n + 1, prec);
  return s;
}

/// eps_n for a word w in the window with floor(l_n)+1 <= w_n <= floor(r_n)-1,
/// so that underline(w) is admissible too. Needs rational bounds.
inline Rational gap_lower_bound(const Word& w, const BoundsProfile& b) {
  long n = static_cast<long>(w.size());
  if (n < 1) throw std::invalid_argument("gap bound needs a non-empty word");
  if (!in_window(w, b)) throw std::invalid_argument("word " + w.str() + " is outside the digit windows");
  if (w.back() > b.floor_upper(n) - 1) throw std::invalid_argument("last digit leaves no room for underline(w)");
  auto exact = [&](const GrowthProfile& f, long k) {
    auto q = f.exact(k);
    if (!q) throw std::domain_error("gap bound needs rational bounds; use log_gap_lower_bound");
    return *q;
  };
  Rational prod = 1;
  for (long k = 1; k <= n; ++k) prod *= exact(b.upper, k);
  Rational eps = exact(b.width, n + 1) / (2 * prod * exact(b.upper, n) * exact(b.upper, n + 1));
  return eps;
}

}  // namespace pierce
