#pragma once

// Digits of Lebesgue-uniform random points, and the three almost-everywhere
// digit laws checked by Monte Carlo.
//
// Sampling uses the digit chain: given d_{n-1} (d_0 = 0), the next digit of a
// uniform point is floor((d_{n-1} + 1) / U) with U uniform on (0, 1], because
// T^{n-1} x is uniform on (0, 1/(d_{n-1} + 1)] given the first n-1 digits.
// U is refined dyadically, U in (a/2^k, (a+1)/2^k], until the floor is the
// same over the whole interval. The point itself is recovered as
// x = affine_shift(prefix, U / (d_{n-1} + 1)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pierce/intervals.hpp"

namespace pierce {

/// Lazily refined uniform point. Each call to next() emits one certified digit.
class LazySample {
 public:
  explicit LazySample(std::uint64_t seed, std::uint64_t index = 0, long bit_budget = 1L << 20) : budget_(bit_budget) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
  }

  const BigInt& next() {
    BigInt D = digits_.empty() ? BigInt(1) : BigInt(digits_.back() + 1);
    for (;;) {
      if (auto d = draw(D)) {
        prev_d_ = D;
        digits_.push_back(*d);
        return digits_.back();
      }
      ++retries_;  // bit budget exhausted: fresh U for this digit
    }
  }

  Word word() const { return Word(digits_); }
  const std::vector<BigInt>& digits() const { return digits_; }
  long retries() const { return retries_; }
  long bits_used() const { return bits_; }

  /// Interval of points sharing every emitted digit, from the last refinement
  /// of U. Its interior is what the certification covers.
  Interval enclosing_interval() const {
    if (digits_.empty()) return {Rational(0), Rational(1), false, true};
    Rational u_lo(a_, BigInt(1) << static_cast<mp_bitcnt_t>(k_));
    Rational u_hi(a_ + 1, BigInt(1) << static_cast<mp_bitcnt_t>(k_));
    u_lo.canonicalize();
    u_hi.canonicalize();
    Word prefix = Word(std::vector<BigInt>(digits_.begin(), digits_.end() - 1));
    Rational p = affine_shift(prefix, u_lo / Rational(prev_d_));
    Rational q = affine_shift(prefix, u_hi / Rational(prev_d_));
    if (p > q) std::swap(p, q);
    return {p, q, false, false};
  }

 private:
  void add_bits(BigInt& a, long& k, long count) {
    while (count > 0) {
      std::uint64_t r = rng_();
      long take = std::min<long>(64, count);
      if (take < 64) r >>= (64 - take);
      a <<= static_cast<mp_bitcnt_t>(take);
      BigInt chunk;
      mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
      a += chunk;
      k += take;
      count -= take;
      bits_ += take;
    }
  }

  /// floor(D/U) with U in (a/2^k, (a+1)/2^k]: D/U lies in [L, R) with
  /// L = D 2^k/(a+1), R = D 2^k/a, so the floor is q = floor(L) once R <= q+1.
  std::optional<BigInt> draw(const BigInt& D) {
    BigInt a = 0;
    long k = 0;
    add_bits(a, k, 64);
    while (a == 0) {
      if (k > budget_) return std::nullopt;
      add_bits(a, k, 64);
    }
    long lead = k - static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
    long want = static_cast<long>(mpz_sizeinbase(D.get_mpz_t(), 2)) + 2 * lead + 64;
    if (want > k) add_bits(a, k, want - k);
    BigInt num, q, a1;
    for (;;) {
      num = D << static_cast<mp_bitcnt_t>(k);
      a1 = a + 1;
      mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), a1.get_mpz_t());
      if ((q + 1) * a >= num) break;
      if (k > budget_) return std::nullopt;
      add_bits(a, k, 64);
    }
    a_ = a;
    k_ = k;
    return q;
  }

  std::mt19937_64 rng_;
  long budget_;
  std::vector<BigInt> digits_;
  BigInt a_ = 0, prev_d_ = 1;
  long k_ = 0;
  long retries_ = 0;
  long bits_ = 0;
};

/// First n digits of the uniform point number `index` of stream `seed`.
inline Word sample_digits(std::uint64_t seed, long n, std::uint64_t index = 0) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  LazySample s(seed, index);
  for (long i = 0; i < n; ++i) s.next();
  return s.word();
}

namespace detail {
inline const BigInt& digit_at(const Word& w, long n) {
  if (n < 1 || static_cast<size_t>(n) > w.size())
    throw std::invalid_argument("word has " + std::to_string(w.size()) + " digits, level " + std::to_string(n) +
                                " requested");
  return w[static_cast<size_t>(n - 1)];
}
inline double lil_scale(long n) {
  double x = static_cast<double>(n);
  return std::sqrt(2 * x * std::log(std::log(x)));
}
}  // namespace detail

/// (1/n) log d_n
inline double lln_stat(const Word& w, long n) { return log_double(detail::digit_at(w, n)) / static_cast<double>(n); }

/// (log d_n - n) / sqrt(n)
inline double clt_stat(const Word& w, long n) {
  return (log_double(detail::digit_at(w, n)) - static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
}

/// (log d_n - n) / sqrt(2 n log log n), n >= 3
inline double lil_stat(const Word& w, long n) {
  if (n < 3) throw std::invalid_argument("lil statistic needs n >= 3");
  return (log_double(detail::digit_at(w, n)) - static_cast<double>(n)) / detail::lil_scale(n);
}

inline double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

/// sup |F_emp - F| over the sample, checking both sides of every step.
template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance needs samples");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size()), d = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// ---------------------------------------------------------------------------
// Monte Carlo runner

enum class Law { LLN, CLT, LIL };

inline std::string to_string(Law l) {
  switch (l) {
    case Law::LLN: return "lln";
    case Law::CLT: return "clt";
    case Law::LIL: return "lil";
  }
  return "?";
}

inline Law parse_law(const std::string& s) {
  if (s == "lln") return Law::LLN;
  if (s == "clt") return Law::CLT;
  if (s == "lil") return Law::LIL;
  throw std::invalid_argument("unknown law '" + s + "'");
}

struct Summary {
  double mean = 0, stddev = 0;
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

/// Linear-interpolated quantiles of a sample.
inline Summary summarize(std::vector<double> v) {
  Summary s;
  if (v.empty()) return s;
  double n = static_cast<double>(v.size());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.stddev = v.size() > 1 ? std::sqrt(ss / (n - 1)) : 0;
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    double pos = p * (n - 1);
    size_t i = static_cast<size_t>(pos);
    double frac = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] * (1 - frac) + v[i + 1] * frac : v[i];
  };
  s.min = v.front();
  s.q25 = q(0.25);
  s.median = q(0.5);
  s.q75 = q(0.75);
  s.max = v.back();
  return s;
}

struct LawConfig {
  Law law = Law::LLN;
  long n = 200;
  long count = 2000;
  std::uint64_t seed = 42;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

struct LawReport {
  Law law = Law::LLN;
  long n = 0;
  long sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<double> statistics;   ///< statistic at depth n, one per sample
  std::vector<double> running_max;  ///< LIL: max over 3 <= m <= n
  std::vector<double> running_min;  ///< LIL: min over 3 <= m <= n
  Summary summary;
  std::optional<double> ks_distance;  ///< CLT against the standard normal
  std::optional<double> lil_pass_rate;  ///< share with max in (0,3) and min in (-3,0)
  long retries = 0;
};

namespace detail {

struct SampleOutcome {
  double stat = 0, run_max = 0, run_min = 0;
  long retries = 0;
};

inline SampleOutcome run_one(const LawConfig& c, std::uint64_t index) {
  LazySample s(c.seed, index);
  SampleOutcome out;
  out.run_max = -HUGE_VAL;
  out.run_min = HUGE_VAL;
  double last_log = 0;
  for (long m = 1; m <= c.n; ++m) {
    last_log = log_double(s.next());
    if (c.law == Law::LIL && m >= 3) {
      double v = (last_log - static_cast<double>(m)) / lil_scale(m);
      out.run_max = std::max(out.run_max, v);
      out.run_min = std::min(out.run_min, v);
    }
  }
  double n = static_cast<double>(c.n);
  switch (c.law) {
    case Law::LLN: out.stat = last_log / n; break;
    case Law::CLT: out.stat = (last_log - n) / std::sqrt(n); break;
    case Law::LIL: out.stat = (last_log - n) / lil_scale(c.n); break;
  }
  out.retries = s.retries();
  return out;
}

}  // namespace detail

/// Runs `count` independent samples. Sample i uses the stream (seed, i), and
/// results are stored by index, so the report does not depend on the number
/// of threads.
inline LawReport run_law(const LawConfig& c) {
  if (c.n < 1 || c.count < 1) throw std::invalid_argument("n and count must be positive");
  if (c.law == Law::LIL && c.n < 3) throw std::invalid_argument("lil needs n >= 3");
  std::vector<detail::SampleOutcome> res(static_cast<size_t>(c.count));
  unsigned threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(c.count));
  auto work = [&](unsigned t) {
    for (size_t i = t; i < res.size(); i += threads) res[i] = detail::run_one(c, i);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  LawReport r;
  r.law = c.law;
  r.n = c.n;
  r.seed = c.seed;
  r.sample_count = c.count;
  long pass = 0;
  for (const auto& o : res) {
    r.statistics.push_back(o.stat);
    r.retries += o.retries;
    if (c.law == Law::LIL) {
      r.running_max.push_back(o.run_max);
      r.running_min.push_back(o.run_min);
      if (o.run_max > 0 && o.run_max < 3 && o.run_min > -3 && o.run_min < 0) ++pass;
    }
  }
  r.summary = summarize(r.statistics);
  if (c.law == Law::CLT) r.ks_distance = ks_distance(r.statistics, normal_cdf);
  if (c.law == Law::LIL) r.lil_pass_rate = static_cast<double>(pass) / static_cast<double>(c.count);
  return r;
}

}  // namespace pierce
