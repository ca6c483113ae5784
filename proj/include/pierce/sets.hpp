#pragma once

// Digit-defined subsets of (0, 1]: the families, their parameters, prefix
// membership tests, emptiness certificates and a catalog of named profiles.

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pierce/bounds.hpp"
#include "pierce/expansion.hpp"
#include "pierce/limits.hpp"

namespace pierce {

/// Rational or +-infinity.
struct ExtReal {
  int inf = 0;  ///< +1, -1, or 0 for a finite value
  Rational value;

  static ExtReal finite(const Rational& q) { return {0, q}; }
  static ExtReal pos_inf() { return {1, Rational(0)}; }
  static ExtReal neg_inf() { return {-1, Rational(0)}; }
  bool is_finite() const { return inf == 0; }
  double to_double() const { return inf > 0 ? HUGE_VAL : inf < 0 ? -HUGE_VAL : pierce::to_double(value); }
  std::string str() const { return inf > 0 ? "inf" : inf < 0 ? "-inf" : to_string(value); }

  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.inf != b.inf) return a.inf < b.inf;
    return a.inf == 0 && a.value < b.value;
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.inf == b.inf && (a.inf != 0 || a.value == b.value);
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
};

inline ExtReal parse_ext_real(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "infinity") return ExtReal::pos_inf();
  if (s == "-inf" || s == "-infinity") return ExtReal::neg_inf();
  return ExtReal::finite(parse_rational(s));
}

/// Analytic facts known for a catalog profile.
struct ProfileInfo {
  std::string name;
  std::string role;                 ///< "phi", "psi", "u" or "generic"
  std::string tag;                  ///< which dimension formula the profile feeds
  std::optional<ExtReal> gamma;     ///< lim phi(n)/log n
  std::optional<Rational> xi;       ///< limsup phi(n+1)/sum phi(k)
  std::optional<Rational> theta;    ///< liminf n phi(n)/sum phi(k)
  std::optional<ExtReal> eta;       ///< for u profiles
};

struct NamedProfile {
  GrowthProfile profile;
  ProfileInfo info;
};

/// Map x -> a x + b, or x -> c x^p, applied to digit values.
struct DigitMap {
  enum class Kind { Affine, Power } kind = Kind::Affine;
  Rational coef = 1;
  Rational offset = 0;  ///< affine only
  Rational exponent = 1;  ///< power only

  static DigitMap affine(const Rational& a, const Rational& b = 0) { return {Kind::Affine, a, b, 1}; }
  static DigitMap power(const Rational& p, const Rational& c = 1) { return {Kind::Power, c, 0, p}; }

  std::optional<Rational> exact(const BigInt& x) const {
    if (kind == Kind::Affine) return Rational(coef * Rational(x) + offset);
    if (exponent.get_den() == 1 && sgn(exponent) >= 0)
      return Rational(coef * pierce::pow(Rational(x), exponent.get_num().get_ui()));
    return std::nullopt;
  }
  GrowthProfile as_constant_profile(const BigInt& x) const {
    auto q = exact(x);
    if (q) return GrowthProfile::constant(*q);
    return coef * GrowthProfile::constant(Rational(x)).pow(exponent);
  }
  std::string str() const {
    if (kind == Kind::Affine) return coef.get_str() + "*x+" + offset.get_str();
    return coef.get_str() + "*x^" + exponent.get_str();
  }
};

enum class Family {
  E_phi,         ///< log d_n / phi(n) -> 1
  A_alpha,       ///< d_n^{1/n} -> alpha
  A_kappa,       ///< log d_n >= kappa n for all n
  B_alpha,       ///< d_{n+1}/d_n -> alpha
  B_kappa,       ///< d_{n+1}/d_n <= kappa for all n
  F_alpha,       ///< log d_{n+1} / log d_n -> alpha
  C_psi_beta,    ///< (log d_n - n)/psi(n) -> beta
  E_alpha_beta,  ///< (log d_n - n)/n^alpha -> beta
  L_beta,        ///< (log d_n - n)/sqrt(2 n log log n) -> beta
  E_star,        ///< n u_n < d_n <= (n+1) u_n for all n
  E_bounds,      ///< l_n < d_n <= r_n for all n
  S_generic,     ///< h1(d_n) < h2(d_{n+1}) <= h3(d_n) for all n >= m
};

inline std::string to_string(Family f) {
  static const std::map<Family, std::string> names = {
      {Family::E_phi, "E_phi"},         {Family::A_alpha, "A_alpha"},   {Family::A_kappa, "A_kappa"},
      {Family::B_alpha, "B_alpha"},     {Family::B_kappa, "B_kappa"},   {Family::F_alpha, "F_alpha"},
      {Family::C_psi_beta, "C_psi_beta"}, {Family::E_alpha_beta, "E_alpha_beta"}, {Family::L_beta, "L_beta"},
      {Family::E_star, "E_star"},       {Family::E_bounds, "E_bounds"}, {Family::S_generic, "S_generic"}};
  return names.at(f);
}

inline Family parse_family(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Family::S_generic); ++i)
    if (to_string(static_cast<Family>(i)) == s) return static_cast<Family>(i);
  throw std::invalid_argument("unknown set family '" + s + "'");
}

struct SetSpec {
  Family family = Family::E_phi;
  ExtReal alpha = ExtReal::finite(1);
  ExtReal beta = ExtReal::finite(0);
  ExtReal kappa = ExtReal::finite(1);
  std::optional<NamedProfile> profile;  ///< phi, psi or u depending on the family
  std::optional<BoundsProfile> bounds;  ///< E_bounds
  DigitMap h1, h2, h3;                  ///< S_generic
  long m = 1;                           ///< S_generic start index

  const NamedProfile& require_profile() const {
    if (!profile) throw std::invalid_argument(to_string(family) + " needs a profile");
    return *profile;
  }
};

// ---------------------------------------------------------------------------
// catalog

namespace catalog {

inline GrowthProfile n() { return GrowthProfile::index(); }

/// phi(n) = sqrt(n)
inline NamedProfile sqrt_phi() {
  return {sqrt(n()), {"sqrt", "phi", "ephi-formula", ExtReal::pos_inf(), Rational(0), std::nullopt, std::nullopt}};
}
/// phi(n) = n^2
inline NamedProfile square_phi() {
  return {n().pow(Rational(2)),
          {"square", "phi", "ephi-formula", ExtReal::pos_inf(), Rational(0), std::nullopt, std::nullopt}};
}
/// phi(n) = n log a, a > 1
inline NamedProfile nlog_phi(const Rational& a) {
  if (a <= 1) throw std::invalid_argument("nlog profile needs a > 1");
  return {n() * log(GrowthProfile::constant(a)),
          {"nlog", "phi", "ephi-formula", ExtReal::pos_inf(), Rational(0), std::nullopt, std::nullopt}};
}
/// phi(n) = c a^n, a > 1
inline NamedProfile exponential_phi(const Rational& a, const Rational& c = 1) {
  if (a <= 1 || c <= 0) throw std::invalid_argument("exponential profile needs a > 1, c > 0");
  return {c * GrowthProfile::geometric(a),
          {"exponential", "phi", "ephi-formula", ExtReal::pos_inf(), Rational(a - 1), std::nullopt, std::nullopt}};
}
/// phi(n) = c n^a, a > 0
inline NamedProfile power_phi(const Rational& a, const Rational& c = 1) {
  if (a <= 0 || c <= 0) throw std::invalid_argument("power profile needs a > 0, c > 0");
  return {c * n().pow(a),
          {"power", "phi", "ephi-formula", ExtReal::pos_inf(), Rational(0), std::nullopt, std::nullopt}};
}
/// phi(n) = c log n
inline NamedProfile log_phi(const Rational& c) {
  if (c <= 0) throw std::invalid_argument("log profile needs c > 0");
  return {c * log(n()), {"log", "phi", "ephi-formula", ExtReal::finite(c), Rational(0), Rational(1), std::nullopt}};
}
/// psi(n) = n for n <= 2, sqrt(2 n log log n) afterwards
inline NamedProfile lil_psi() {
  GrowthProfile tail = sqrt(Rational(2) * n() * log(log(n())));
  return {GrowthProfile::piecewise(2, n(), tail),
          {"lil", "psi", "clt-window", std::nullopt, std::nullopt, std::nullopt, std::nullopt}};
}
/// psi(n) = n^a with 0 < a < 1
inline NamedProfile power_psi(const Rational& a) {
  if (a <= 0 || a >= 1) throw std::invalid_argument("power psi needs 0 < a < 1");
  return {n().pow(a), {"power_psi", "psi", "clt-window", std::nullopt, std::nullopt, std::nullopt, std::nullopt}};
}
/// u_n = 2 a^n, a > 1
inline NamedProfile geometric_u(const Rational& a) {
  if (a <= 1) throw std::invalid_argument("geometric u needs a > 1");
  return {Rational(2) * GrowthProfile::geometric(a),
          {"geometric_u", "u", "estar-formula", std::nullopt, std::nullopt, std::nullopt, ExtReal::finite(0)}};
}
/// u_n = e^{sqrt n}
inline NamedProfile exp_sqrt_u() {
  return {exp(sqrt(n())), {"exp_sqrt_u", "u", "estar-formula", std::nullopt, std::nullopt, std::nullopt, ExtReal::finite(0)}};
}
/// u_n = e^{n^2}
inline NamedProfile exp_square_u() {
  return {exp(n().pow(Rational(2))),
          {"exp_square_u", "u", "estar-formula", std::nullopt, std::nullopt, std::nullopt, ExtReal::finite(0)}};
}
/// u_n = e^{(1 - 1/gamma) phi(n) + 1} for a catalog phi with gamma > 1 (or infinite).
inline NamedProfile u_from_phi(const NamedProfile& phi) {
  if (!phi.info.gamma || !phi.info.xi) throw std::invalid_argument("u_from_phi needs a phi with known gamma and xi");
  const ExtReal& g = *phi.info.gamma;
  if (g.is_finite() && g.value <= 1) throw std::invalid_argument("u_from_phi needs gamma > 1");
  Rational inv_g = g.is_finite() ? Rational(1 / g.value) : Rational(0);
  Rational scale = 1 - inv_g;
  // eta = (1/gamma + (1 - 1/gamma) xi) / (1 - 1/gamma)
  Rational eta = (inv_g + scale * *phi.info.xi) / scale;
  return {exp(scale * phi.profile + Rational(1)),
          {"u_from_" + phi.info.name, "u", "estar-formula", std::nullopt, std::nullopt, std::nullopt, ExtReal::finite(eta)}};
}

}  // namespace catalog

/// Named profiles with default parameters.
inline std::vector<NamedProfile> builtin_profiles() {
  return {catalog::sqrt_phi(),
          catalog::square_phi(),
          catalog::nlog_phi(Rational(3)),
          catalog::exponential_phi(Rational(3)),
          catalog::power_phi(Rational(1, 2), Rational(2)),
          catalog::log_phi(Rational(2)),
          catalog::lil_psi(),
          catalog::power_psi(Rational(1, 2)),
          catalog::geometric_u(Rational(3)),
          catalog::exp_sqrt_u(),
          catalog::exp_square_u(),
          catalog::u_from_phi(catalog::exponential_phi(Rational(3)))};
}

// ---------------------------------------------------------------------------
// emptiness

enum class Emptiness { EmptyProven, EmptyWindowCertified, NonemptyOrUnknown };

inline std::string to_string(Emptiness e) {
  switch (e) {
    case Emptiness::EmptyProven: return "empty_proven";
    case Emptiness::EmptyWindowCertified: return "empty_window_certified";
    case Emptiness::NonemptyOrUnknown: return "nonempty_or_unknown";
  }
  return "?";
}

namespace detail {

/// Greedy smallest admissible word inside the windows; fails exactly when no
/// strictly increasing word fits levels 1..window.
inline bool windows_admit_word(const BoundsProfile& b, long window) {
  BigInt prev = 0;
  for (long k = 1; k <= window; ++k) {
    BigInt fl, fr;
    try {
      fl = b.floor_lower(k);
      fr = b.floor_upper(k);
    } catch (const std::domain_error&) {
      return true;  // floors out of reach: no certificate either way
    } catch (const std::out_of_range&) {
      return true;
    }
    BigInt d = fl + 1;
    if (d <= prev) d = prev + 1;
    if (d > fr) return false;
    prev = d;
  }
  return true;
}

inline bool family_has_emptiness_rule(Family f) {
  return f == Family::A_alpha || f == Family::B_alpha || f == Family::B_kappa || f == Family::F_alpha ||
         f == Family::E_alpha_beta;
}

inline bool parameter_rule_empty(const SetSpec& s) {
  ExtReal one = ExtReal::finite(1), zero = ExtReal::finite(0);
  switch (s.family) {
    case Family::A_alpha: case Family::B_alpha: case Family::F_alpha: return s.alpha < one;
    case Family::B_kappa: return s.kappa <= one;
    case Family::E_alpha_beta:
      if (s.alpha == one) return s.beta < ExtReal::finite(-1);
      if (one < s.alpha) return s.beta < zero;
      return false;
    default: return false;
  }
}

}  // namespace detail

/// Emptiness certificate. Parameter rules and window infeasibility are proofs;
/// a windowed estimate of gamma below 1 for an uncatalogued phi is labelled
/// window-certified.
inline Emptiness emptiness_check(const SetSpec& s, long window = 10000) {
  if (detail::family_has_emptiness_rule(s.family))
    return detail::parameter_rule_empty(s) ? Emptiness::EmptyProven : Emptiness::NonemptyOrUnknown;
  switch (s.family) {
    case Family::E_phi: {
      const NamedProfile& phi = s.require_profile();
      if (phi.info.gamma) {
        return *phi.info.gamma < ExtReal::finite(1) ? Emptiness::EmptyProven : Emptiness::NonemptyOrUnknown;
      }
      LimitEstimate g = estimate_limits(phi.profile, LimitQuantity::Gamma, 2, window);
      if (g.stability == Stability::Settled && g.tail_max < 1.0) return Emptiness::EmptyWindowCertified;
      return Emptiness::NonemptyOrUnknown;
    }
    case Family::E_star:
    case Family::E_bounds: {
      BoundsProfile b = s.family == Family::E_star ? estar_bounds(s.require_profile().profile, std::min(window, 64L))
                                                   : *s.bounds;
      long w = b.max_level() > 0 ? std::min(window, b.max_level()) : window;
      return detail::windows_admit_word(b, w) ? Emptiness::NonemptyOrUnknown : Emptiness::EmptyProven;
    }
    default: return Emptiness::NonemptyOrUnknown;
  }
}

// ---------------------------------------------------------------------------
// membership

enum class Verdict { SatisfiedSoFar, Violated, EstimateOnly };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SatisfiedSoFar: return "satisfied_so_far";
    case Verdict::Violated: return "violated";
    case Verdict::EstimateOnly: return "estimate_only";
  }
  return "?";
}

struct MembershipResult {
  Verdict verdict = Verdict::EstimateOnly;
  std::optional<double> estimate;  ///< defining quotient at the horizon (limit families)
  long failing_index = 0;          ///< first violating level (for-all families)
  std::string note;
};

namespace detail {

inline double log_digit(const BigInt& d) { return log_double(d); }

/// Compares log d with a rational t: -1 if log d < t, +1 if larger.
inline int compare_log_digit(const BigInt& d, const Rational& t) {
  if (d == 1) return sgn(t) < 0 ? 1 : (sgn(t) == 0 ? 0 : -1);
  Ordering o = compare_values(log(GrowthProfile::constant(Rational(d))), 1, GrowthProfile::constant(t), 1);
  if (o == Ordering::Less) return -1;
  if (o == Ordering::Greater) return 1;
  return 0;
}

inline Ordering compare_maps(const DigitMap& f, const BigInt& x, const DigitMap& g, const BigInt& y) {
  return compare_values(f.as_constant_profile(x), 1, g.as_constant_profile(y), 1);
}

}  // namespace detail

/// Tests the first `horizon` digits of a word against a set. For-all families
/// report the first violation; limit families report their defining quotient at
/// the horizon and are only declared violated when the set is provably empty.
inline MembershipResult membership(const Word& w, const SetSpec& s, size_t horizon) {
  if (horizon == 0 || horizon > w.size()) throw std::invalid_argument("horizon must lie in [1, word length]");
  MembershipResult res;
  const auto& d = w.digits();
  long h = static_cast<long>(horizon);
  auto ld = [&](long k) { return detail::log_digit(d[static_cast<size_t>(k - 1)]); };

  if (detail::parameter_rule_empty(s)) {
    res.verdict = Verdict::Violated;
    res.note = "set is empty for these parameters";
    return res;
  }

  switch (s.family) {
    case Family::A_kappa: {
      if (!s.kappa.is_finite()) throw std::invalid_argument("A_kappa needs a finite kappa");
      for (long k = 1; k <= h; ++k)
        if (detail::compare_log_digit(d[static_cast<size_t>(k - 1)], s.kappa.value * k) < 0) {
          res.verdict = Verdict::Violated;
          res.failing_index = k;
          return res;
        }
      res.verdict = Verdict::SatisfiedSoFar;
      return res;
    }
    case Family::B_kappa: {
      for (long k = 1; k < h; ++k) {
        if (!s.kappa.is_finite()) break;
        if (Rational(d[static_cast<size_t>(k)]) > s.kappa.value * Rational(d[static_cast<size_t>(k - 1)])) {
          res.verdict = Verdict::Violated;
          res.failing_index = k + 1;
          return res;
        }
      }
      res.verdict = Verdict::SatisfiedSoFar;
      return res;
    }
    case Family::E_star:
    case Family::E_bounds: {
      BoundsProfile b = s.family == Family::E_star ? estar_bounds(s.require_profile().profile, h + 1) : *s.bounds;
      for (long k = 1; k <= h; ++k) {
        const BigInt& dk = d[static_cast<size_t>(k - 1)];
        if (dk <= b.floor_lower(k) || dk > b.floor_upper(k)) {
          res.verdict = Verdict::Violated;
          res.failing_index = k;
          return res;
        }
      }
      res.verdict = Verdict::SatisfiedSoFar;
      return res;
    }
    case Family::S_generic: {
      for (long k = std::max(1L, s.m); k < h; ++k) {
        const BigInt& x = d[static_cast<size_t>(k - 1)];
        const BigInt& y = d[static_cast<size_t>(k)];
        Ordering lo = detail::compare_maps(s.h1, x, s.h2, y);
        Ordering hi = detail::compare_maps(s.h2, y, s.h3, x);
        // strict side needs a certified Less; the closed side tolerates an unresolved tie
        if (lo != Ordering::Less || hi == Ordering::Greater) {
          res.verdict = Verdict::Violated;
          res.failing_index = k + 1;
          return res;
        }
      }
      res.verdict = Verdict::SatisfiedSoFar;
      return res;
    }
    default: break;
  }

  // limit families: quotient at the horizon
  res.verdict = Verdict::EstimateOnly;
  double est = 0;
  switch (s.family) {
    case Family::E_phi: {
      Emptiness e = emptiness_check(s);
      if (e == Emptiness::EmptyProven) {
        res.verdict = Verdict::Violated;
        res.note = "set is empty for this phi";
        return res;
      }
      est = ld(h) / s.require_profile().profile.value(h).to_double();
      break;
    }
    case Family::A_alpha: est = std::exp(ld(h) / static_cast<double>(h)); break;
    case Family::B_alpha:
      if (h < 2) throw std::invalid_argument("B_alpha needs horizon >= 2");
      est = std::exp(ld(h) - ld(h - 1));
      break;
    case Family::F_alpha:
      if (h < 2 || d[static_cast<size_t>(h - 2)] == 1) throw std::invalid_argument("F_alpha needs d_{h-1} >= 2");
      est = ld(h) / ld(h - 1);
      break;
    case Family::C_psi_beta:
      est = (ld(h) - static_cast<double>(h)) / s.require_profile().profile.value(h).to_double();
      break;
    case Family::E_alpha_beta:
      if (!s.alpha.is_finite()) throw std::invalid_argument("E_alpha_beta needs a finite alpha");
      est = (ld(h) - static_cast<double>(h)) / std::pow(static_cast<double>(h), pierce::to_double(s.alpha.value));
      break;
    case Family::L_beta: {
      if (h < 3) throw std::invalid_argument("L_beta needs horizon >= 3");
      double hd = static_cast<double>(h);
      est = (ld(h) - hd) / std::sqrt(2 * hd * std::log(std::log(hd)));
      break;
    }
    default: throw std::logic_error("unhandled family");
  }
  res.estimate = est;
  return res;
}

// ---------------------------------------------------------------------------
// fixtures

/// Word with d_n = floor(e^{n-1+sqrt n}) for odd n and floor(e^{n+sqrt n}) for
/// even n, n = 1..k_max. Log digits track n, so the word belongs to E(phi)
/// with phi(n) = n, while the odd-step ratios tend to 1 and the even-step
/// ratios to e^2.
inline Word sqrt_shift_word(long k_max) {
  if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
  std::vector<BigInt> digits;
  for (long i = 1; i <= k_max; ++i) {
    long shift = (i % 2 == 1) ? i - 1 : i;
    GrowthProfile e = exp(GrowthProfile::constant(Rational(shift)) + sqrt(GrowthProfile::constant(Rational(i))));
    digits.push_back(e.floor(1));
  }
  if (!is_admissible(digits)) throw std::logic_error("fixture word is not admissible");
  return Word(std::move(digits));
}

}  // namespace pierce
