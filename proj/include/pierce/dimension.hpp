#pragma once

// Finite-level dimension bounds for digit-window Cantor sets, the closed-form
// dimension values of the set families, and cover diagnostics.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pierce/bounds.hpp"
#include "pierce/limits.hpp"
#include "pierce/sets.hpp"

namespace pierce {

/// One level of a dimension quotient log_count / log_inv_diam.
struct RatioPoint {
  long n = 0;
  double log_count = 0;
  double log_inv_diam = 0;
  double ratio = 0;
  std::string bound_kind;  ///< lower, upper, box, gap, chain_xi, chain_theta
  bool exact_count = true;  ///< false when log_count fell back to log width
};

struct DimensionEstimate {
  std::string label;
  std::vector<RatioPoint> lower_seq;
  std::vector<RatioPoint> upper_seq;
  std::optional<double> analytic;
};

namespace detail {

/// log l_k, log r_k, log width_k for k = 1..top (index 0 unused).
struct LogTables {
  std::vector<Real> ll, lr, lw;
};

inline LogTables log_tables(const BoundsProfile& b, long top, mpfr_prec_t prec) {
  LogTables t;
  t.ll.reserve(static_cast<size_t>(top) + 1);
  t.lr.reserve(static_cast<size_t>(top) + 1);
  t.lw.reserve(static_cast<size_t>(top) + 1);
  t.ll.emplace_back(prec);
  t.lr.emplace_back(prec);
  t.lw.emplace_back(prec);
  for (long k = 1; k <= top; ++k) {
    t.ll.push_back(b.lower.log(k, prec));
    t.lr.push_back(b.upper.log(k, prec));
    t.lw.push_back(b.width.log(k, prec));
  }
  return t;
}

inline std::vector<Real> prefix_sums(const std::vector<Real>& v, mpfr_prec_t prec) {
  std::vector<Real> s;
  s.reserve(v.size());
  s.emplace_back(prec);
  for (size_t k = 1; k < v.size(); ++k) s.push_back(s.back() + v[k]);
  return s;
}

/// Caps n_max so that levels up to n_max + extra exist on finite tables.
inline long clamp_levels(const BoundsProfile& b, long n_max, long extra) {
  long top = b.max_level();
  if (top >= 0) n_max = std::min(n_max, top - extra);
  if (n_max < 1) throw std::invalid_argument("profile too short for the requested levels");
  return n_max;
}

/// log m_k with m_k = floor r_k - floor l_k; falls back to log width_k when a
/// floor is out of reach. Sets `exact` accordingly.
inline Real log_branch_count(const BoundsProfile& b, long k, const Real& log_width, bool& exact,
                             BigInt* m_out = nullptr) {
  try {
    BigInt m = b.floor_upper(k) - b.floor_lower(k);
    if (m_out) *m_out = m;
    if (sgn(m) <= 0) {
      exact = true;
      return Real::inf(-1, log_width.precision());
    }
    exact = true;
    return log_real(Rational(m), log_width.precision());
  } catch (const std::domain_error&) {
    exact = false;
    return log_width;
  }
}

inline RatioPoint make_point(long n, const Real& num, const Real& den, const char* kind, bool exact = true) {
  RatioPoint p;
  p.n = n;
  p.log_count = num.to_double();
  p.log_inv_diam = den.to_double();
  p.ratio = (num / den).to_double();
  p.bound_kind = kind;
  p.exact_count = exact;
  return p;
}

}  // namespace detail

/// The two closed-form bounds for a digit-window set, evaluated in log space:
///   lower(n) = log prod_{k<=n} D_k / log( r_{n+1} r_{n+2} / (D_{n+1} D_{n+2}) prod_{k<=n+1} r_k )
///   upper(n) = log prod_{k<=n} D_k / log( r_{n+1} / D_{n+1} prod_{k<=n+1} l_k )
/// with D_k = r_k - l_k. Levels whose denominator is not positive are skipped.
inline DimensionEstimate closed_form_ratio_sequences(const BoundsProfile& b, long n_max,
                                                 mpfr_prec_t prec = default_precision()) {
  n_max = detail::clamp_levels(b, n_max, 2);
  auto t = detail::log_tables(b, n_max + 2, prec);
  auto sw = detail::prefix_sums(t.lw, prec);
  auto sr = detail::prefix_sums(t.lr, prec);
  auto sl = detail::prefix_sums(t.ll, prec);
  DimensionEstimate est;
  est.label = b.label;
  for (long n = 1; n <= n_max; ++n) {
    size_t i = static_cast<size_t>(n);
    Real lo_den = t.lr[i + 1] + t.lr[i + 2] - t.lw[i + 1] - t.lw[i + 2] + sr[i + 1];
    Real up_den = t.lr[i + 1] - t.lw[i + 1] + sl[i + 1];
    if (lo_den.sign() > 0) est.lower_seq.push_back(detail::make_point(n, sw[i], lo_den, "lower"));
    if (up_den.sign() > 0) est.upper_seq.push_back(detail::make_point(n, sw[i], up_den, "upper"));
  }
  return est;
}

/// Largest basic-interval diameter over the level-n words, by enumeration,
/// next to the closed-form cap 2 prod_{k<=n+1} (1/l_k) D_{n+1} / r_{n+1}.
struct DiameterCheck {
  Rational max_diam;
  Rational bound;
  size_t words = 0;
};

inline DiameterCheck box_diameter_check(const BoundsProfile& b, long n, size_t cap = 1000000) {
  DiameterCheck out;
  Rational prod_l = 1;
  for (long k = 1; k <= n + 1; ++k) {
    auto l = b.lower.exact(k);
    if (!l) throw std::domain_error("diameter check needs rational bounds");
    prod_l *= *l;
  }
  auto w = b.width.exact(n + 1), r = b.upper.exact(n + 1);
  if (!w || !r) throw std::domain_error("diameter check needs rational bounds");
  out.bound = 2 * *w / (prod_l * *r);
  BigInt fl = b.floor_lower(n + 1), fr = b.floor_upper(n + 1);
  for (const Word& s : upsilon_enumerate(n, b, cap)) {
    Rational d = basic_interval_diameter(s, fl, fr);
    if (out.words == 0 || d > out.max_diam) out.max_diam = d;
    ++out.words;
  }
  return out;
}

/// Cover-count quotient log #words_n / log(1/delta_n) with delta_n the
/// closed-form diameter cap. Where the level-n word count is at most enum_cap
/// and the bounds are rational, the true maximal diameter is computed and the
/// cap is asserted (std::logic_error on violation).
inline std::vector<RatioPoint> box_ratio_sequence(const BoundsProfile& b, long n_max, size_t enum_cap = 1000000,
                                                  mpfr_prec_t prec = default_precision()) {
  n_max = detail::clamp_levels(b, n_max, 1);
  auto t = detail::log_tables(b, n_max + 1, prec);
  auto sl = detail::prefix_sums(t.ll, prec);
  std::vector<RatioPoint> out;
  Real log_count(prec);
  bool all_exact = true;
  BigInt count = 1;
  const Real log2 = log_real(Rational(2), prec);
  for (long n = 1; n <= n_max; ++n) {
    size_t i = static_cast<size_t>(n);
    bool exact = true;
    BigInt m;
    log_count += detail::log_branch_count(b, n, t.lw[i], exact, &m);
    all_exact = all_exact && exact;
    if (all_exact) count *= m;
    Real den = -log2 + sl[i + 1] + t.lr[i + 1] - t.lw[i + 1];
    if (all_exact && sgn(count) > 0 && count <= enum_cap && b.lower.exact(n + 1) && b.upper.exact(n + 1)) {
      DiameterCheck c = box_diameter_check(b, n, enum_cap);
      if (c.max_diam >= c.bound)
        throw std::logic_error("basic interval diameter " + to_string(c.max_diam) + " exceeds the cap " +
                               to_string(c.bound) + " at level " + std::to_string(n));
    }
    if (den.sign() > 0 && log_count.is_finite()) out.push_back(detail::make_point(n, log_count, den, "box", all_exact));
  }
  return out;
}

/// Gap quotient log prod_{k<=n} m_k / log(1/(m_{n+1} eps_{n+1})) with
/// m_k = floor r_k - floor l_k and eps_n = 1/2 prod_{k<=n}(1/r_k) D_{n+1}/(r_n r_{n+1}).
/// Throws std::domain_error naming the level when some m_k < 2 or when eps
/// fails to decrease.
inline std::vector<RatioPoint> gap_ratio_sequence(const BoundsProfile& b, long n_max,
                                                  mpfr_prec_t prec = default_precision()) {
  n_max = detail::clamp_levels(b, n_max, 2);
  auto t = detail::log_tables(b, n_max + 2, prec);
  auto sr = detail::prefix_sums(t.lr, prec);
  const Real log2 = log_real(Rational(2), prec);
  auto log_eps = [&](size_t n) { return -log2 - sr[n] + t.lw[n + 1] - t.lr[n] - t.lr[n + 1]; };

  std::vector<Real> log_m(static_cast<size_t>(n_max) + 2, Real(prec));
  std::vector<bool> exact(static_cast<size_t>(n_max) + 2, true);
  for (long k = 1; k <= n_max + 1; ++k) {
    size_t i = static_cast<size_t>(k);
    bool ex = true;
    BigInt m;
    log_m[i] = detail::log_branch_count(b, k, t.lw[i], ex, &m);
    exact[i] = ex;
    bool ok = ex ? m >= 2 : detail::at_least(compare_value(b.width, k, Rational(2)));
    if (!ok) throw std::domain_error("branch count m_k < 2 at level " + std::to_string(k));
  }
  Real prev = log_eps(1);
  for (size_t n = 2; n <= static_cast<size_t>(n_max) + 1; ++n) {
    Real cur = log_eps(n);
    if (!(cur < prev)) throw std::domain_error("gap bound fails to decrease at level " + std::to_string(n));
    prev = cur;
  }
  std::vector<RatioPoint> out;
  Real num(prec);
  bool all_exact = true;
  for (long n = 1; n <= n_max; ++n) {
    size_t i = static_cast<size_t>(n);
    num += log_m[i];
    all_exact = all_exact && exact[i] && exact[i + 1];
    Real den = -log_m[i + 1] - log_eps(i + 1);
    if (den.sign() > 0) out.push_back(detail::make_point(n, num, den, "gap", all_exact));
  }
  return out;
}

/// Band that the box and gap quotients must occupy given the count bracket
/// c^{-n} prod D_k <= #words <= c^n prod D_k (c = D/(D-1), D = min width) and
/// D_{n+1}/c <= m_{n+1} <= c D_{n+1}.
struct SandwichBand {
  long n = 0;
  double box_lo = 0, box_hi = 0;
  double gap_lo = 0, gap_hi = 0;
};

inline std::vector<SandwichBand> sandwich_bands(const BoundsProfile& b, long n_max,
                                                mpfr_prec_t prec = default_precision()) {
  n_max = detail::clamp_levels(b, n_max, 2);
  auto t = detail::log_tables(b, n_max + 2, prec);
  auto sw = detail::prefix_sums(t.lw, prec);
  auto sr = detail::prefix_sums(t.lr, prec);
  auto sl = detail::prefix_sums(t.ll, prec);
  Real min_lw = t.lw[1];
  for (size_t k = 2; k < t.lw.size(); ++k) min_lw = min(min_lw, t.lw[k]);
  Real D = exp(min_lw);
  Real one = Real::from_long(1, prec);
  if (!(D > one)) throw std::domain_error("sandwich needs widths above 1");
  Real log_c = log(D / (D - one));
  const Real log2 = log_real(Rational(2), prec);
  std::vector<SandwichBand> out;
  for (long n = 1; n <= n_max; ++n) {
    size_t i = static_cast<size_t>(n);
    Real nc = Real::from_long(n, prec) * log_c;
    Real up_den = t.lr[i + 1] - t.lw[i + 1] + sl[i + 1] - log2;
    Real lo_den = t.lr[i + 1] + t.lr[i + 2] - t.lw[i + 1] - t.lw[i + 2] + sr[i + 1] + log2;
    if (up_den.sign() <= 0 || (lo_den - log_c).sign() <= 0) continue;
    SandwichBand s;
    s.n = n;
    s.box_lo = ((sw[i] - nc) / up_den).to_double();
    s.box_hi = ((sw[i] + nc) / up_den).to_double();
    s.gap_lo = ((sw[i] - nc) / (lo_den + log_c)).to_double();
    s.gap_hi = ((sw[i] + nc) / (lo_den - log_c)).to_double();
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// closed-form dimensions

enum class AnalyticStatus { Exact, WindowCertified, Refused };

inline std::string to_string(AnalyticStatus s) {
  switch (s) {
    case AnalyticStatus::Exact: return "exact";
    case AnalyticStatus::WindowCertified: return "window_certified";
    case AnalyticStatus::Refused: return "refused";
  }
  return "?";
}

struct AnalyticDimension {
  AnalyticStatus status = AnalyticStatus::Refused;
  std::optional<double> value;
  std::optional<Rational> exact;  ///< when the value is rational and known exactly
  bool empty = false;             ///< the set is empty (dimension 0 for that reason)
  std::string note;
  std::vector<LimitEstimate> windows;  ///< limit estimates the answer relied on
};

namespace detail {

inline AnalyticDimension exact_dimension(const Rational& v, bool empty = false, std::string note = "") {
  AnalyticDimension a;
  a.status = AnalyticStatus::Exact;
  a.exact = v;
  a.value = pierce::to_double(v);
  a.empty = empty;
  a.note = std::move(note);
  return a;
}

inline Rational rational_from_double(double x) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

/// max{0, (1 - 1/gamma)/(1 + xi)} with 1/inf = 0; xi = inf gives 0.
inline std::optional<Rational> ephi_formula(const ExtReal& gamma, const ExtReal& xi) {
  if (gamma < ExtReal::finite(1)) return Rational(0);
  if (!xi.is_finite()) return Rational(0);
  Rational num = gamma.is_finite() ? Rational(1 - 1 / gamma.value) : Rational(1);
  return Rational(num / (1 + xi.value));
}

/// Limit read off a window: settled gives the tail value picked by `pick`,
/// diverging gives +inf, unsettled gives nothing.
inline std::optional<ExtReal> window_limit(const LimitEstimate& e, bool upper) {
  if (e.stability == Stability::Diverging) return ExtReal::pos_inf();
  if (e.stability == Stability::Unsettled) return std::nullopt;
  return ExtReal::finite(rational_from_double(upper ? e.tail_max : e.tail_min));
}

inline AnalyticDimension refused(std::string note, std::vector<LimitEstimate> w = {}) {
  AnalyticDimension a;
  a.status = AnalyticStatus::Refused;
  a.note = std::move(note);
  a.windows = std::move(w);
  return a;
}

}  // namespace detail

/// Dimension of a set family from its closed form. Catalog profiles carry their
/// limits and give exact answers; other profiles are read off a window
/// [1, window] and either labelled window-certified or refused when the window
/// does not settle.
inline AnalyticDimension analytic_dimension(const SetSpec& s, long window = 10000) {
  const ExtReal one = ExtReal::finite(1), zero = ExtReal::finite(0);
  switch (s.family) {
    case Family::E_phi: {
      const NamedProfile& phi = s.require_profile();
      if (phi.info.gamma && (phi.info.xi || phi.info.gamma->is_finite())) {
        ExtReal xi = phi.info.xi ? ExtReal::finite(*phi.info.xi) : zero;
        bool empty = *phi.info.gamma < one;
        return detail::exact_dimension(*detail::ephi_formula(*phi.info.gamma, xi), empty,
                                       empty ? "gamma < 1: the set is empty" : "");
      }
      std::vector<LimitEstimate> used;
      used.push_back(estimate_limits(phi.profile, LimitQuantity::Gamma, 2, window));
      auto gamma = detail::window_limit(used.back(), false);
      if (!gamma) return detail::refused("phi(n)/log n does not settle on the window", used);
      ExtReal xi = zero;
      if (!gamma->is_finite()) {
        used.push_back(estimate_limits(phi.profile, LimitQuantity::Xi, 1, window));
        auto x = detail::window_limit(used.back(), true);
        if (!x) return detail::refused("phi(n+1)/sum phi does not settle on the window", used);
        xi = *x;
      }
      AnalyticDimension a;
      a.status = AnalyticStatus::WindowCertified;
      a.exact = detail::ephi_formula(*gamma, xi);
      a.value = pierce::to_double(*a.exact);
      a.empty = *gamma < one;
      a.note = "limits read off the window [1, " + std::to_string(window) + "]";
      a.windows = std::move(used);
      return a;
    }
    case Family::A_alpha:
    case Family::B_alpha:
      return s.alpha < one ? detail::exact_dimension(0, true, "alpha < 1: the set is empty")
                           : detail::exact_dimension(1);
    case Family::A_kappa:
      if (!s.kappa.is_finite()) throw std::invalid_argument("A_kappa needs a finite kappa");
      return detail::exact_dimension(1);
    case Family::B_kappa:
      return s.kappa <= one ? detail::exact_dimension(0, true, "kappa <= 1: the set is empty")
                            : detail::exact_dimension(1);
    case Family::F_alpha:
      if (s.alpha < one) return detail::exact_dimension(0, true, "alpha < 1: the set is empty");
      if (!s.alpha.is_finite()) return detail::exact_dimension(0, false, "alpha = inf: dimension 0, set nonempty");
      return detail::exact_dimension(Rational(1 / s.alpha.value));
    case Family::C_psi_beta: {
      const NamedProfile& psi = s.require_profile();
      if (psi.info.role == "psi") return detail::exact_dimension(1);
      std::string why = check_psi_window(psi.profile, window);
      if (!why.empty()) return detail::refused("psi fails the window conditions: " + why);
      AnalyticDimension a = detail::exact_dimension(1);
      a.status = AnalyticStatus::WindowCertified;
      a.note = "psi conditions checked on the window [1, " + std::to_string(window) + "]";
      return a;
    }
    case Family::E_alpha_beta: {
      if (!s.alpha.is_finite()) throw std::invalid_argument("E_alpha_beta needs a finite alpha");
      if (s.alpha < one) return detail::exact_dimension(1);
      ExtReal floor_beta = s.alpha == one ? ExtReal::finite(-1) : zero;
      return s.beta < floor_beta ? detail::exact_dimension(0, true, "beta below the admissible range: the set is empty")
                                 : detail::exact_dimension(1);
    }
    case Family::L_beta: return detail::exact_dimension(1);
    case Family::E_star: {
      const NamedProfile& u = s.require_profile();
      ExtReal eta;
      std::vector<LimitEstimate> used;
      if (u.info.eta) {
        eta = *u.info.eta;
      } else {
        used.push_back(estimate_limits(u.profile, LimitQuantity::Eta, 1, window));
        auto e = detail::window_limit(used.back(), true);
        if (!e) return detail::refused("the eta quotient does not settle on the window", used);
        eta = *e;
      }
      Rational v = eta.is_finite() ? Rational(1 / (1 + eta.value)) : Rational(0);
      if (u.info.eta) return detail::exact_dimension(v);
      AnalyticDimension a = detail::exact_dimension(v);
      a.status = AnalyticStatus::WindowCertified;
      a.note = "eta read off the window [1, " + std::to_string(window) + "]";
      a.windows = std::move(used);
      return a;
    }
    case Family::E_bounds:
    case Family::S_generic:
      return detail::refused("no closed form for this family; see the ratio sequences");
  }
  return detail::refused("unknown family");
}

// ---------------------------------------------------------------------------
// growth-rate covers

/// Index past which both window checks of the growth-rate cover hold on
/// [K, n_limit]:
///   floor(e^{(1-eps)phi(n)}) + 1 <= floor(e^{(1+eps)phi(n)})   ("gap")
///   n <= floor(e^{(1+eps)phi(n)})                              ("reach")
struct EphiThreshold {
  std::optional<long> K;
  std::string failing_check;
  long failing_index = 0;
};

inline EphiThreshold ephi_threshold(const GrowthProfile& phi, const Rational& eps, long n_limit,
                                    mpfr_prec_t prec = default_precision()) {
  if (sgn(eps) <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  GrowthProfile hi = exp((1 + eps) * phi), lo = exp((1 - eps) * phi);
  GrowthProfile hi_exp = (1 + eps) * phi, logn = log(GrowthProfile::index());
  Real e_lo = Real(Rational(1 - eps), prec), two_eps = Real(Rational(2 * eps), prec);
  EphiThreshold res;
  long last_fail = 0;
  for (long n = 1; n <= n_limit; ++n) {
    Real f = phi.value(n, prec);
    // e^b - e^a = e^a expm1(b - a); clearly above 1 means the floors differ
    Real d = two_eps * f;
    bool gap_ok = false;
    if (d.sign() > 0) {
      Real em(prec);
      mpfr_expm1(em.get(), d.get(), MPFR_RNDN);
      Real lg = e_lo * f + log(em);
      if (lg > Real(0.01, prec)) gap_ok = true;
    }
    if (!gap_ok) gap_ok = lo.floor(n) + 1 <= hi.floor(n);
    bool reach_ok;
    Ordering o = compare_values(hi_exp, n, logn, n);
    if (o == Ordering::Unresolved) reach_ok = hi.floor(n) >= n;
    else reach_ok = o != Ordering::Less;
    if (!gap_ok || !reach_ok) {
      last_fail = n;
      res.failing_check = !gap_ok ? "gap" : "reach";
      res.failing_index = n;
    }
  }
  if (last_fail < n_limit) res.K = last_fail + 1;
  return res;
}

namespace detail {

struct PhiSums {
  std::vector<Real> phi;  ///< phi[k], k = 1..top
  std::vector<Real> sum;  ///< sum[k] = phi(1) + ... + phi(k), sum[0] = 0
};

inline PhiSums phi_sums(const GrowthProfile& phi, long top, mpfr_prec_t prec) {
  PhiSums p;
  p.phi.reserve(static_cast<size_t>(top) + 1);
  p.sum.reserve(static_cast<size_t>(top) + 1);
  p.phi.emplace_back(prec);
  p.sum.emplace_back(prec);
  for (long k = 1; k <= top; ++k) {
    p.phi.push_back(phi.value(k, prec));
    p.sum.push_back(p.sum.back() + p.phi.back());
  }
  return p;
}

}  // namespace detail

/// log of the smaller of the two word-count caps at level n >= m:
///   m(1+eps)phi(m) + (1+eps) sum_{k=m+1}^n phi(k)   and   n(1+eps)phi(n) + (n-1) - n log n.
inline Real ephi_cover_bound(const GrowthProfile& phi, const Rational& eps, long m, long n,
                             mpfr_prec_t prec = default_precision()) {
  if (m < 1 || n < m) throw std::invalid_argument("need 1 <= m <= n");
  auto p = detail::phi_sums(phi, n, prec);
  Real a = Real(Rational(1 + eps), prec);
  Real nn = Real::from_long(n, prec);
  Real first = Real::from_long(m, prec) * a * p.phi[static_cast<size_t>(m)] +
               a * (p.sum[static_cast<size_t>(n)] - p.sum[static_cast<size_t>(m)]);
  Real second = nn * a * p.phi[static_cast<size_t>(n)] + (nn - Real::from_long(1, prec)) - nn * log(nn);
  return min(first, second);
}

/// The two cover quotients for E(phi) at levels m..n_max, both over the
/// diameter exponent (1-eps) sum_{k=m}^{n+1} phi(k):
///   chain_xi:    first count cap, tends to (1+eps)/(1-eps) / (1+xi)
///   chain_theta: second count cap, tends to ((1+eps)theta - 1/gamma)/(1-eps)
struct EphiChains {
  long m = 0;
  std::vector<RatioPoint> xi_chain;
  std::vector<RatioPoint> theta_chain;
};

inline EphiChains ephi_chains(const GrowthProfile& phi, const Rational& eps, long m, long n_max,
                              mpfr_prec_t prec = default_precision()) {
  if (m < 1 || n_max < m) throw std::invalid_argument("need 1 <= m <= n_max");
  auto p = detail::phi_sums(phi, n_max + 1, prec);
  Real a = Real(Rational(1 + eps), prec), c = Real(Rational(1 - eps), prec);
  size_t mi = static_cast<size_t>(m);
  Real head = Real::from_long(m, prec) * a * p.phi[mi];
  EphiChains out;
  out.m = m;
  for (long n = m; n <= n_max; ++n) {
    size_t i = static_cast<size_t>(n);
    Real nn = Real::from_long(n, prec);
    Real den = c * (p.sum[i + 1] - p.sum[mi - 1]);
    if (den.sign() <= 0) continue;
    Real first = head + a * (p.sum[i] - p.sum[mi]);
    Real second = nn * a * p.phi[i] + (nn - Real::from_long(1, prec)) - nn * log(nn);
    out.xi_chain.push_back(detail::make_point(n, first, den, "chain_xi"));
    out.theta_chain.push_back(detail::make_point(n, second, den, "chain_theta"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// fast-growth covers

/// s-power cover sum for the words sigma of length n with sigma_1 = tau_1,
/// sigma_2 = tau_2 and sigma_{k+1} > sigma_k^B, each covered by the union of
/// its children beyond floor(sigma_n^B), of diameter
/// prod(1/sigma_k) / (floor(sigma_n^B) + 1).
/// Each level enumerates `cap` children; the remaining children j > J form one
/// interval of diameter prod(1/sigma_k)/(J+1), which is used as a single cover
/// piece. The chain bound is A^{M-2} / (tau_1^s tau_2^{s(1+B)}) with
/// A = zeta(sB) and M >= 2 minimal with sum_{j>M} j^{-sB} < 1.
struct FbCoverSum {
  double sum = 0;
  double log_chain_bound = HUGE_VAL;
  bool divergent = false;  ///< s B <= 1: A is infinite and the chain bound says nothing
  long words = 0;          ///< full-length words enumerated
  long lumped = 0;         ///< lumped tail pieces
  double M = 0;
};

namespace detail {

inline BigInt floor_power(const BigInt& x, const Rational& B) { return DigitMap::power(B).as_constant_profile(x).floor(1); }

inline double log_rational(const Rational& q) { return log_double(q.get_num()) - log_double(q.get_den()); }

}  // namespace detail

inline FbCoverSum fb_cover_sum(const Word& tau, const Rational& B, const Rational& s, long n, long cap) {
  if (tau.size() != 2) throw std::invalid_argument("tau must have length 2");
  if (B <= 1) throw std::invalid_argument("B must exceed 1");
  if (sgn(s) <= 0) throw std::invalid_argument("s must be positive");
  if (n < 2 || cap < 1) throw std::invalid_argument("need n >= 2 and cap >= 1");
  FbCoverSum out;
  const double sd = pierce::to_double(s);
  Rational sB = s * B;
  out.divergent = sB <= 1;

  // recursive walk; prod is prod(1/sigma_k) over the current word
  std::function<void(const BigInt&, const Rational&, long)> walk = [&](const BigInt& last, const Rational& prod,
                                                                      long len) {
    BigInt first = detail::floor_power(last, B) + 1;
    if (len == n) {
      Rational diam = prod / Rational(first);
      out.sum += std::exp(sd * detail::log_rational(diam));
      ++out.words;
      return;
    }
    BigInt stop = first + (cap - 1);
    for (BigInt j = first; j <= stop; ++j) walk(j, prod / Rational(j), len + 1);
    Rational tail = prod / Rational(stop + 1);
    out.sum += std::exp(sd * detail::log_rational(tail));
    ++out.lumped;
  };
  walk(tau[1], Rational(1) / Rational(tau[0] * tau[1]), 2);

  if (!out.divergent) {
    mpfr_prec_t prec = 128;
    Real x(Rational(sB), prec);
    Real A(prec);
    mpfr_zeta(A.get(), x.get(), MPFR_RNDN);
    // smallest M by scanning; past 10^6 terms use the integral bound
    // sum_{j>M} j^{-x} <= M^{1-x}/(x-1), which gives a valid (larger) M
    Real tail = A;
    double M = 0;
    for (long j = 1; j <= 1000000; ++j) {
      tail = tail - pow(Real::from_long(j, prec), -x);
      if (j >= 2 && tail < Real::from_long(1, prec)) {
        M = static_cast<double>(j);
        break;
      }
    }
    if (M == 0) {
      double xm1 = pierce::to_double(sB - 1);
      M = std::ceil(std::exp(-std::log(xm1) / xm1));
    }
    out.M = M;
    double logA = log(A).to_double();
    out.log_chain_bound = (M - 2) * logA - sd * log_double(tau[0]) -
                          sd * pierce::to_double(1 + B) * log_double(tau[1]);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// n log n - (n-1) <= log n! <= (n+1) log n - (n-1), with log n! summed directly.
struct StirlingBounds {
  double log_lower = 0;
  double log_factorial = 0;
  double log_upper = 0;
  bool holds() const { return log_lower <= log_factorial && log_factorial <= log_upper; }
};

inline StirlingBounds stirling_bounds(long n, mpfr_prec_t prec = default_precision()) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Real lf(prec);
  for (long k = 2; k <= n; ++k) lf += log_real(Rational(k), prec);
  Real nn = Real::from_long(n, prec), ln = log_real(Rational(n), prec), nm1 = Real::from_long(n - 1, prec);
  return {(nn * ln - nm1).to_double(), lf.to_double(), ((nn + Real::from_long(1, prec)) * ln - nm1).to_double()};
}

/// First n in [1, n_max] where the factorial bracket fails, or 0. Runs the
/// sum incrementally in high precision.
inline long stirling_sweep(long n_max, mpfr_prec_t prec = default_precision()) {
  Real lf(prec);
  for (long n = 1; n <= n_max; ++n) {
    Real ln = log_real(Rational(n), prec);
    if (n >= 2) lf += ln;
    Real nn = Real::from_long(n, prec), nm1 = Real::from_long(n - 1, prec);
    Real lo = nn * ln - nm1, hi = (nn + Real::from_long(1, prec)) * ln - nm1;
    if (lf < lo || lf > hi) return n;
  }
  return 0;
}

}  // namespace pierce
