#pragma once

// Windowed evaluation of the limit quantities attached to a growth profile.
// Nothing is extrapolated: a window yields min/max/last and a stability label.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "pierce/profile.hpp"

namespace pierce {

enum class LimitQuantity { Gamma, Xi, Theta, Eta };

inline std::string to_string(LimitQuantity q) {
  switch (q) {
    case LimitQuantity::Gamma: return "gamma";
    case LimitQuantity::Xi: return "xi";
    case LimitQuantity::Theta: return "theta";
    case LimitQuantity::Eta: return "eta";
  }
  return "?";
}

inline LimitQuantity parse_limit_quantity(const std::string& s) {
  if (s == "gamma") return LimitQuantity::Gamma;
  if (s == "xi") return LimitQuantity::Xi;
  if (s == "theta") return LimitQuantity::Theta;
  if (s == "eta") return LimitQuantity::Eta;
  throw std::invalid_argument("unknown limit quantity '" + s + "'");
}

enum class Stability { Settled, Diverging, Unsettled };

inline std::string to_string(Stability s) {
  switch (s) {
    case Stability::Settled: return "settled";
    case Stability::Diverging: return "diverging";
    case Stability::Unsettled: return "unsettled";
  }
  return "?";
}

struct LimitEstimate {
  LimitQuantity quantity = LimitQuantity::Gamma;
  long n_lo = 0, n_hi = 0;
  std::vector<double> values;  ///< values[i] belongs to n = n_lo + i
  double min = 0, max = 0, last = 0;
  // same triple restricted to the last quarter of the window
  double tail_min = 0, tail_max = 0;
  Stability stability = Stability::Unsettled;
};

/// Stability rule on the last quarter of the window: spread within 5% of the
/// scale means settled; a strictly increasing tail that at least doubles from
/// the window midpoint means diverging.
inline Stability classify_window(const std::vector<double>& v) {
  if (v.size() < 8) return Stability::Unsettled;
  size_t start = v.size() - v.size() / 4;
  double lo = *std::min_element(v.begin() + static_cast<long>(start), v.end());
  double hi = *std::max_element(v.begin() + static_cast<long>(start), v.end());
  double last = v.back();
  if (std::isfinite(lo) && std::isfinite(hi) && hi - lo <= 0.05 * std::max(1.0, std::fabs(last)))
    return Stability::Settled;
  bool increasing = true;
  for (size_t i = start + 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) increasing = false;
  double mid = v[v.size() / 2];
  if (increasing && mid > 0 && (last >= 2 * mid || !std::isfinite(last))) return Stability::Diverging;
  return Stability::Unsettled;
}

/// Defining quotient of the quantity on n in [n_lo, n_hi]:
///   gamma: phi(n)/log n            xi: phi(n+1)/sum_{k<=n} phi(k)
///   theta: n phi(n)/sum phi(k)     eta: (n log n + log u_{n+1})/sum_{k<=n} log u_k
/// For eta the profile is u; otherwise it is phi.
inline LimitEstimate estimate_limits(const GrowthProfile& f, LimitQuantity q, long n_lo, long n_hi,
                                     mpfr_prec_t prec = default_precision()) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("bad window");
  if (q == LimitQuantity::Gamma && n_lo < 2) n_lo = 2;
  LimitEstimate est;
  est.quantity = q;
  est.n_lo = n_lo;
  est.n_hi = n_hi;
  est.values.reserve(static_cast<size_t>(n_hi - n_lo + 1));
  Real sum(prec);
  for (long k = 1; k < n_lo; ++k) sum += (q == LimitQuantity::Eta) ? f.log(k, prec) : f.value(k, prec);
  for (long n = n_lo; n <= n_hi; ++n) {
    Real term = (q == LimitQuantity::Eta) ? f.log(n, prec) : f.value(n, prec);
    sum += term;
    Real logn = log_real(Rational(n), prec);
    Real v(prec);
    switch (q) {
      case LimitQuantity::Gamma: v = term / logn; break;
      case LimitQuantity::Xi: v = f.value(n + 1, prec) / sum; break;
      case LimitQuantity::Theta: v = Real::from_long(n, prec) * term / sum; break;
      case LimitQuantity::Eta: v = (Real::from_long(n, prec) * logn + f.log(n + 1, prec)) / sum; break;
    }
    est.values.push_back(v.to_double());
  }
  const auto& vals = est.values;
  est.min = *std::min_element(vals.begin(), vals.end());
  est.max = *std::max_element(vals.begin(), vals.end());
  est.last = vals.back();
  size_t start = vals.size() - std::max<size_t>(1, vals.size() / 4);
  est.tail_min = *std::min_element(vals.begin() + static_cast<long>(start), vals.end());
  est.tail_max = *std::max_element(vals.begin() + static_cast<long>(start), vals.end());
  est.stability = classify_window(vals);
  return est;
}

}  // namespace pierce
