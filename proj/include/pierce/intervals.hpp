#pragma once

// Cylinder sets of the digit map and the unions of cylinders that the
// Cantor-type constructions are built from.

#include <string>

#include "pierce/expansion.hpp"

namespace pierce {

struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const {
    bool above = lo_closed ? x >= lo : x > lo;
    bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
  Rational midpoint() const { return (lo + hi) / 2; }
  std::string str() const {
    return std::string(lo_closed ? "[" : "(") + to_string(lo) + ", " + to_string(hi) + (hi_closed ? "]" : ")");
  }
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
  }
};

/// Set of x in (0, 1] whose expansion starts with the word.
inline Interval fundamental_interval(const Word& w) {
  if (w.empty()) return {Rational(0), Rational(1), false, true};
  size_t n = w.size();
  Rational at = evaluate(w), next = evaluate(underline(w));
  // the endpoint value(w) drops out when it has a shorter expansion of its own
  bool open = n > 1 && w[n - 1] == w[n - 2] + 1;
  if (n % 2 == 1) return {next, at, false, !open};
  return {at, next, !open, false};
}

/// Length 1/(prod(w) (w_n + 1)); the empty word gives 1.
inline Rational interval_length(const Word& w) {
  if (w.empty()) return Rational(1);
  Rational r(1, digit_product(w.view()) * (w.back() + 1));
  r.canonicalize();
  return r;
}

/// Closed hull of the cylinders of w followed by j, for floor(l)+1 <= j <= floor(r).
/// Takes the floors of the next-level bounds directly.
inline Interval basic_interval_from_floors(const Word& w, const BigInt& floor_l, const BigInt& floor_r) {
  BigInt first = floor_l + 1, stop = floor_r + 1;
  if (first > floor_r) throw std::invalid_argument("no integer digit in (l, r]");
  if (sgn(first) <= 0) throw std::invalid_argument("digit bounds must be positive");
  if (!w.empty() && first <= w.back())
    throw std::invalid_argument("next-level bound does not exceed the last digit of the prefix");
  Rational a = evaluate(extend(w, first)), b = evaluate(extend(w, stop));
  if (w.size() % 2 == 0) return {b, a, true, true};
  return {a, b, true, true};
}

inline Interval basic_interval(const Word& w, const Rational& l_next, const Rational& r_next) {
  return basic_interval_from_floors(w, floor(l_next), floor(r_next));
}

/// prod(1/w_k) (1/(floor(l)+1) - 1/(floor(r)+1)).
inline Rational basic_interval_diameter(const Word& w, const BigInt& floor_l, const BigInt& floor_r) {
  Rational inner = Rational(1, floor_l + 1) - Rational(1, floor_r + 1);
  Rational out = inner / Rational(digit_product(w.view()));
  return out;
}

/// Gap between the basic intervals of w and of underline(w) at the next level.
/// Both intervals use the same next-level floors.
inline Interval gap_interval_from_floors(const Word& w, const BigInt& floor_l, const BigInt& floor_r) {
  if (w.empty()) throw std::invalid_argument("gap needs a non-empty word");
  Word up = underline(w);
  if (floor_l + 1 <= up.back()) throw std::invalid_argument("next-level lower bound too small for underline(w)");
  Rational near_w = evaluate(extend(w, floor_l + 1));
  Rational near_up = evaluate(extend(up, floor_r + 1));
  if (w.size() % 2 == 1) return {near_up, near_w, true, true};
  return {near_w, near_up, true, true};
}

}  // namespace pierce
