#pragma once

// Digit map, alternating-series evaluation and the affine identity tying a
// prefix to the tail of an expansion.

#include <optional>
#include <stdexcept>

#include "pierce/word.hpp"

namespace pierce {

struct ExpansionResult {
  Word digits;
  bool terminated = false;           ///< remainder reached zero before the cap
  Rational remainder = 0;            ///< T^n(x) after the last digit; 0 when terminated
};

inline void require_unit_interval(const Rational& x) {
  if (sgn(x) <= 0 || x > 1) throw std::domain_error("x must lie in (0, 1], got " + to_string(x));
}

/// floor(1/x) for x in (0, 1].
inline BigInt first_digit(const Rational& x) {
  require_unit_interval(x);
  BigInt d;
  mpz_fdiv_q(d.get_mpz_t(), x.get_den_mpz_t(), x.get_num_mpz_t());
  return d;
}

/// T(x) = 1 - floor(1/x) x, which lands in [0, 1/(d+1)).
inline Rational shift(const Rational& x) { return Rational(1) - Rational(first_digit(x)) * x; }

/// Digits of x until the remainder vanishes or `cap` digits are produced.
inline ExpansionResult expand(const Rational& x, size_t cap = 10000) {
  require_unit_interval(x);
  if (cap == 0) throw std::invalid_argument("digit cap must be positive");
  // T(p/q) = (q mod p)/q, so the loop never leaves the integers.
  BigInt p = x.get_num(), q = x.get_den(), d;
  std::vector<BigInt> digits;
  while (sgn(p) > 0 && digits.size() < cap) {
    mpz_fdiv_qr(d.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    digits.push_back(d);
  }
  ExpansionResult out;
  out.digits = Word(std::move(digits));
  out.terminated = sgn(p) == 0;
  Rational r(p, q);
  r.canonicalize();
  out.remainder = r;
  return out;
}

/// Partial sum 1/s1 - 1/(s1 s2) + ... for a non-empty admissible word.
inline Rational evaluate(std::span<const BigInt> digits) {
  if (digits.empty()) throw std::invalid_argument("evaluate needs at least one digit");
  // nested form (1 - (1 - ...)/s2)/s1 kept as p/q without reduction
  BigInt p = 0, q = 1;
  for (size_t k = digits.size(); k-- > 0;) {
    p = q - p;
    q *= digits[k];
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}
inline Rational evaluate(const Word& w) { return evaluate(w.view()); }

/// True when the word is the complete expansion of the rational it evaluates to:
/// admissible, and for length >= 2 the last two digits differ by more than one.
inline bool is_terminal_expansion(const Word& w) {
  if (w.empty()) return false;
  size_t n = w.size();
  return n == 1 || w[n - 1] > w[n - 2] + 1;
}

/// Image of y under the inverse branch along the word:
/// value(w) + (-1)^n y / prod(w). For 0 < y < 1/(w_n + 1) the expansion of the
/// result is w followed by the expansion of y. The empty word gives y itself.
inline Rational affine_shift(const Word& w, const Rational& y) {
  if (w.empty()) return y;
  Rational scaled = y / Rational(digit_product(w.view()));
  if (w.size() % 2 == 0) return evaluate(w) + scaled;
  return evaluate(w) - scaled;
}

}  // namespace pierce
