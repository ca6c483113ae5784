#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pierce/real.hpp"

namespace pierce {

/// Parses "p", "p/q" or a finite decimal "1.25" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    size_t i = 0;
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    t.erase(0, i);
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return BigInt(t, 10);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    trim(p);
    trim(q);
    if (!valid_int(p) || !valid_int(q)) throw std::invalid_argument("malformed rational: " + s);
    BigInt den = to_int(q);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational r(to_int(p), den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.erase(0, 1);
    if (ip.empty()) ip = "0";
    if (fp.empty() || !valid_int(ip) || !valid_int(fp) || fp[0] == '-' || fp[0] == '+')
      throw std::invalid_argument("malformed decimal: " + s);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Rational r(to_int(ip + fp), scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  if (!valid_int(s)) throw std::invalid_argument("malformed rational: " + s);
  return Rational(to_int(s));
}

/// Canonical "p/q" text; integers print with denominator 1.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

inline BigInt floor(const Rational& q) {
  BigInt z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return z;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return Real(q, 64).to_double(); }

}  // namespace pierce
