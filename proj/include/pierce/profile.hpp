#pragma once

// Real sequences n -> f(n) built as small expression trees. Each node can be
// evaluated exactly (when the tree stays inside the rationals), as a rigorous
// MPFR enclosure, or directly in log space so that values like exp(3^60)
// stay usable.

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pierce/rational.hpp"

namespace pierce {

class GrowthProfile {
 public:
  enum class Op { Const, Index, Table, Geometric, Add, Sub, Mul, Div, Pow, Exp, Log, Sqrt, Piecewise };

  GrowthProfile() : GrowthProfile(constant(Rational(0))) {}

  // -- construction --------------------------------------------------------
  static GrowthProfile constant(const Rational& c) { return make(Op::Const, c); }
  static GrowthProfile index() { return make(Op::Index); }
  /// values[0] is f(1).
  static GrowthProfile table(std::vector<Rational> values) {
    if (values.empty()) throw std::invalid_argument("table profile needs at least one value");
    auto node = std::make_shared<Node>();
    node->op = Op::Table;
    node->table = std::move(values);
    return GrowthProfile(std::move(node));
  }
  /// base^n.
  static GrowthProfile geometric(const Rational& base) {
    if (sgn(base) <= 0) throw std::invalid_argument("geometric base must be positive");
    return make(Op::Geometric, base);
  }
  /// head(n) for n <= split, tail(n) afterwards.
  static GrowthProfile piecewise(long split, const GrowthProfile& head, const GrowthProfile& tail) {
    if (split <= 0) return tail;
    auto node = std::make_shared<Node>();
    node->op = Op::Piecewise;
    node->split = split;
    node->a = head.node_;
    node->b = tail.node_;
    return GrowthProfile(std::move(node));
  }

  friend GrowthProfile operator+(const GrowthProfile& a, const GrowthProfile& b) { return make(Op::Add, a, b); }
  friend GrowthProfile operator-(const GrowthProfile& a, const GrowthProfile& b) { return make(Op::Sub, a, b); }
  friend GrowthProfile operator*(const GrowthProfile& a, const GrowthProfile& b) { return make(Op::Mul, a, b); }
  friend GrowthProfile operator/(const GrowthProfile& a, const GrowthProfile& b) { return make(Op::Div, a, b); }
  friend GrowthProfile operator+(const GrowthProfile& a, const Rational& c) { return a + constant(c); }
  friend GrowthProfile operator+(const Rational& c, const GrowthProfile& a) { return constant(c) + a; }
  friend GrowthProfile operator-(const GrowthProfile& a, const Rational& c) { return a - constant(c); }
  friend GrowthProfile operator*(const Rational& c, const GrowthProfile& a) { return constant(c) * a; }
  friend GrowthProfile operator/(const GrowthProfile& a, const Rational& c) { return a / constant(c); }
  GrowthProfile pow(const Rational& p) const {
    auto node = std::make_shared<Node>();
    node->op = Op::Pow;
    node->c = p;
    node->a = node_;
    return GrowthProfile(std::move(node));
  }
  friend GrowthProfile exp(const GrowthProfile& a) { return make(Op::Exp, a); }
  friend GrowthProfile log(const GrowthProfile& a) { return make(Op::Log, a); }
  friend GrowthProfile sqrt(const GrowthProfile& a) { return make(Op::Sqrt, a); }

  // -- evaluation ----------------------------------------------------------

  /// Exact value when the tree only uses rational operations at this index.
  std::optional<Rational> exact(long n) const { return exact_at(*node_, n); }

  /// Rigorous enclosure of f(n).
  Enclosure enclose(long n, mpfr_prec_t prec = default_precision()) const {
    check_index(n);
    return enclose_at(*node_, n, prec);
  }

  /// Rigorous enclosure of log f(n); throws std::domain_error when f(n) is not
  /// certified positive.
  Enclosure log_enclose(long n, mpfr_prec_t prec = default_precision()) const {
    check_index(n);
    return log_at(*node_, n, prec);
  }

  Real value(long n, mpfr_prec_t prec = default_precision()) const {
    if (auto q = exact(n)) return Real(*q, prec);
    return enclose(n, prec + 16).mid();
  }
  Real log(long n, mpfr_prec_t prec = default_precision()) const {
    if (auto q = exact(n)) return log_real(*q, prec);
    return log_enclose(n, prec + 16).mid();
  }

  /// Certified floor of f(n). Raises the working precision until the enclosure
  /// fits between consecutive integers. Refuses values above 2^max_bits.
  BigInt floor(long n, long max_bits = 1L << 22) const {
    if (auto q = exact(n)) return pierce::floor(*q);
    double bits = 0;
    try {
      Enclosure lg = log_enclose(n, 64);
      bits = lg.hi.is_finite() ? lg.hi.to_double() / std::log(2.0) : HUGE_VAL;
    } catch (const std::domain_error&) {
      bits = 0;  // not certified positive, so the magnitude is small or negative
    }
    if (bits > static_cast<double>(max_bits))
      throw std::domain_error("profile value at n=" + std::to_string(n) + " exceeds 2^" + std::to_string(max_bits) +
                              "; exact floor refused");
    long mag_bits = std::max(64L, static_cast<long>(bits) + 1);
    mpfr_prec_t prec = mag_bits + 64;
    for (int attempt = 0; attempt < 8; ++attempt, prec *= 2) {
      Enclosure e = enclose(n, prec);
      if (!e.finite()) throw std::domain_error("profile value is not finite at n=" + std::to_string(n));
      BigInt a = e.lo.floor(), b = e.hi.floor();
      if (a == b) return a;
    }
    throw std::domain_error("floor of " + describe() + " at n=" + std::to_string(n) + " could not be certified");
  }

  std::string describe() const { return describe_node(*node_); }
  Op op() const { return node_->op; }

  /// Largest index a table profile is defined on; unbounded profiles report -1.
  long max_index() const { return max_index_of(*node_); }

 private:
  struct Node {
    Op op = Op::Const;
    Rational c;
    long split = 0;
    std::vector<Rational> table;
    std::shared_ptr<const Node> a, b;
  };

  explicit GrowthProfile(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static GrowthProfile make(Op op, const Rational& c = Rational(0)) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->c = c;
    return GrowthProfile(std::move(node));
  }
  static GrowthProfile make(Op op, const GrowthProfile& a) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->a = a.node_;
    return GrowthProfile(std::move(node));
  }
  static GrowthProfile make(Op op, const GrowthProfile& a, const GrowthProfile& b) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->a = a.node_;
    node->b = b.node_;
    return GrowthProfile(std::move(node));
  }

  void check_index(long n) const {
    if (n < 1) throw std::invalid_argument("profile index must be >= 1");
  }

  static long max_index_of(const Node& x) {
    switch (x.op) {
      case Op::Table: return static_cast<long>(x.table.size());
      case Op::Piecewise: return max_index_of(*x.b);
      case Op::Const: case Op::Index: case Op::Geometric: return -1;
      default: {
        long a = x.a ? max_index_of(*x.a) : -1;
        long b = x.b ? max_index_of(*x.b) : -1;
        if (a < 0) return b;
        if (b < 0) return a;
        return std::min(a, b);
      }
    }
  }

  static const Rational& table_at(const Node& x, long n) {
    if (n < 1 || static_cast<size_t>(n) > x.table.size())
      throw std::out_of_range("table profile has no entry at n=" + std::to_string(n));
    return x.table[static_cast<size_t>(n - 1)];
  }

  static bool is_integer(const Rational& q) { return q.get_den() == 1; }

  static std::optional<Rational> exact_at(const Node& x, long n) {
    switch (x.op) {
      case Op::Const: return x.c;
      case Op::Index: return Rational(n);
      case Op::Table: return table_at(x, n);
      case Op::Geometric: return pierce::pow(x.c, static_cast<unsigned long>(n));
      case Op::Piecewise: return exact_at(n <= x.split ? *x.a : *x.b, n);
      case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: {
        auto a = exact_at(*x.a, n);
        if (!a) return std::nullopt;
        auto b = exact_at(*x.b, n);
        if (!b) return std::nullopt;
        if (x.op == Op::Add) return Rational(*a + *b);
        if (x.op == Op::Sub) return Rational(*a - *b);
        if (x.op == Op::Mul) return Rational(*a * *b);
        if (sgn(*b) == 0) throw std::domain_error("profile divides by zero at n=" + std::to_string(n));
        return Rational(*a / *b);
      }
      case Op::Pow: {
        if (!is_integer(x.c)) return std::nullopt;
        auto a = exact_at(*x.a, n);
        if (!a) return std::nullopt;
        long e = x.c.get_num().get_si();
        if (e >= 0) return pierce::pow(*a, static_cast<unsigned long>(e));
        if (sgn(*a) == 0) throw std::domain_error("negative power of zero");
        return Rational(Rational(1) / pierce::pow(*a, static_cast<unsigned long>(-e)));
      }
      case Op::Exp: case Op::Log: case Op::Sqrt: return std::nullopt;
    }
    return std::nullopt;
  }

  static Enclosure enclose_at(const Node& x, long n, mpfr_prec_t prec) {
    if (auto q = exact_at(x, n)) return Enclosure::point(*q, prec);
    switch (x.op) {
      case Op::Piecewise: return enclose_at(n <= x.split ? *x.a : *x.b, n, prec);
      case Op::Add: return encl::add(enclose_at(*x.a, n, prec), enclose_at(*x.b, n, prec));
      case Op::Sub: return encl::sub(enclose_at(*x.a, n, prec), enclose_at(*x.b, n, prec));
      case Op::Mul: return encl::mul(enclose_at(*x.a, n, prec), enclose_at(*x.b, n, prec));
      case Op::Div: return encl::div(enclose_at(*x.a, n, prec), enclose_at(*x.b, n, prec));
      case Op::Pow: {
        Enclosure a = enclose_at(*x.a, n, prec);
        if (is_integer(x.c) && sgn(x.c) >= 0 && !a.positive()) {
          Enclosure r = Enclosure::point(Rational(1), prec);
          for (long e = x.c.get_num().get_si(); e > 0; --e) r = encl::mul(r, a);
          return r;
        }
        return encl::pow(a, x.c);
      }
      case Op::Exp: return encl::exp(enclose_at(*x.a, n, prec));
      case Op::Log: return encl::log(enclose_at(*x.a, n, prec));
      case Op::Sqrt: return encl::sqrt(enclose_at(*x.a, n, prec));
      default: break;
    }
    throw std::logic_error("unhandled profile node");
  }

  static Enclosure log_at(const Node& x, long n, mpfr_prec_t prec) {
    if (auto q = exact_at(x, n)) {
      if (sgn(*q) <= 0) throw std::domain_error("log of a non-positive profile value at n=" + std::to_string(n));
      return encl::log_of(*q, prec);
    }
    switch (x.op) {
      case Op::Piecewise: return log_at(n <= x.split ? *x.a : *x.b, n, prec);
      case Op::Mul: return encl::add(log_at(*x.a, n, prec), log_at(*x.b, n, prec));
      case Op::Div: return encl::sub(log_at(*x.a, n, prec), log_at(*x.b, n, prec));
      case Op::Pow: return encl::mul(Enclosure::point(x.c, prec), log_at(*x.a, n, prec));
      case Op::Exp: return enclose_at(*x.a, n, prec);
      case Op::Sqrt: return encl::mul(Enclosure::point(Rational(1, 2), prec), log_at(*x.a, n, prec));
      case Op::Log: return encl::log(log_at(*x.a, n, prec));
      case Op::Add: {
        // log(a + b) = log a + log(1 + b/a), with a the larger term
        try {
          Enclosure la = log_at(*x.a, n, prec), lb = log_at(*x.b, n, prec);
          if (la.mid() < lb.mid()) std::swap(la, lb);
          return encl::add(la, encl::log1p_exp(encl::sub(lb, la)));
        } catch (const std::domain_error&) {
          return encl::log(enclose_at(x, n, prec));
        }
      }
      case Op::Sub: {
        try {
          Enclosure la = log_at(*x.a, n, prec), lb = log_at(*x.b, n, prec);
          Enclosure d = encl::sub(lb, la);
          if (d.hi.sign() < 0) return encl::add(la, encl::log1m_exp(d));
        } catch (const std::domain_error&) {
        }
        return encl::log(enclose_at(x, n, prec));
      }
      default: break;
    }
    return encl::log(enclose_at(x, n, prec));
  }

  static std::string describe_node(const Node& x) {
    switch (x.op) {
      case Op::Const: return to_string_short(x.c);
      case Op::Index: return "n";
      case Op::Table: return "table[" + std::to_string(x.table.size()) + "]";
      case Op::Geometric: return to_string_short(x.c) + "^n";
      case Op::Add: return "(" + describe_node(*x.a) + " + " + describe_node(*x.b) + ")";
      case Op::Sub: return "(" + describe_node(*x.a) + " - " + describe_node(*x.b) + ")";
      case Op::Mul: return describe_node(*x.a) + "*" + describe_node(*x.b);
      case Op::Div: return describe_node(*x.a) + "/" + describe_node(*x.b);
      case Op::Pow: return "(" + describe_node(*x.a) + ")^(" + to_string_short(x.c) + ")";
      case Op::Exp: return "exp(" + describe_node(*x.a) + ")";
      case Op::Log: return "log(" + describe_node(*x.a) + ")";
      case Op::Sqrt: return "sqrt(" + describe_node(*x.a) + ")";
      case Op::Piecewise:
        return "(n<=" + std::to_string(x.split) + " ? " + describe_node(*x.a) + " : " + describe_node(*x.b) + ")";
    }
    return "?";
  }

  static std::string to_string_short(const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
  }

  std::shared_ptr<const Node> node_;
};

/// Outcome of comparing two profile values.
enum class Ordering { Less, Equal, Greater, Unresolved };

/// Compares a(na) with b(nb). Exact when both sides are rational, otherwise
/// through log-space enclosures at increasing precision.
inline Ordering compare_values(const GrowthProfile& a, long na, const GrowthProfile& b, long nb,
                               mpfr_prec_t start_prec = 128, mpfr_prec_t max_prec = 4096) {
  auto qa = a.exact(na), qb = b.exact(nb);
  if (qa && qb) return *qa < *qb ? Ordering::Less : *qa > *qb ? Ordering::Greater : Ordering::Equal;
  for (mpfr_prec_t p = start_prec; p <= max_prec; p *= 4) {
    std::optional<Enclosure> ea, eb;
    try {
      ea = a.log_enclose(na, p);
      eb = b.log_enclose(nb, p);
    } catch (const std::domain_error&) {
      ea = a.enclose(na, p);
      eb = b.enclose(nb, p);
    }
    if (ea->hi < eb->lo) return Ordering::Less;
    if (ea->lo > eb->hi) return Ordering::Greater;
  }
  return Ordering::Unresolved;
}

/// Compares f(n) with a rational constant.
inline Ordering compare_value(const GrowthProfile& f, long n, const Rational& c) {
  return compare_values(f, n, GrowthProfile::constant(c), 1);
}

}  // namespace pierce
