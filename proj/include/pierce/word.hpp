#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pierce/rational.hpp"

namespace pierce {

namespace detail {
inline bool increasing_positive(std::span<const BigInt> digits) {
  for (size_t i = 0; i < digits.size(); ++i) {
    if (sgn(digits[i]) <= 0) return false;
    if (i > 0 && digits[i] <= digits[i - 1]) return false;
  }
  return true;
}
}  // namespace detail

/// Non-empty, positive and strictly increasing.
inline bool is_admissible(std::span<const BigInt> digits) {
  return !digits.empty() && detail::increasing_positive(digits);
}

/// Finite strictly increasing sequence of positive integers. The empty word is
/// allowed and stands for the root of the digit tree.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<BigInt> digits) : d_(std::move(digits)) {
    if (!detail::increasing_positive(d_)) throw std::invalid_argument("word is not strictly increasing and positive: " + str());
  }
  Word(std::initializer_list<long> digits) {
    d_.reserve(digits.size());
    for (long v : digits) d_.emplace_back(v);
    if (!detail::increasing_positive(d_)) throw std::invalid_argument("word is not strictly increasing and positive: " + str());
  }

  size_t size() const { return d_.size(); }
  bool empty() const { return d_.empty(); }
  const BigInt& operator[](size_t i) const { return d_[i]; }
  const BigInt& back() const {
    if (d_.empty()) throw std::invalid_argument("empty word has no last digit");
    return d_.back();
  }
  const std::vector<BigInt>& digits() const { return d_; }
  std::span<const BigInt> view() const { return d_; }
  auto begin() const { return d_.begin(); }
  auto end() const { return d_.end(); }

  Word prefix(size_t n) const {
    if (n > d_.size()) throw std::invalid_argument("prefix longer than word");
    Word w;
    w.d_.assign(d_.begin(), d_.begin() + static_cast<long>(n));
    return w;
  }

  /// Appends j; j must exceed the current last digit.
  void push_back(BigInt j) {
    if (sgn(j) <= 0 || (!d_.empty() && j <= d_.back()))
      throw std::invalid_argument("appended digit " + j.get_str() + " breaks monotonicity");
    d_.push_back(std::move(j));
  }

  std::string str() const {
    std::string s = "<";
    for (size_t i = 0; i < d_.size(); ++i) {
      if (i) s += ",";
      s += d_[i].get_str();
    }
    return s + ">";
  }

  friend bool operator==(const Word& a, const Word& b) { return a.d_ == b.d_; }

 private:
  std::vector<BigInt> d_;
};

/// Same word with the last digit raised by one.
inline Word underline(const Word& w) {
  if (w.empty()) throw std::invalid_argument("underline of the empty word");
  std::vector<BigInt> d = w.digits();
  d.back() += 1;
  return Word(std::move(d));
}

/// The word followed by j (j must exceed the last digit).
inline Word extend(const Word& w, const BigInt& j) {
  Word out = w;
  out.push_back(j);
  return out;
}

inline BigInt digit_product(std::span<const BigInt> digits) {
  BigInt p = 1;
  for (const auto& d : digits) p *= d;
  return p;
}

/// Parses "1,3,7" or "<1,3,7>" (spaces allowed).
inline Word parse_word(std::string_view text) {
  std::vector<BigInt> digits;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    for (char c : cur)
      if (c < '0' || c > '9') throw std::invalid_argument("malformed digit '" + cur + "'");
    digits.emplace_back(cur, 10);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '<' || c == '>' || c == '[' || c == ']')
      flush();
    else
      cur += c;
  }
  flush();
  return Word(std::move(digits));
}

}  // namespace pierce
