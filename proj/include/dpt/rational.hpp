#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dpt {

/// Exact non-negative rational used for proximity parameters, so that
/// thresholds such as ceil(eps * m) are never subject to rounding.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  /// Accepts "p/q", integers, and finite decimals ("0.2").
  static Rational parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("bad rational '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      return Rational(parse_int(text.substr(0, slash), fail), parse_int(text.substr(slash + 1), fail));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto frac = text.substr(dot + 1);
      if (frac.size() > 12) fail();
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      const auto whole = dot == 0 ? std::int64_t{0} : parse_int(text.substr(0, dot), fail);
      const auto part = frac.empty() ? std::int64_t{0} : parse_int(frac, fail);
      return Rational(whole * den + part, den);
    }
    return Rational(parse_int(text, fail), 1);
  }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// ceil(this * m) computed exactly.
  [[nodiscard]] std::int64_t ceil_times(std::int64_t m) const {
    const auto p = num_ * m;
    return p >= 0 ? (p + den_ - 1) / den_ : -((-p) / den_);
  }

  /// ceil(c / this).
  [[nodiscard]] std::int64_t ceil_inverse_times(std::int64_t c) const {
    if (num_ <= 0) throw std::domain_error("inverse of non-positive rational");
    return (c * den_ + num_ - 1) / num_;
  }

  [[nodiscard]] bool in_unit_interval() const { return num_ > 0 && num_ <= den_; }

  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, std::int64_t k) { return Rational(a.num_, a.den_ * k); }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

 private:
  template <class Fail>
  static std::int64_t parse_int(std::string_view s, Fail&& fail) {
    if (s.empty()) fail();
    std::int64_t v = 0;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
      if (s.size() == 1) fail();
    }
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail();
      v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace dpt
