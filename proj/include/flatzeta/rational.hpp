#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace flatzeta {

/// Exact rational number with 64-bit numerator and positive denominator,
/// always stored in lowest terms.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "num/den" or a plain integer. Decimal points are rejected so that
  /// values like 0.1 cannot silently lose exactness.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  std::string str() const;

  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x) { return Rational(-x.num_, x.den_); }

  friend bool operator==(const Rational& x, const Rational& y) = default;
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace flatzeta
