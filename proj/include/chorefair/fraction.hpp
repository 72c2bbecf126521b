#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace chorefair {

// Exact nonnegative-or-signed rational with 64-bit numerator and denominator,
// always stored in lowest terms with a positive denominator. A denominator of
// zero encodes +infinity, used as the sentinel for "positive cost against a
// zero maximin share".
//
// Intermediate products are computed in 128 bits; a result that does not fit
// back into 64 bits throws std::overflow_error.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  static Fraction infinity();

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_infinite() const { return den_ == 0; }

  double to_double() const;

  // "4/3", "2", "0" or "inf".
  std::string str() const;
  // Fixed-point rendering, e.g. "1.333333"; "inf" for the sentinel.
  std::string decimal(int places = 6) const;

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  Fraction& operator+=(const Fraction& other) { return *this = *this + other; }

  friend bool operator==(const Fraction& a, const Fraction& b) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

 private:
  struct Raw {};
  constexpr Fraction(Raw, std::int64_t num, std::int64_t den)
      : num_(num), den_(den) {}

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace chorefair
