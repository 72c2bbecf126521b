#include "chorefair/fraction.hpp"

#include <limits>
#include <stdexcept>

namespace chorefair {

namespace {

using Wide = __int128;

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(Wide value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("Fraction: value does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
  Wide n = num;
  Wide d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

Fraction Fraction::infinity() { return Fraction(Raw{}, 1, 0); }

double Fraction::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Fraction::str() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Fraction::decimal(int places) const {
  if (is_infinite()) return "inf";
  // Round half away from zero on the exact value, then print digits.
  Wide scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Wide n = num_;
  bool negative = n < 0;
  if (negative) n = -n;
  Wide scaled = (n * scale * 2 + den_) / (2 * static_cast<Wide>(den_));
  auto whole = static_cast<long long>(scaled / scale);
  auto frac = static_cast<long long>(scaled % scale);
  std::string out = (negative && scaled != 0 ? "-" : "") + std::to_string(whole);
  if (places > 0) {
    std::string digits = std::to_string(frac);
    out += "." + std::string(static_cast<std::size_t>(places) - digits.size(), '0') + digits;
  }
  return out;
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.is_infinite() || b.is_infinite()) {
    throw std::domain_error("Fraction: arithmetic on infinity");
  }
  Wide n = static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_;
  Wide d = static_cast<Wide>(a.den_) * b.den_;
  Wide g = wide_gcd(n, d);
  return Fraction(narrow(n / g), narrow(d / g));
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  return a + Fraction(-b.num(), b.den());
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  if (a.is_infinite() || b.is_infinite()) {
    throw std::domain_error("Fraction: arithmetic on infinity");
  }
  Wide n = static_cast<Wide>(a.num_) * b.num_;
  Wide d = static_cast<Wide>(a.den_) * b.den_;
  Wide g = wide_gcd(n, d);
  return Fraction(narrow(n / g), narrow(d / g));
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.is_infinite() || b.num() == 0) {
    throw std::domain_error("Fraction: division by zero or infinity");
  }
  return a * Fraction(b.den(), b.num());
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace chorefair
