#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "backbone/error.hpp"

namespace backbone {

// Exact rational with a normalized (positive-denominator, reduced) form.
// Degree thresholds are compared exactly; floating point never decides one.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    require(d != 0, "rational with zero denominator");
    normalize();
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend Rational operator+(Rational a, Rational b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend Rational operator-(Rational a, Rational b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend Rational operator*(Rational a, Rational b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend Rational operator/(Rational a, Rational b) {
    require(b.num != 0, "rational division by zero");
    return {a.num * b.den, a.den * b.num};
  }

  friend bool operator==(Rational a, Rational b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(Rational a, Rational b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(Rational a, Rational b) { return a == b || a < b; }
  friend bool operator>(Rational a, Rational b) { return b < a; }
  friend bool operator>=(Rational a, Rational b) { return b <= a; }

  // Smallest integer >= value.
  std::int64_t ceil() const {
    std::int64_t q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// ceil(a/2) for nonnegative a; the halving bounds use it everywhere.
inline std::int64_t half_up(std::int64_t a) { return (a + 1) / 2; }

}  // namespace backbone
