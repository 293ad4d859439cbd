#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sehgalkit {

using i64 = std::int64_t;
using i128 = __int128;

struct arithmetic_overflow : std::runtime_error {
  arithmetic_overflow() : std::runtime_error("128-bit arithmetic overflow") {}
};

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw arithmetic_overflow();
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw arithmetic_overflow();
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_overflow();
  return r;
}

inline i128 gcd_i128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string to_string_i128(i128 v);

// Exact rational on 128-bit integers. Always normalized: den > 0, gcd(num, den) = 1.
// Overflow throws arithmetic_overflow rather than silently wrapping.
struct Rational {
  i128 num = 0;
  i128 den = 1;

  Rational() = default;
  Rational(i64 n) : num(n), den(1) {}
  Rational(i128 n, i128 d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd_i128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    i128 g = gcd_i128(a.den, b.den);
    i128 bd = b.den / g;
    i128 n = checked_add(checked_mul(a.num, bd), checked_mul(b.num, a.den / g));
    i128 d = checked_mul(a.den, bd);
    return Rational(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num, b.den); }
  friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    i128 g1 = gcd_i128(a.num, b.den);
    i128 g2 = gcd_i128(b.num, a.den);
    return Rational(checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den, b.num);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  bool is_zero() const { return num == 0; }
  bool is_negative() const { return num < 0; }
  bool is_integer() const { return den == 1; }

  // Largest integer <= value.
  i128 floor() const {
    i128 q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }
  // Smallest integer >= value.
  i128 ceil() const {
    i128 q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
  }

  std::string str() const {
    if (den == 1) return to_string_i128(num);
    return to_string_i128(num) + "/" + to_string_i128(den);
  }
};

}  // namespace sehgalkit
