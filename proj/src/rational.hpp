#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

// Exact rational arithmetic for deriving stencil tables. Values stay small
// (factorial-sized numerators for at most ten interpolation nodes), so a
// reduced int64 pair with 128-bit intermediates is enough; anything that
// would not fit throws instead of silently wrapping.

namespace ssp::detail {

__extension__ using i128 = __int128;

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(i128 n, i128 d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
            static_cast<i128>(a.den_) * b.den_};
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return {static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
            static_cast<i128>(a.den_) * b.den_};
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return {static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_};
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lim = INT64_MAX;
    if (n > lim || -n > lim || d > lim) throw std::overflow_error("rational overflow");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Dense polynomial, coefficient i multiplies t^i.
using Polynomial = std::vector<Rational>;

inline Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.size() <= 1) return {Rational{}};
  Polynomial out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * Rational(static_cast<std::int64_t>(i));
  return out;
}

inline Rational evaluate(const Polynomial& p, const Rational& t) {
  Rational acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

/// Exact integral of p over [lo, hi].
inline Rational integrate(const Polynomial& p, const Rational& lo, const Rational& hi) {
  Polynomial anti(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    anti[i + 1] = p[i] / Rational(static_cast<std::int64_t>(i + 1));
  return evaluate(anti, hi) - evaluate(anti, lo);
}

}  // namespace ssp::detail
