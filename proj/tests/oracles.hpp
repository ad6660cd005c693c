#pragma once

// Reference computations written independently of the library code paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ssp/matrix.hpp"
#include "ssp/tableau.hpp"

namespace oracle {

using Vec = std::vector<double>;

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

/// Gauss-Jordan inverse with partial pivoting.
inline ssp::Matrix inverse(const ssp::Matrix& m) {
  const std::size_t n = m.rows();
  ssp::Matrix a = m;
  ssp::Matrix inv = ssp::Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(piv, j));
      std::swap(inv(col, j), inv(piv, j));
    }
    const double d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

struct ShuOsher {
  Vec rv;
  ssp::Matrix p;
  ssp::Matrix q;
};

/// Rv = M^-1 e, P = r M^-1 S, Q = r^2/K^2 M^-1 Shat with M = I + rS + r^2/K^2 Shat.
inline ShuOsher shu_osher(const ssp::TwoDerivativeTableau& t, double r, double k) {
  const std::size_t s = t.stages();
  ssp::Matrix S(s + 1, s + 1), Sh(s + 1, s + 1);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      S(i, j) = t.a()(i, j);
      Sh(i, j) = t.ahat()(i, j);
    }
  for (std::size_t j = 0; j < s; ++j) {
    S(s, j) = t.b()[j];
    Sh(s, j) = t.bhat()[j];
  }
  const double rh = r * r / (k * k);
  ssp::Matrix M = ssp::Matrix::identity(s + 1);
  for (std::size_t i = 0; i <= s; ++i)
    for (std::size_t j = 0; j <= s; ++j) M(i, j) += r * S(i, j) + rh * Sh(i, j);
  const ssp::Matrix Mi = inverse(M);
  ShuOsher out{Vec(s + 1, 0.0), Mi * S, Mi * Sh};
  for (std::size_t i = 0; i <= s; ++i) {
    for (std::size_t j = 0; j <= s; ++j) {
      out.rv[i] += Mi(i, j);
      out.p(i, j) *= r;
      out.q(i, j) *= rh;
    }
  }
  return out;
}

/// Smallest entry of the Shu-Osher arrays.
inline double min_entry(const ShuOsher& f) {
  double m = *std::min_element(f.rv.begin(), f.rv.end());
  for (double x : f.p.data()) m = std::min(m, x);
  for (double x : f.q.data()) m = std::min(m, x);
  return m;
}

/// Two-derivative step of an autonomous ODE system in plain Butcher form.
using Field = std::function<Vec(const Vec&)>;

inline Vec butcher_step(const ssp::TwoDerivativeTableau& t, const Field& f, const Field& fdot,
                        const Vec& u, double dt) {
  const std::size_t s = t.stages();
  std::vector<Vec> F, G;
  for (std::size_t i = 0; i < s; ++i) {
    Vec y = u;
    for (std::size_t j = 0; j < i; ++j)
      for (std::size_t m = 0; m < u.size(); ++m)
        y[m] += dt * t.a()(i, j) * F[j][m] + dt * dt * t.ahat()(i, j) * G[j][m];
    F.push_back(f(y));
    G.push_back(fdot(y));
  }
  Vec out = u;
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t m = 0; m < u.size(); ++m)
      out[m] += dt * t.b()[j] * F[j][m] + dt * dt * t.bhat()[j] * G[j][m];
  return out;
}

/// Nonlinear test system x' = y + x^2/4, y' = -sin(x) with Fdot = J F.
inline Vec test_field(const Vec& u) { return {u[1] + 0.25 * u[0] * u[0], -std::sin(u[0])}; }
inline Vec test_field_dot(const Vec& u) {
  const Vec f = test_field(u);
  return {0.5 * u[0] * f[0] + f[1], -std::cos(u[0]) * f[0]};
}

/// Classical RK4 with many substeps; accurate to round-off over one step.
inline Vec reference_flow(const Vec& u0, double t, int substeps = 4000) {
  Vec u = u0;
  const double h = t / substeps;
  for (int n = 0; n < substeps; ++n) {
    const Vec k1 = test_field(u);
    Vec tmp = {u[0] + 0.5 * h * k1[0], u[1] + 0.5 * h * k1[1]};
    const Vec k2 = test_field(tmp);
    tmp = {u[0] + 0.5 * h * k2[0], u[1] + 0.5 * h * k2[1]};
    const Vec k3 = test_field(tmp);
    tmp = {u[0] + h * k3[0], u[1] + h * k3[1]};
    const Vec k4 = test_field(tmp);
    for (int m = 0; m < 2; ++m) u[m] += h / 6.0 * (k1[m] + 2 * k2[m] + 2 * k3[m] + k4[m]);
  }
  return u;
}

/// Observed local order: log2 of the one-step error ratio at dt and dt/2, minus one.
inline double local_order(const ssp::TwoDerivativeTableau& t, double dt) {
  const Vec u0 = {0.7, -0.3};
  const double e1 = max_abs_diff(butcher_step(t, test_field, test_field_dot, u0, dt),
                                 reference_flow(u0, dt));
  const double e2 = max_abs_diff(butcher_step(t, test_field, test_field_dot, u0, dt / 2),
                                 reference_flow(u0, dt / 2));
  return std::log2(e1 / e2) - 1.0;
}

/// Classical fifth-order WENO of Jiang and Shu for the face value at j+1/2
/// from f_{j-2}..f_{j+2}.
inline double weno5_face(double a, double b, double c, double d, double e, double eps = 1e-6) {
  const double q0 = a / 3 - 7 * b / 6 + 11 * c / 6;
  const double q1 = -b / 6 + 5 * c / 6 + d / 3;
  const double q2 = c / 3 + 5 * d / 6 - e / 6;
  const double s0 = 13.0 / 12 * std::pow(a - 2 * b + c, 2) + 0.25 * std::pow(a - 4 * b + 3 * c, 2);
  const double s1 = 13.0 / 12 * std::pow(b - 2 * c + d, 2) + 0.25 * std::pow(b - d, 2);
  const double s2 = 13.0 / 12 * std::pow(c - 2 * d + e, 2) + 0.25 * std::pow(3 * c - 4 * d + e, 2);
  const double w0 = 0.1 / std::pow(eps + s0, 2);
  const double w1 = 0.6 / std::pow(eps + s1, 2);
  const double w2 = 0.3 / std::pow(eps + s2, 2);
  return (w0 * q0 + w1 * q1 + w2 * q2) / (w0 + w1 + w2);
}

inline Vec weno5_plus_derivative(const Vec& g, double dx) {
  const std::size_t n = g.size();
  auto at = [&](long j) { return g[static_cast<std::size_t>((j % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n))]; };
  Vec face(n), out(n);
  for (long j = 0; j < static_cast<long>(n); ++j)
    face[static_cast<std::size_t>(j)] = weno5_face(at(j - 2), at(j - 1), at(j), at(j + 1), at(j + 2));
  for (std::size_t j = 0; j < n; ++j) out[j] = (face[j] - face[(j + n - 1) % n]) / dx;
  return out;
}

inline Vec weno5_minus_derivative(const Vec& g, double dx) {
  const std::size_t n = g.size();
  auto at = [&](long j) { return g[static_cast<std::size_t>((j % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n))]; };
  Vec face(n), out(n);
  for (long j = 0; j < static_cast<long>(n); ++j)
    face[static_cast<std::size_t>(j)] = weno5_face(at(j + 3), at(j + 2), at(j + 1), at(j), at(j - 1));
  for (std::size_t j = 0; j < n; ++j) out[j] = (face[j] - face[(j + n - 1) % n]) / dx;
  return out;
}

/// Spectral derivative by explicit discrete Fourier sums on [0, 2pi), n odd.
inline Vec dft_derivative(const Vec& u) {
  const std::size_t n = u.size();
  const long m = static_cast<long>(n - 1) / 2;
  Vec out(n, 0.0);
  for (long k = -m; k <= m; ++k) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double th = 2 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(n);
      re += u[j] * std::cos(th);
      im -= u[j] * std::sin(th);
    }
    re /= static_cast<double>(n);
    im /= static_cast<double>(n);
    // derivative multiplies by i k
    const double dre = -static_cast<double>(k) * im;
    const double dim = static_cast<double>(k) * re;
    for (std::size_t j = 0; j < n; ++j) {
      const double th = 2 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(n);
      out[j] += dre * std::cos(th) - dim * std::sin(th);
    }
  }
  return out;
}

/// Burgers characteristic foot by bisection on the monotone map xi + t U0(xi).
inline double burgers_by_bisection(double x, double t, const std::function<double(double)>& u0,
                                   double umin, double umax) {
  double lo = x - t * umax - 1e-9;
  double hi = x - t * umin + 1e-9;
  auto g = [&](double xi) { return xi + t * u0(xi) - x; };
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return u0(0.5 * (lo + hi));
}

inline double total_variation(const Vec& u) {
  double tv = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) tv += std::abs(u[(j + 1) % u.size()] - u[j]);
  return tv;
}

}  // namespace oracle
