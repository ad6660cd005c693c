#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "ssp/kernels.hpp"

// Per-point bodies shared by the serial and OpenMP kernels.

namespace ssp::kernels::detail {

inline constexpr int kMaxWenoK = 5;

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  i %= m;
  return static_cast<std::size_t>(i < 0 ? i + m : i);
}

/// `v` holds 2k-1 values ordered upwind to downwind around cell 0.
inline double weno_face(const WenoTables& t, const double* v, double* weights_out = nullptr) {
  const int k = t.k;
  std::array<double, kMaxWenoK> q{};
  std::array<double, kMaxWenoK> alpha{};
  double alpha_sum = 0.0;
  for (int r = 0; r < k; ++r) {
    const double* s = v + r;  // stencil r starts at window index r
    const auto& c = t.recon[r];
    double qr = 0.0;
    for (int j = 0; j < k; ++j) qr += c[j] * s[j];
    const auto& form = t.smooth[r];
    double beta = 0.0;
    for (int a = 0; a < k; ++a) {
      double row = form[a][a] * s[a];
      for (int b = a + 1; b < k; ++b) row += 2.0 * form[a][b] * s[b];
      beta += row * s[a];
    }
    const double denom = t.epsilon + beta;
    q[r] = qr;
    alpha[r] = t.linear[r] / (denom * denom);
    alpha_sum += alpha[r];
  }
  double face = 0.0;
  for (int r = 0; r < k; ++r) {
    const double w = alpha[r] / alpha_sum;
    if (weights_out) weights_out[r] = w;
    face += w * q[r];
  }
  return face;
}

/// Face value at the right edge of cell i.
inline double weno_face_at(const WenoTables& t, WenoBias bias, std::span<const double> g,
                           std::size_t i) {
  const int k = t.k;
  const std::size_t n = g.size();
  std::array<double, 2 * kMaxWenoK - 1> window{};
  const auto ii = static_cast<std::ptrdiff_t>(i);
  if (bias == WenoBias::Plus) {
    for (int o = -(k - 1); o <= k - 1; ++o) window[o + k - 1] = g[wrap(ii + o, n)];
  } else {
    // Mirror around the face: upwind for a left-moving wave is cell i+1.
    for (int o = -(k - 1); o <= k - 1; ++o) window[o + k - 1] = g[wrap(ii + 1 - o, n)];
  }
  return weno_face(t, window.data());
}

inline double upwind_at(std::span<const double> u, double inv_dx, std::size_t j) {
  const std::size_t n = u.size();
  const std::size_t jp = j + 1 == n ? 0 : j + 1;
  return (u[jp] - u[j]) * inv_dx;
}

inline double centered_second_at(std::span<const double> u, double inv_dx2, std::size_t j) {
  const std::size_t n = u.size();
  const std::size_t jp = j + 1 == n ? 0 : j + 1;
  const std::size_t jm = j == 0 ? n - 1 : j - 1;
  return (u[jp] - 2.0 * u[j] + u[jm]) * inv_dx2;
}

inline double matvec_row(const Matrix& m, std::span<const double> v, std::size_t i) {
  const auto row = m.row(i);
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * v[j];
  return acc;
}

}  // namespace ssp::kernels::detail
