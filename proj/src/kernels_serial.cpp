#include <vector>

#include "ssp/error.hpp"
#include "ssp/kernels.hpp"
#include "stencils.hpp"

namespace ssp::kernels {

std::vector<double> weno_weights(const WenoTables& t, std::span<const double> window) {
  if (window.size() != static_cast<std::size_t>(2 * t.k - 1))
    throw InvalidParameter("WENO window must hold 2k-1 values");
  std::vector<double> w(t.k);
  detail::weno_face(t, window.data(), w.data());
  return w;
}

double weno_face_value(const WenoTables& t, std::span<const double> window) {
  if (window.size() != static_cast<std::size_t>(2 * t.k - 1))
    throw InvalidParameter("WENO window must hold 2k-1 values");
  return detail::weno_face(t, window.data());
}

namespace serial {

void upwind_difference(std::span<const double> u, double dx, std::span<double> out) {
  const double inv_dx = 1.0 / dx;
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = detail::upwind_at(u, inv_dx, j);
}

void centered_second(std::span<const double> u, double dx, std::span<double> out) {
  const double inv_dx2 = 1.0 / (dx * dx);
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = detail::centered_second_at(u, inv_dx2, j);
}

void weno_derivative(const WenoTables& t, WenoBias bias, std::span<const double> g, double dx,
                     std::span<double> out) {
  const std::size_t n = g.size();
  std::vector<double> face(n);
  for (std::size_t i = 0; i < n; ++i) face[i] = detail::weno_face_at(t, bias, g, i);
  const double inv_dx = 1.0 / dx;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = i == 0 ? n - 1 : i - 1;
    out[i] = (face[i] - face[im]) * inv_dx;
  }
}

void dense_matvec(const Matrix& m, std::span<const double> v, std::span<double> out) {
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = detail::matvec_row(m, v, i);
}

}  // namespace serial
}  // namespace ssp::kernels
