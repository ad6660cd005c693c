#include <cstddef>
#include <vector>

#include "ssp/kernels.hpp"
#include "stencils.hpp"

namespace ssp::kernels::omp {
namespace {
// Below this many points the fork/join costs more than the loop.
constexpr std::ptrdiff_t kParallelThreshold = 512;
}  // namespace

void upwind_difference(std::span<const double> u, double dx, std::span<double> out) {
  const double inv_dx = 1.0 / dx;
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = detail::upwind_at(u, inv_dx, j);
}

void centered_second(std::span<const double> u, double dx, std::span<double> out) {
  const double inv_dx2 = 1.0 / (dx * dx);
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = detail::centered_second_at(u, inv_dx2, j);
}

void weno_derivative(const WenoTables& t, WenoBias bias, std::span<const double> g, double dx,
                     std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  std::vector<double> face(g.size());
  const double inv_dx = 1.0 / dx;
#pragma omp parallel if (n >= kParallelThreshold)
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) face[i] = detail::weno_face_at(t, bias, g, i);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::ptrdiff_t im = i == 0 ? n - 1 : i - 1;
      out[i] = (face[i] - face[im]) * inv_dx;
    }
  }
}

void dense_matvec(const Matrix& m, std::span<const double> v, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(m.rows());
#pragma omp parallel for schedule(static) if (rows >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < rows; ++i) out[i] = detail::matvec_row(m, v, i);
}

}  // namespace ssp::kernels::omp
