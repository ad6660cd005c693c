#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ssp/matrix.hpp"

// Pointwise periodic stencil kernels. Every kernel exists twice: an OpenMP
// version used by the solvers and a plain serial reference that the tests
// compare against bit for bit. Both evaluate the same per-point expression,
// so thread partitioning cannot change a result.

namespace ssp::kernels {

enum class WenoBias {
  Plus,   // left-biased stencils, flux with f'(u) >= 0
  Minus,  // mirror image, flux with f'(u) <= 0
};

/// Reconstruction data for a WENO scheme of order 2k-1, built once from
/// exact rational arithmetic.
struct WenoTables {
  int order = 0;
  int k = 0;
  /// recon[r][j]: weight of cell (r - k + 1 + j) in candidate stencil r for
  /// the value at the right face of cell 0.
  std::vector<std::vector<double>> recon;
  /// Optimal linear weights; sum to one.
  std::vector<double> linear;
  /// smooth[r][a][b]: symmetric quadratic form of the smoothness indicator
  /// of stencil r in that stencil's k values.
  std::vector<std::vector<std::vector<double>>> smooth;
  /// Order 2k-1 reconstruction on the full 2k-1 cell stencil (offsets
  /// -(k-1)..k-1). Equals sum_r linear[r] * recon[r] after embedding.
  std::vector<double> central;
  double epsilon = 1e-6;
};

/// Tables for order 5, 7 or 9; throws UnsupportedParameter otherwise.
/// Returned references are to immutable statics.
const WenoTables& weno_tables(int order);

/// Nonlinear weights for the interface to the right of cell 0 given the
/// 2k-1 upwind-ordered values (offsets -(k-1)..k-1).
std::vector<double> weno_weights(const WenoTables& t, std::span<const double> window);

/// Reconstructed face value from the same window.
double weno_face_value(const WenoTables& t, std::span<const double> window);

/// Minimum number of grid points for a WENO table (2k+1 keeps the periodic
/// wrap from aliasing a stencil onto itself).
std::size_t weno_min_points(const WenoTables& t);

namespace serial {

void upwind_difference(std::span<const double> u, double dx, std::span<double> out);
void centered_second(std::span<const double> u, double dx, std::span<double> out);
void weno_derivative(const WenoTables& t, WenoBias bias, std::span<const double> g, double dx,
                     std::span<double> out);
void dense_matvec(const Matrix& m, std::span<const double> v, std::span<double> out);

}  // namespace serial

namespace omp {

void upwind_difference(std::span<const double> u, double dx, std::span<double> out);
void centered_second(std::span<const double> u, double dx, std::span<double> out);
void weno_derivative(const WenoTables& t, WenoBias bias, std::span<const double> g, double dx,
                     std::span<double> out);
void dense_matvec(const Matrix& m, std::span<const double> v, std::span<double> out);

}  // namespace omp

}  // namespace ssp::kernels
