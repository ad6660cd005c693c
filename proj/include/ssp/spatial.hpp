#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "ssp/grid.hpp"
#include "ssp/integrator.hpp"
#include "ssp/kernels.hpp"
#include "ssp/matrix.hpp"

namespace ssp {

enum class FluxKind {
  LinearAdvectionRight,  // U_t + U_x = 0, f(u) = u
  LinearAdvectionLeft,   // U_t - U_x = 0, f(u) = -u
  Burgers,               // U_t + (u^2/2)_x = 0
};

struct FluxSpec {
  FluxKind kind = FluxKind::LinearAdvectionRight;

  double f(double u) const noexcept;
  double df(double u) const noexcept;
  /// Upwind bias for the sign of f'(u) this flux is certified for.
  kernels::WenoBias bias() const noexcept;
};

enum class Scheme { FirstOrder, Weno5, Weno7, Weno9, Spectral };

std::string_view to_string(FluxKind kind);
std::string_view to_string(Scheme scheme);
std::optional<FluxKind> parse_flux(std::string_view name);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Order of a WENO scheme, 0 for the others.
int weno_order(Scheme scheme);

/// (u_{j+1} - u_j)/dx with periodic wrap.
GridFunction upwind_d_plus(const GridFunction& u);
/// (u_{j+1} - 2u_j + u_{j-1})/dx^2 with periodic wrap.
GridFunction centered_second(const GridFunction& u);
/// Conservative WENO approximation of d/dx of the pointwise values `g`.
GridFunction weno_diff(const GridFunction& g, int order, kernels::WenoBias bias);
/// (u_{j+2} - 2u_{j+1} + u_j)/dx^2, the time derivative of the upwind
/// semi-discretization. It violates the second derivative condition for every
/// step size; kept only for negative tests.
GridFunction mol_second_derivative(const GridFunction& u);

/// Periodic Fourier differentiation matrix on n equispaced points over an
/// interval of the given length. n must be odd.
Matrix spectral_matrix(std::size_t n, double length = 6.283185307179586476925);

/// Minimum number of grid points the scheme accepts.
std::size_t min_points(Scheme scheme);

struct SpatialOptions {
  /// Regularization in the WENO weights (eps + beta)^-2.
  double weno_epsilon = 1e-6;
};

/// Builds F and Fdot for the flux and scheme on u0's grid:
///   FirstOrder with LinearAdvectionLeft: F = D+ u, Fdot = centered second
///     difference, dt_fe = dx.
///   WENO: F = -WENO^s(f(u)), Fdot = -WENO^{-s}(f'(u) F(u)), with s the
///     flux's upwind bias; dt_fe = dx / max|f'(u0)|.
///   Spectral (linear advection): F = -+D u, Fdot = D^2 u, dt_fe = dx.
/// K is sqrt(2)/2 throughout. Burgers requires u0 >= 0.
SemiDiscretization make_semidiscretization(const FluxSpec& flux, Scheme scheme,
                                           const GridFunction& u0,
                                           const SpatialOptions& options = {});

}  // namespace ssp
