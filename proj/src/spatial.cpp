#include "ssp/spatial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "ssp/error.hpp"

namespace ssp {
namespace {

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void require_points(std::size_t n, std::size_t need, std::string_view what) {
  if (n < need)
    throw GridTooSmall(std::string(what) + " needs at least " + std::to_string(need) +
                       " points, got " + std::to_string(n));
}

void require_spacing(const GridFunction& u) {
  if (!(u.dx > 0.0)) throw InvalidParameter("grid spacing must be positive");
}

}  // namespace

double FluxSpec::f(double u) const noexcept {
  switch (kind) {
    case FluxKind::LinearAdvectionRight:
      return u;
    case FluxKind::LinearAdvectionLeft:
      return -u;
    case FluxKind::Burgers:
      return 0.5 * u * u;
  }
  return 0.0;
}

double FluxSpec::df(double u) const noexcept {
  switch (kind) {
    case FluxKind::LinearAdvectionRight:
      return 1.0;
    case FluxKind::LinearAdvectionLeft:
      return -1.0;
    case FluxKind::Burgers:
      return u;
  }
  return 0.0;
}

kernels::WenoBias FluxSpec::bias() const noexcept {
  return kind == FluxKind::LinearAdvectionLeft ? kernels::WenoBias::Minus : kernels::WenoBias::Plus;
}

std::string_view to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::LinearAdvectionRight:
      return "advection";
    case FluxKind::LinearAdvectionLeft:
      return "advection-left";
    case FluxKind::Burgers:
      return "burgers";
  }
  return "?";
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::FirstOrder:
      return "first-order";
    case Scheme::Weno5:
      return "weno5";
    case Scheme::Weno7:
      return "weno7";
    case Scheme::Weno9:
      return "weno9";
    case Scheme::Spectral:
      return "spectral";
  }
  return "?";
}

std::optional<FluxKind> parse_flux(std::string_view name) {
  const auto n = lower(name);
  if (n == "advection" || n == "advection-right" || n == "linear") return FluxKind::LinearAdvectionRight;
  if (n == "advection-left") return FluxKind::LinearAdvectionLeft;
  if (n == "burgers") return FluxKind::Burgers;
  return std::nullopt;
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  const auto n = lower(name);
  if (n == "first-order" || n == "upwind") return Scheme::FirstOrder;
  if (n == "weno5") return Scheme::Weno5;
  if (n == "weno7") return Scheme::Weno7;
  if (n == "weno9") return Scheme::Weno9;
  if (n == "spectral") return Scheme::Spectral;
  return std::nullopt;
}

int weno_order(Scheme scheme) {
  switch (scheme) {
    case Scheme::Weno5:
      return 5;
    case Scheme::Weno7:
      return 7;
    case Scheme::Weno9:
      return 9;
    default:
      return 0;
  }
}

std::size_t min_points(Scheme scheme) {
  if (const int order = weno_order(scheme); order != 0)
    return kernels::weno_min_points(kernels::weno_tables(order));
  return scheme == Scheme::Spectral ? 1 : 3;
}

GridFunction upwind_d_plus(const GridFunction& u) {
  require_points(u.size(), 3, "upwind difference");
  require_spacing(u);
  GridFunction out{std::vector<double>(u.size()), u.x0, u.dx};
  kernels::omp::upwind_difference(u.values, u.dx, out.values);
  return out;
}

GridFunction centered_second(const GridFunction& u) {
  require_points(u.size(), 3, "centered second difference");
  require_spacing(u);
  GridFunction out{std::vector<double>(u.size()), u.x0, u.dx};
  kernels::omp::centered_second(u.values, u.dx, out.values);
  return out;
}

GridFunction weno_diff(const GridFunction& g, int order, kernels::WenoBias bias) {
  const auto& t = kernels::weno_tables(order);
  require_points(g.size(), kernels::weno_min_points(t), "WENO" + std::to_string(order));
  require_spacing(g);
  GridFunction out{std::vector<double>(g.size()), g.x0, g.dx};
  kernels::omp::weno_derivative(t, bias, g.values, g.dx, out.values);
  return out;
}

GridFunction mol_second_derivative(const GridFunction& u) {
  require_points(u.size(), 3, "method-of-lines second derivative");
  require_spacing(u);
  const std::size_t n = u.size();
  GridFunction out{std::vector<double>(n), u.x0, u.dx};
  const double inv = 1.0 / (u.dx * u.dx);
  for (std::size_t j = 0; j < n; ++j)
    out.values[j] = (u.values[(j + 2) % n] - 2.0 * u.values[(j + 1) % n] + u.values[j]) * inv;
  return out;
}

Matrix spectral_matrix(std::size_t n, double length) {
  if (n == 0) throw GridTooSmall("spectral matrix needs at least one point");
  if (n % 2 == 0)
    throw UnsupportedParameter("spectral differentiation needs an odd number of points, got " +
                               std::to_string(n));
  if (!(length > 0.0)) throw InvalidParameter("spectral interval length must be positive");
  const double pi = std::acos(-1.0);
  const double h = 2.0 * pi / static_cast<double>(n);
  const double scale = 2.0 * pi / length;
  Matrix d(n, n);
  // Entries depend only on (j - l) mod n; fill the upper triangle and mirror.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = j + 1; l < n; ++l) {
      const std::size_t m = l - j;
      const double sign = m % 2 == 0 ? 1.0 : -1.0;
      const double v = scale * 0.5 * sign / std::sin(static_cast<double>(m) * h / 2.0);
      d(j, l) = -v;
      d(l, j) = v;
    }
  }
  return d;
}

SemiDiscretization make_semidiscretization(const FluxSpec& flux, Scheme scheme,
                                           const GridFunction& u0,
                                           const SpatialOptions& options) {
  require_spacing(u0);
  const std::size_t n = u0.size();
  const double dx = u0.dx;
  SemiDiscretization sys;
  sys.n = n;
  sys.k = std::sqrt(2.0) / 2.0;

  if (flux.kind == FluxKind::Burgers) {
    const double lo = n ? *std::min_element(u0.values.begin(), u0.values.end()) : 0.0;
    if (lo < 0.0)
      throw InvalidParameter("Burgers runs need u0 >= 0 so that f'(u) >= 0; min u0 = " +
                             std::to_string(lo));
  }

  switch (scheme) {
    case Scheme::FirstOrder: {
      if (flux.kind != FluxKind::LinearAdvectionLeft)
        throw IncompatibleScheme("the first-order pair is defined for U_t = U_x only");
      require_points(n, 3, "first-order scheme");
      sys.f_op = [dx](std::span<const double> u, std::span<double> out) {
        kernels::omp::upwind_difference(u, dx, out);
      };
      sys.fdot_op = [dx](std::span<const double> u, std::span<double> out) {
        kernels::omp::centered_second(u, dx, out);
      };
      sys.dt_fe = dx;
      return sys;
    }
    case Scheme::Spectral: {
      if (flux.kind == FluxKind::Burgers)
        throw IncompatibleScheme("the spectral pair is defined for linear advection only");
      auto d = std::make_shared<const Matrix>(spectral_matrix(n, u0.length()));
      auto d2 = std::make_shared<const Matrix>(*d * *d);
      const double sign = flux.kind == FluxKind::LinearAdvectionRight ? -1.0 : 1.0;
      sys.f_op = [d, sign](std::span<const double> u, std::span<double> out) {
        kernels::omp::dense_matvec(*d, u, out);
        for (double& v : out) v *= sign;
      };
      sys.fdot_op = [d2](std::span<const double> u, std::span<double> out) {
        kernels::omp::dense_matvec(*d2, u, out);
      };
      sys.dt_fe = dx;
      return sys;
    }
    case Scheme::Weno5:
    case Scheme::Weno7:
    case Scheme::Weno9: {
      if (!(options.weno_epsilon > 0.0)) throw InvalidParameter("WENO epsilon must be positive");
      auto t = std::make_shared<kernels::WenoTables>(kernels::weno_tables(weno_order(scheme)));
      t->epsilon = options.weno_epsilon;
      require_points(n, kernels::weno_min_points(*t), std::string(to_string(scheme)));
      const auto bias = flux.bias();
      const auto opposite =
          bias == kernels::WenoBias::Plus ? kernels::WenoBias::Minus : kernels::WenoBias::Plus;
      std::shared_ptr<const kernels::WenoTables> tables = std::move(t);
      auto f_op = [t = tables, bias, dx, flux](std::span<const double> u, std::span<double> out) {
        std::vector<double> g(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) g[j] = flux.f(u[j]);
        kernels::omp::weno_derivative(*t, bias, g, dx, out);
        for (double& v : out) v = -v;
      };
      sys.f_op = f_op;
      sys.fdot_op = [f_op, t = tables, opposite, dx, flux](std::span<const double> u, std::span<double> out) {
        // f(u)_t = f'(u) u_t, then U_tt = -(f(u)_t)_x.
        std::vector<double> ut(u.size());
        f_op(u, ut);
        for (std::size_t j = 0; j < u.size(); ++j) ut[j] *= flux.df(u[j]);
        kernels::omp::weno_derivative(*t, opposite, ut, dx, out);
        for (double& v : out) v = -v;
      };
      double speed = 0.0;
      for (double v : u0.values) speed = std::max(speed, std::abs(flux.df(v)));
      sys.dt_fe = speed > 0.0 ? dx / speed : dx;
      return sys;
    }
  }
  throw IncompatibleScheme("unknown scheme");
}

}  // namespace ssp
