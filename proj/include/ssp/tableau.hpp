#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ssp/matrix.hpp"

namespace ssp {

/// Coefficients of an explicit s-stage two-derivative Runge-Kutta method
///
///   y_i     = u + dt * sum_j a_ij F(y_j) + dt^2 * sum_j ahat_ij Fdot(y_j)
///   u_{n+1} = u + dt * sum_j b_j  F(y_j) + dt^2 * sum_j bhat_j  Fdot(y_j)
///
/// A and Ahat are strictly lower triangular; the abscissae c = A*1 and
/// chat = Ahat*1 are derived once at construction.
class TwoDerivativeTableau {
 public:
  /// Throws InvalidParameter when shapes disagree, s == 0, or A/Ahat are not
  /// strictly lower triangular.
  TwoDerivativeTableau(Matrix a, Matrix ahat, std::vector<double> b,
                       std::vector<double> bhat, std::string label = {});

  std::size_t stages() const noexcept { return b_.size(); }
  const Matrix& a() const noexcept { return a_; }
  const Matrix& ahat() const noexcept { return ahat_; }
  const std::vector<double>& b() const noexcept { return b_; }
  const std::vector<double>& bhat() const noexcept { return bhat_; }
  const std::vector<double>& c() const noexcept { return c_; }
  const std::vector<double>& chat() const noexcept { return chat_; }
  const std::string& label() const noexcept { return label_; }

  /// True when no second-derivative weight is nonzero (a classical RK method).
  bool is_first_derivative_only() const noexcept;

  friend bool operator==(const TwoDerivativeTableau&, const TwoDerivativeTableau&) = default;

 private:
  Matrix a_;
  Matrix ahat_;
  std::vector<double> b_;
  std::vector<double> bhat_;
  std::vector<double> c_;
  std::vector<double> chat_;
  std::string label_;
};

struct OrderResidual {
  std::string id;  // "p3.2" = second row of the third-order block
  double value = 0.0;
};

struct OrderResidualReport {
  int order = 0;
  std::vector<OrderResidual> residuals;
  double max_abs_residual = 0.0;
};

inline constexpr double kDefaultOrderTolerance = 1e-10;

/// Left side minus right side of every order condition up to order `p`
/// (1 <= p <= 5), rows in the canonical order. Juxtaposed vectors multiply
/// elementwise. Throws InvalidOrder for p outside 1..5.
OrderResidualReport order_residuals(const TwoDerivativeTableau& tab, int p);

/// Largest p <= 5 such that all conditions of orders 1..p hold to `tol`;
/// 0 when even the consistency condition fails.
int design_order(const TwoDerivativeTableau& tab, double tol = kDefaultOrderTolerance);

/// Plain-text key/value form:
///   label = ...
///   s = 2
///   A = <s*s numbers, row-major>
///   Ahat = ...
///   b = ...
///   bhat = ...
std::string to_text(const TwoDerivativeTableau& tab);
TwoDerivativeTableau tableau_from_text(std::string_view text);

TwoDerivativeTableau read_tableau(const std::filesystem::path& path);
void write_tableau(const std::filesystem::path& path, const TwoDerivativeTableau& tab);

}  // namespace ssp
