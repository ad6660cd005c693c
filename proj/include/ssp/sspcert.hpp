#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ssp/matrix.hpp"
#include "ssp/tableau.hpp"

namespace ssp {

/// Convex decomposition y = Rv*u + P(y + dt/r F(y)) + Q(y + dt^2/rhat Fdot(y))
/// of a two-derivative method at step ratio r, with rhat = r^2/K^2.
/// All arrays have s+1 rows; the last row produces u_{n+1}.
struct ShuOsherForm {
  double r = 0.0;
  double k = 0.0;
  std::vector<double> rv;
  Matrix p;
  Matrix q;

  double rhat() const noexcept { return r * r / (k * k); }
  std::size_t size() const noexcept { return rv.size(); }
};

enum class CertArray { Rv, P, Q };

/// Location of an entry, one-based to match the usual R, P, Q(i,j) notation.
/// `col` is 1 for Rv entries.
struct EntryLocation {
  CertArray array = CertArray::Rv;
  std::size_t row = 1;
  std::size_t col = 1;
};

std::string to_string(const EntryLocation& loc);

struct CertificateResult {
  bool feasible = false;
  double min_entry = 0.0;
  EntryLocation witness;
};

/// Entries at or above this value count as nonnegative.
inline constexpr double kNonnegativityTolerance = 1e-12;

/// Throws InvalidParameter unless r > 0 and k > 0.
ShuOsherForm build_shu_osher(const TwoDerivativeTableau& tab, double r, double k);

/// Scans Rv and the strictly lower triangles of P and Q (the rest is zero by
/// construction) for the most negative entry.
CertificateResult check_certificate(const ShuOsherForm& form,
                                    double tol = kNonnegativityTolerance);

struct SspSearchResult {
  double coefficient = 0.0;
  /// Feasible at r_max itself; the true coefficient may be larger.
  bool saturated = false;
  /// False when a feasible/infeasible alternation was seen below the
  /// returned coefficient, i.e. the bisection assumption did not hold.
  bool single_transition = true;
};

/// Largest r in (0, r_max] that passes the certificate, located by a
/// geometric scan r_max * 2^-k followed by bisection. Zero means the method
/// is not SSP (infeasible down to r = tol).
SspSearchResult search_ssp_coefficient(const TwoDerivativeTableau& tab, double k,
                                       double r_max = 10.0, double tol = 1e-10);

double find_ssp_coefficient(const TwoDerivativeTableau& tab, double k, double r_max = 10.0,
                            double tol = 1e-10);

/// Step-size ratio of the one-stage block u + alpha*dt*F + beta*dt^2*Fdot.
/// Throws DegenerateMethod when alpha == beta == 0, InvalidParameter for
/// negative coefficients or k <= 0.
double building_block_bound(double alpha, double beta, double k);

/// JSON text with full-precision numbers.
std::string to_json(const ShuOsherForm& form);
std::string to_json(const CertificateResult& cert);

/// Key/value text in the same style as the tableau format (r, K, Rv, P, Q).
std::string to_text(const ShuOsherForm& form);

}  // namespace ssp
