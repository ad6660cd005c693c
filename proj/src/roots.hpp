#pragma once

#include <functional>
#include <vector>

namespace ssp::detail {

/// Bisection on [lo, hi] where f(lo) and f(hi) differ in sign; returns the
/// midpoint of the final bracket after at most `iterations` halvings.
double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200);

/// All real roots of sum_i coeffs[i] x^i, ascending. The polynomial is split
/// into monotone pieces at the real roots of its derivative, so every simple
/// or odd-multiplicity root is found.
std::vector<double> real_polynomial_roots(std::vector<double> coeffs);

/// Sign changes of f on a uniform grid of `intervals` cells over [lo, hi],
/// each refined by bisection. Cells where f is not finite are skipped.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               int intervals);

}  // namespace ssp::detail
