#include "roots.hpp"

#include <algorithm>
#include <cmath>

namespace ssp::detail {

double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

std::vector<double> real_polynomial_roots(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};
  if (coeffs.size() == 2) return {-coeffs[0] / coeffs[1]};

  // Cauchy bound on root magnitude.
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
    bound = std::max(bound, std::abs(coeffs[i] / coeffs.back()));
  bound += 1.0;

  std::vector<double> deriv(coeffs.size() - 1);
  for (std::size_t i = 1; i < coeffs.size(); ++i) deriv[i - 1] = coeffs[i] * static_cast<double>(i);

  std::vector<double> knots{-bound};
  for (double x : real_polynomial_roots(deriv))
    if (x > -bound && x < bound) knots.push_back(x);
  knots.push_back(bound);

  const auto f = [&coeffs](double x) { return horner(coeffs, x); };
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
      if (roots.empty() || roots.back() != a) roots.push_back(a);
      continue;
    }
    if ((fa > 0.0) != (fb > 0.0) && fb != 0.0) roots.push_back(bisect(f, a, b));
  }
  if (f(knots.back()) == 0.0) roots.push_back(knots.back());
  return roots;
}

std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               int intervals) {
  std::vector<double> roots;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= intervals; ++i) {
    const double x1 = lo + (hi - lo) * i / intervals;
    const double f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1)) {
      if (f0 == 0.0)
        roots.push_back(x0);
      else if ((f0 > 0.0) != (f1 > 0.0) && f1 != 0.0)
        roots.push_back(bisect(f, x0, x1));
    }
    x0 = x1;
    f0 = f1;
  }
  if (std::isfinite(f0) && f0 == 0.0) roots.push_back(x0);
  return roots;
}

}  // namespace ssp::detail
