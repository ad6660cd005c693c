#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"
#include "ssp/error.hpp"
#include "ssp/kernels.hpp"

namespace ssp::kernels {
namespace {

using detail::Polynomial;
using detail::Rational;

struct StencilPolys {
  // cell[j] is the polynomial (in t, cell width one) that cell j's value
  // contributes to the reconstruction; t runs over [0, width] across the
  // stencil.
  std::vector<Polynomial> cell;
};

// Reconstruction from cell values via the primitive function: the primitive
// is interpolated at the width+1 cell edges t = 0..width and differentiated.
StencilPolys stencil_polynomials(int width) {
  std::vector<Polynomial> lagrange_deriv(width + 1);
  for (int m = 0; m <= width; ++m) {
    Polynomial num{Rational(1)};
    Rational den(1);
    for (int l = 0; l <= width; ++l) {
      if (l == m) continue;
      num = multiply(num, Polynomial{Rational(-l), Rational(1)});
      den = den * Rational(m - l);
    }
    Polynomial d = derivative(num);
    for (auto& c : d) c = c / den;
    lagrange_deriv[m] = std::move(d);
  }
  StencilPolys out;
  out.cell.resize(width);
  for (int j = 0; j < width; ++j) {
    Polynomial acc(width, Rational{});
    for (int m = j + 1; m <= width; ++m)
      for (std::size_t i = 0; i < lagrange_deriv[m].size(); ++i) acc[i] += lagrange_deriv[m][i];
    out.cell[j] = std::move(acc);
  }
  return out;
}

// Stencil whose leftmost cell sits at `first_offset` relative to cell 0.
// Cell 0 spans t in [-first_offset, 1 - first_offset].
std::vector<Rational> face_weights(const StencilPolys& s, int first_offset) {
  const Rational face(1 - first_offset);
  std::vector<Rational> w;
  for (const auto& p : s.cell) w.push_back(evaluate(p, face));
  return w;
}

std::vector<std::vector<Rational>> smoothness_form(const StencilPolys& s, int first_offset) {
  const int k = static_cast<int>(s.cell.size());
  const Rational lo(-first_offset);
  const Rational hi(1 - first_offset);
  std::vector<std::vector<Rational>> form(k, std::vector<Rational>(k));
  std::vector<Polynomial> d = s.cell;
  for (int l = 1; l < k; ++l) {
    for (auto& p : d) p = derivative(p);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) form[a][b] += integrate(multiply(d[a], d[b]), lo, hi);
  }
  return form;
}

WenoTables build(int order) {
  const int k = (order + 1) / 2;
  WenoTables t;
  t.order = order;
  t.k = k;

  const StencilPolys small = stencil_polynomials(k);
  std::vector<std::vector<Rational>> recon(k);
  for (int r = 0; r < k; ++r) {
    const int first = r - k + 1;
    recon[r] = face_weights(small, first);
    const auto form = smoothness_form(small, first);
    std::vector<std::vector<double>> fd(k, std::vector<double>(k));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) fd[a][b] = form[a][b].to_double();
    t.smooth.push_back(std::move(fd));
  }

  const StencilPolys big = stencil_polynomials(2 * k - 1);
  const std::vector<Rational> central = face_weights(big, -(k - 1));

  // central[m] = sum over stencils r containing big-stencil cell m of
  // d_r * recon[r][m - r]; the first k equations are triangular in d.
  std::vector<Rational> d(k);
  for (int m = 0; m < k; ++m) {
    Rational rest = central[m];
    for (int r = 0; r < m; ++r) rest -= d[r] * recon[r][m - r];
    d[m] = rest / recon[m][0];
  }
  for (int m = k; m < 2 * k - 1; ++m) {
    Rational sum;
    for (int r = m - k + 1; r < k; ++r) sum += d[r] * recon[r][m - r];
    if (!(sum == central[m]))
      throw Error("inconsistent WENO linear weights for order " + std::to_string(order));
  }

  for (int r = 0; r < k; ++r) {
    std::vector<double> row;
    for (const auto& c : recon[r]) row.push_back(c.to_double());
    t.recon.push_back(std::move(row));
    t.linear.push_back(d[r].to_double());
  }
  for (const auto& c : central) t.central.push_back(c.to_double());
  return t;
}

}  // namespace

const WenoTables& weno_tables(int order) {
  static const WenoTables w5 = build(5);
  static const WenoTables w7 = build(7);
  static const WenoTables w9 = build(9);
  switch (order) {
    case 5:
      return w5;
    case 7:
      return w7;
    case 9:
      return w9;
    default:
      throw UnsupportedParameter("WENO order must be 5, 7 or 9, got " + std::to_string(order));
  }
}

std::size_t weno_min_points(const WenoTables& t) { return static_cast<std::size_t>(2 * t.k + 1); }

}  // namespace ssp::kernels
