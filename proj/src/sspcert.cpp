#include "ssp/sspcert.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "ssp/error.hpp"
#include "text_format.hpp"

namespace ssp {
namespace {

// S = [A 0; b^T 0] and its second-derivative counterpart.
Matrix augmented(const Matrix& a, const std::vector<double>& b) {
  const std::size_t s = b.size();
  Matrix out(s + 1, s + 1);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) out(i, j) = a(i, j);
  for (std::size_t j = 0; j < s; ++j) out(s, j) = b[j];
  return out;
}

const char* array_name(CertArray a) {
  switch (a) {
    case CertArray::Rv:
      return "Rv";
    case CertArray::P:
      return "P";
    case CertArray::Q:
      return "Q";
  }
  return "?";
}

}  // namespace

std::string to_string(const EntryLocation& loc) {
  if (loc.array == CertArray::Rv) return "Rv(" + std::to_string(loc.row) + ")";
  return std::string(array_name(loc.array)) + "(" + std::to_string(loc.row) + "," +
         std::to_string(loc.col) + ")";
}

ShuOsherForm build_shu_osher(const TwoDerivativeTableau& tab, double r, double k) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidParameter("r must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidParameter("K must be positive");

  const Matrix s = augmented(tab.a(), tab.b());
  const Matrix shat = augmented(tab.ahat(), tab.bhat());
  const std::size_t n = s.rows();
  const double rhat = r * r / (k * k);

  // M = I + r S + rhat Shat is unit lower triangular. Far outside the feasible
  // range its entries are large and cancel, so substitute in extended precision.
  using ext = long double;
  const auto mij = [&](std::size_t i, std::size_t j) {
    return static_cast<ext>(r) * s(i, j) + static_cast<ext>(rhat) * shat(i, j);
  };
  // Columns 0..n-1 of X solve M X = [S | Shat | 1].
  std::vector<std::vector<ext>> x(n, std::vector<ext>(2 * n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      x[i][c] = s(i, c);
      x[i][n + c] = shat(i, c);
    }
    x[i][2 * n] = 1;
    for (std::size_t j = 0; j < i; ++j) {
      const ext l = mij(i, j);
      if (l == 0) continue;
      for (std::size_t c = 0; c <= 2 * n; ++c) x[i][c] -= l * x[j][c];
    }
  }

  ShuOsherForm form;
  form.r = r;
  form.k = k;
  form.rv.resize(n);
  form.p = Matrix(n, n);
  form.q = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    form.rv[i] = static_cast<double>(x[i][2 * n]);
    for (std::size_t j = 0; j < n; ++j) {
      form.p(i, j) = static_cast<double>(static_cast<ext>(r) * x[i][j]);
      form.q(i, j) = static_cast<double>(static_cast<ext>(rhat) * x[i][n + j]);
    }
  }
  return form;
}

CertificateResult check_certificate(const ShuOsherForm& form, double tol) {
  CertificateResult res;
  res.min_entry = std::numeric_limits<double>::infinity();
  const auto consider = [&res](double v, CertArray a, std::size_t i, std::size_t j) {
    if (v < res.min_entry) {
      res.min_entry = v;
      res.witness = {a, i + 1, j + 1};
    }
  };
  for (std::size_t i = 0; i < form.rv.size(); ++i) consider(form.rv[i], CertArray::Rv, i, 0);
  for (std::size_t i = 0; i < form.p.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      consider(form.p(i, j), CertArray::P, i, j);
      consider(form.q(i, j), CertArray::Q, i, j);
    }
  res.feasible = res.min_entry >= -tol;
  return res;
}

SspSearchResult search_ssp_coefficient(const TwoDerivativeTableau& tab, double k, double r_max,
                                       double tol) {
  if (!(k > 0.0)) throw InvalidParameter("K must be positive");
  if (!(r_max > 0.0) || !(tol > 0.0)) throw InvalidParameter("r_max and tol must be positive");

  const auto feasible = [&](double r) {
    return check_certificate(build_shu_osher(tab, r, k)).feasible;
  };

  SspSearchResult out;
  if (feasible(r_max)) {
    out.coefficient = r_max;
    out.saturated = true;
  } else {
    double hi = r_max;  // infeasible
    double lo = 0.0;    // feasible, once found
    for (double r = r_max / 2; r >= tol; r /= 2) {
      if (feasible(r)) {
        lo = r;
        break;
      }
      hi = r;
    }
    if (lo == 0.0) return out;  // not SSP
    for (int it = 0; it < 60 && hi - lo > tol * 1e-3; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
    out.coefficient = lo;
  }

  // Bisection assumed one feasible->infeasible transition; spot-check it.
  constexpr int kSamples = 64;
  for (int i = 1; i < kSamples; ++i) {
    const double r = out.coefficient * i / kSamples;
    if (!feasible(r)) {
      out.single_transition = false;
      break;
    }
  }
  return out;
}

double find_ssp_coefficient(const TwoDerivativeTableau& tab, double k, double r_max, double tol) {
  return search_ssp_coefficient(tab, k, r_max, tol).coefficient;
}

double building_block_bound(double alpha, double beta, double k) {
  if (alpha < 0.0 || beta < 0.0) throw InvalidParameter("alpha and beta must be nonnegative");
  if (!(k > 0.0)) throw InvalidParameter("K must be positive");
  if (alpha == 0.0 && beta == 0.0) throw DegenerateMethod("alpha and beta are both zero");
  if (beta == 0.0) return 1.0 / alpha;
  if (alpha == 0.0) return k / std::sqrt(beta);
  return k / (2.0 * beta) * (std::sqrt(alpha * alpha * k * k + 4.0 * beta) - alpha * k);
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

}  // namespace

std::string to_json(const ShuOsherForm& form) {
  nlohmann::json j;
  j["r"] = form.r;
  j["K"] = form.k;
  j["rhat"] = form.rhat();
  j["Rv"] = form.rv;
  j["P"] = matrix_json(form.p);
  j["Q"] = matrix_json(form.q);
  return j.dump(2);
}

std::string to_json(const CertificateResult& cert) {
  nlohmann::json j;
  j["feasible"] = cert.feasible;
  j["min_entry"] = cert.min_entry;
  j["witness"] = {{"array", array_name(cert.witness.array)},
                  {"row", cert.witness.row},
                  {"col", cert.witness.col},
                  {"label", to_string(cert.witness)}};
  return j.dump(2);
}

std::string to_text(const ShuOsherForm& form) {
  std::string out;
  out += "r = " + text::format_number(form.r) + "\n";
  out += "K = " + text::format_number(form.k) + "\n";
  out += "Rv = " + text::join_numbers(form.rv) + "\n";
  out += "P = " + text::join_numbers(form.p.data()) + "\n";
  out += "Q = " + text::join_numbers(form.q.data()) + "\n";
  return out;
}

}  // namespace ssp
