#include "ssp/families.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "roots.hpp"
#include "ssp/error.hpp"
#include "ssp/sspcert.hpp"
#include "text_format.hpp"

namespace ssp {
namespace {

void require_positive_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidParameter("K must be positive");
}

std::string label_for(FamilyId id, double k) {
  return std::string(to_string(id)) + "(K=" + text::format_number(k) + ")";
}

Matrix lower2(double a21) { return Matrix{{0.0, 0.0}, {a21, 0.0}}; }

struct Tabulated3s4p {
  double k;
  double stated_c;
  std::array<double, 3> a;     // a21, a31, a32
  std::array<double, 3> ahat;  // ahat21, ahat31, ahat32
  std::array<double, 3> b;
  std::array<double, 3> bhat;
};

// Optimized three-stage fourth-order methods, 15 digits as published.
constexpr std::array<Tabulated3s4p, 3> kTabulated3s4p{{
    {0.5,
     1.1464,
     {0.436148675945340, 0.546571371212865, 0.156647174804152},
     {0.095112833764436, 0.071032477596813, 0.107904226252921},
     {0.528992280543542, 0.105732787708912, 0.365274931747546},
     {0.074866026156687, 0.073410341982927, 0.048740310097159}},
    {kInvSqrt2,
     1.3927,
     {0.443752012194422, 0.543193299768317, 0.149202742858795},
     {0.098457924163299, 0.062758211639901, 0.110738910914425},
     {0.515040964378407, 0.178821699719783, 0.306137335901811},
     {0.072864982225864, 0.073840478463180, 0.061973770357455}},
    {1.0,
     1.6185,
     {0.452297224196082, 0.528050722182308, 0.159236998008155},
     {0.102286389507741, 0.055482128781494, 0.108677624192402},
     {0.502519798444212, 0.210741084344740, 0.286739117211047},
     {0.071256397204544, 0.069475972085130, 0.066877749079721}},
}};

}  // namespace

std::string_view to_string(FamilyId id) {
  switch (id) {
    case FamilyId::TS2:
      return "TS2";
    case FamilyId::Ssp2s2p:
      return "SSP-2s2p";
    case FamilyId::Ssp2s3p:
      return "SSP-2s3p";
    case FamilyId::Ssp2s4p:
      return "SSP-2s4p";
    case FamilyId::Ssp3s4p:
      return "SSP-3s4p";
    case FamilyId::Ssp3s5p:
      return "SSP-3s5p";
    case FamilyId::NonSsp2s3p:
      return "NONSSP-2s3p";
    case FamilyId::SspRk33:
      return "SSPRK33";
  }
  return "?";
}

std::optional<FamilyId> parse_family(std::string_view name) {
  std::string n;
  for (char ch : name) n += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (n == "ts2" || n == "taylor2") return FamilyId::TS2;
  if (n == "2s2p" || n == "ssp-2s2p") return FamilyId::Ssp2s2p;
  if (n == "2s3p" || n == "ssp-2s3p") return FamilyId::Ssp2s3p;
  if (n == "2s4p" || n == "ssp-2s4p") return FamilyId::Ssp2s4p;
  if (n == "3s4p" || n == "ssp-3s4p") return FamilyId::Ssp3s4p;
  if (n == "3s5p" || n == "ssp-3s5p") return FamilyId::Ssp3s5p;
  if (n == "nonssp" || n == "nonssp-2s3p" || n == "bad2s3p") return FamilyId::NonSsp2s3p;
  if (n == "ssprk33" || n == "ssprk3,3" || n == "rk33") return FamilyId::SspRk33;
  return std::nullopt;
}

const std::vector<FamilyId>& all_families() {
  static const std::vector<FamilyId> ids{FamilyId::TS2,     FamilyId::Ssp2s2p,
                                         FamilyId::Ssp2s3p, FamilyId::Ssp2s4p,
                                         FamilyId::Ssp3s4p, FamilyId::Ssp3s5p,
                                         FamilyId::NonSsp2s3p, FamilyId::SspRk33};
  return ids;
}

FamilyInfo family_info(FamilyId id) {
  switch (id) {
    case FamilyId::TS2:
      return {id, 1, 2, "K > 0"};
    case FamilyId::Ssp2s2p:
      return {id, 2, 2, "K > 0"};
    case FamilyId::Ssp2s3p:
      return {id, 2, 3, "0.1 <= K <= 5"};
    case FamilyId::Ssp2s4p:
      return {id, 2, 4, "K > 0"};
    case FamilyId::Ssp3s4p:
      return {id, 3, 4, "K in {0.5, 0.70710678, 1}"};
    case FamilyId::Ssp3s5p:
      return {id, 3, 5, "0.1 <= K <= 2"};
    case FamilyId::NonSsp2s3p:
      return {id, 2, 3, "none (not SSP)"};
    case FamilyId::SspRk33:
      return {id, 3, 3, "any (no second derivative)"};
  }
  throw InvalidParameter("unknown family");
}

namespace closed_form {

double taylor_limit(double k) { return k * std::sqrt(k * k + 2.0) - k * k; }

double two_stage_second_order_small_k_r(double k) {
  return 0.5 * (1.0 - k * k + std::sqrt(1.0 + 6.0 * k * k + k * k * k * k));
}

double two_stage_second_order_large_k_c(double k) { return 2.0 * taylor_limit(k); }

std::vector<double> third_order_cubic_roots(double k) {
  const double a0 = std::sqrt(k * k + 2.0) - k;
  const double p0 = 2.0 * k * (a0 - 2.0 * k) + 4.0 * k * k * k * a0;
  const double p1 = -p0;
  const double p2 = (1.0 - p0) / (2.0 * k * k);
  const double p3 = -(p0 / (2.0 * k) + k) / (6.0 * k * k * k);
  return detail::real_polynomial_roots({p0, p1, p2, p3});
}

TwoDerivativeTableau two_stage_third_order(double k, double r) {
  const double a = taylor_limit(k) / r;
  const double ahat = 0.5 * a * a;
  const double b2 = (k * k * (1.0 - 1.0 / r) + r * (0.5 - 1.0 / (6.0 * a))) / (k * k + 0.5 * r * a);
  const double b1 = 1.0 - b2;
  const double bh1 = 0.5 * (1.0 - b2 * a) - 1.0 / (6.0 * a);
  const double bh2 = 1.0 / (6.0 * a) - 0.5 * b2 * a;
  return TwoDerivativeTableau(lower2(a), lower2(ahat), {b1, b2}, {bh1, bh2},
                              label_for(FamilyId::Ssp2s3p, k));
}

double third_order_b2_alternative(double k, double r) {
  return (2.0 * k * k * (1.0 - 1.0 / r) + r) / (k * std::sqrt(k * k + 2.0) + k * k) -
         r * r / (3.0 * k * k);
}

double fourth_order_quartic(double k, double r) {
  const double k2 = k * k;
  const double k4 = k2 * k2;
  return r * r * r * r + 4.0 * k2 * r * r * r - 12.0 * k2 * r * r - 24.0 * k4 * r + 24.0 * k4;
}

double fifth_order_a21(double k, double r) {
  const double k2 = k * k;
  const double k4 = k2 * k2;
  const double k6 = k4 * k2;
  const double r2 = r * r;
  const double r3 = r2 * r;
  const double r4 = r3 * r;
  const double r5 = r4 * r;
  const double r6 = r5 * r;
  return 240.0 * k6 *
         (1.0 - r - r2 / (2.0 * k2) + r3 / (6.0 * k2) + r4 / (24.0 * k4) - r5 / (120.0 * k4)) / r6;
}

double fifth_order_q31(double k, double r) {
  const double a = fifth_order_a21(k, r);
  const double k2 = k * k;
  const double r2 = r * r;
  return 10.0 * r2 * a * a * a * a - (100.0 * k2 + 10.0 * r2) * a * a * a +
         (130.0 * k2 + 3.0 * r2) * a * a - 50.0 * k2 * a + 6.0 * k2;
}

std::vector<double> fifth_order_roots(double k) {
  return detail::scan_roots([k](double r) { return fifth_order_q31(k, r); }, 0.01, 2.0, 4000);
}

TwoDerivativeTableau three_stage_fifth_order(double a21) {
  const double d = 0.6 - a21;
  const double e = 1.0 - 2.0 * a21;
  const double ah32 = (d * d / (a21 * e * e * e) - d / (e * e)) / 10.0;
  const double ah31 = 0.5 * d * d / (e * e) - ah32;
  const double a31 = d / e;
  const double bh2 = (2.0 * a31 - 1.0) / (12.0 * a21 * (a31 - a21));
  const double bh3 = e / (12.0 * a31 * (a31 - a21));
  const double bh1 = 0.5 - bh2 - bh3;
  const double ah21 = (1.0 / 24.0 - bh3 * (ah31 + ah32)) / bh2;
  Matrix a{{0, 0, 0}, {a21, 0, 0}, {a31, 0, 0}};
  Matrix ah{{0, 0, 0}, {ah21, 0, 0}, {ah31, ah32, 0}};
  return TwoDerivativeTableau(std::move(a), std::move(ah), {1.0, 0.0, 0.0}, {bh1, bh2, bh3});
}

}  // namespace closed_form

FamilyMethod make_ts2(double k) {
  require_positive_k(k);
  TwoDerivativeTableau tab(Matrix(1, 1), Matrix(1, 1), {1.0}, {0.5}, label_for(FamilyId::TS2, k));
  return {FamilyId::TS2, std::move(tab), k, building_block_bound(1.0, 0.5, k), 2, {}};
}

FamilyMethod make_2s2p(double k) {
  require_positive_k(k);
  if (k <= std::sqrt(2.0 / 3.0)) {
    const double r = closed_form::two_stage_second_order_small_k_r(k);
    TwoDerivativeTableau tab(lower2(1.0 / r), Matrix(2, 2), {0.5, 0.5}, {(r - 1.0) / (2.0 * r), 0.0},
                             label_for(FamilyId::Ssp2s2p, k));
    return {FamilyId::Ssp2s2p, std::move(tab), k, r, 2, {{"branch", 0.0}}};
  }
  // Two Taylor half steps.
  TwoDerivativeTableau tab(lower2(0.5), lower2(0.125), {0.5, 0.5}, {0.125, 0.125},
                           label_for(FamilyId::Ssp2s2p, k));
  return {FamilyId::Ssp2s2p, std::move(tab), k, closed_form::two_stage_second_order_large_k_c(k), 2,
          {{"branch", 1.0}}};
}

FamilyMethod make_2s3p(double k) {
  require_positive_k(k);
  std::vector<double> candidates;
  for (double r : closed_form::third_order_cubic_roots(k))
    if (r > 0.0 && r <= 2.0) candidates.push_back(r);
  if (candidates.size() != 1)
    throw FamilyInfeasible("two-stage third-order cubic has " + std::to_string(candidates.size()) +
                           " roots in (0, 2] for K = " + text::format_number(k));
  const double r = candidates.front();
  auto tab = closed_form::two_stage_third_order(k, r);
  const double a = tab.a()(1, 0);
  return {FamilyId::Ssp2s3p, std::move(tab), k, r, 3, {{"r", r}, {"a", a}}};
}

FamilyMethod make_2s4p(double k) {
  require_positive_k(k);
  const double k2 = k * k;
  const auto roots =
      detail::real_polynomial_roots({24.0 * k2 * k2, -24.0 * k2 * k2, -12.0 * k2, 4.0 * k2, 1.0});
  const auto it = std::find_if(roots.begin(), roots.end(), [](double r) { return r > 0.0; });
  if (it == roots.end()) throw FamilyInfeasible("two-stage fourth-order quartic has no positive root");
  TwoDerivativeTableau tab(lower2(0.5), lower2(0.125), {1.0, 0.0}, {1.0 / 6.0, 1.0 / 3.0},
                           label_for(FamilyId::Ssp2s4p, k));
  return {FamilyId::Ssp2s4p, std::move(tab), k, *it, 4, {}};
}

FamilyMethod make_3s4p(double k) {
  require_positive_k(k);
  for (const auto& t : kTabulated3s4p) {
    if (std::abs(t.k - k) > 1e-4) continue;
    Matrix a{{0, 0, 0}, {t.a[0], 0, 0}, {t.a[1], t.a[2], 0}};
    Matrix ah{{0, 0, 0}, {t.ahat[0], 0, 0}, {t.ahat[1], t.ahat[2], 0}};
    TwoDerivativeTableau tab(std::move(a), std::move(ah), {t.b.begin(), t.b.end()},
                             {t.bhat.begin(), t.bhat.end()}, label_for(FamilyId::Ssp3s4p, t.k));
    // The published C is rounded to four digits; certify the printed
    // coefficients directly so that C is consistent with the tableau.
    const double c = find_ssp_coefficient(tab, t.k);
    return {FamilyId::Ssp3s4p, std::move(tab), t.k, c, 4, {{"stated_c", t.stated_c}}};
  }
  throw UnsupportedParameter("three-stage fourth-order methods exist only for K in {0.5, " +
                             text::format_number(kInvSqrt2) + ", 1}, got " + text::format_number(k));
}

FamilyMethod make_3s5p(double k) {
  require_positive_k(k);
  const auto roots = closed_form::fifth_order_roots(k);
  if (roots.empty())
    throw FamilyInfeasible("no root of Q31 in (0.01, 2] for K = " + text::format_number(k));
  const double c = roots.back();
  const double a21 = closed_form::fifth_order_a21(k, c);
  auto base = closed_form::three_stage_fifth_order(a21);
  TwoDerivativeTableau tab(base.a(), base.ahat(), base.b(), base.bhat(),
                           label_for(FamilyId::Ssp3s5p, k));
  return {FamilyId::Ssp3s5p, std::move(tab), k, c, 5, {{"a21", a21}, {"ahat21_squared_rule", 0.5 * a21 * a21}}};
}

FamilyMethod make_nonssp_2s3p() {
  TwoDerivativeTableau tab(lower2(-1.0), lower2(0.5), {-1.0 / 3.0, 4.0 / 3.0}, {4.0 / 3.0, 0.5},
                           std::string(to_string(FamilyId::NonSsp2s3p)));
  return {FamilyId::NonSsp2s3p, std::move(tab), kInvSqrt2, 0.0, 3, {}};
}

FamilyMethod make_ssprk33() {
  Matrix a{{0, 0, 0}, {1.0, 0, 0}, {0.25, 0.25, 0}};
  TwoDerivativeTableau tab(std::move(a), Matrix(3, 3), {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0},
                           {0.0, 0.0, 0.0}, std::string(to_string(FamilyId::SspRk33)));
  return {FamilyId::SspRk33, std::move(tab), kInvSqrt2, 1.0, 3, {}};
}

FamilyMethod make_family(FamilyId id, double k) {
  switch (id) {
    case FamilyId::TS2:
      return make_ts2(k);
    case FamilyId::Ssp2s2p:
      return make_2s2p(k);
    case FamilyId::Ssp2s3p:
      return make_2s3p(k);
    case FamilyId::Ssp2s4p:
      return make_2s4p(k);
    case FamilyId::Ssp3s4p:
      return make_3s4p(k);
    case FamilyId::Ssp3s5p:
      return make_3s5p(k);
    case FamilyId::NonSsp2s3p: {
      auto m = make_nonssp_2s3p();
      m.k = k;
      return m;
    }
    case FamilyId::SspRk33: {
      auto m = make_ssprk33();
      m.k = k;
      return m;
    }
  }
  throw InvalidParameter("unknown family");
}

}  // namespace ssp
