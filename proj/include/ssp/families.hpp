#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssp/tableau.hpp"

namespace ssp {

enum class FamilyId {
  TS2,
  Ssp2s2p,
  Ssp2s3p,
  Ssp2s4p,
  Ssp3s4p,
  Ssp3s5p,
  NonSsp2s3p,
  SspRk33,
};

/// Canonical names: "TS2", "SSP-2s2p", ..., "NONSSP-2s3p", "SSPRK33".
std::string_view to_string(FamilyId id);

/// Accepts the canonical names plus the short forms used on the command line
/// ("ts2", "2s3p", "nonssp", "ssprk33", ...). Case-insensitive.
std::optional<FamilyId> parse_family(std::string_view name);

const std::vector<FamilyId>& all_families();

struct FamilyMethod {
  FamilyId id;
  TwoDerivativeTableau tableau;
  double k = 0.0;
  /// SSP coefficient at this K. Zero for the non-SSP reference method.
  double c = 0.0;
  int order = 0;
  /// Family-specific parameters, e.g. "a21" for 3s5p or "stated_c" for 3s4p.
  std::map<std::string, double> aux;
};

struct FamilyInfo {
  FamilyId id;
  int stages;
  int order;
  std::string k_range;  // human-readable validated range
};

FamilyInfo family_info(FamilyId id);

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// One-stage second-order Taylor method. The tableau does not depend on K;
/// K only enters the SSP coefficient K*sqrt(K^2+2) - K^2.
FamilyMethod make_ts2(double k = kInvSqrt2);
FamilyMethod make_2s2p(double k);
FamilyMethod make_2s3p(double k);
/// Unique two-stage fourth-order method; C(K) is the smallest positive root
/// of r^4 + 4K^2 r^3 - 12K^2 r^2 - 24K^4 r + 24K^4.
FamilyMethod make_2s4p(double k = kInvSqrt2);
/// Tabulated methods for K in {1/2, 1/sqrt(2), 1} (matched within 1e-4).
FamilyMethod make_3s4p(double k);
FamilyMethod make_3s5p(double k);
FamilyMethod make_nonssp_2s3p();
FamilyMethod make_ssprk33();

/// Dispatches on `id`; `k` is ignored by families that have no K dependence.
FamilyMethod make_family(FamilyId id, double k);

/// Building blocks of the closed forms, exposed for verification.
namespace closed_form {

/// C(K) = K*sqrt(K^2+2) - K^2.
double taylor_limit(double k);

double two_stage_second_order_small_k_r(double k);
double two_stage_second_order_large_k_c(double k);

/// Real roots of the cubic that fixes r for the two-stage third-order family.
std::vector<double> third_order_cubic_roots(double k);
/// Two-stage third-order tableau built for an arbitrary target ratio r.
TwoDerivativeTableau two_stage_third_order(double k, double r);
/// The alternative b2 expression printed next to the coefficient block.
double third_order_b2_alternative(double k, double r);

double fourth_order_quartic(double k, double r);

double fifth_order_a21(double k, double r);
double fifth_order_q31(double k, double r);
/// Roots of Q31(a21(K, r), K, r) in (0.01, 2], ascending.
std::vector<double> fifth_order_roots(double k);
/// Three-stage fifth-order tableau for a given a21. ahat21 comes from the
/// order-condition route (1/24 - bh3 (ah31 + ah32)) / bh2.
TwoDerivativeTableau three_stage_fifth_order(double a21);

}  // namespace closed_form

}  // namespace ssp
