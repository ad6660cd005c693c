#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssp/families.hpp"
#include "ssp/spatial.hpp"

namespace ssp {

struct InitialCondition {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// 1 on [lo, hi] (closed), 0 elsewhere.
InitialCondition step_ic(double lo = 0.25, double hi = 0.5);
/// offset + amplitude * sin(frequency * x).
InitialCondition sine_ic(double offset, double amplitude, double frequency);
/// Parses "step(lo,hi)" or "sine(offset,amplitude,frequency)".
InitialCondition parse_ic(std::string_view spec);

/// Solution of U_t + (U^2/2)_x = 0 before the shock: U0(xi) with
/// xi = x - t U0(xi), found by Newton iteration from xi = x. Throws
/// NoConvergence after 100 iterations.
double exact_burgers(double x, double t, const InitialCondition& ic, double newton_tol = 1e-14);

struct MethodSpec {
  FamilyId id = FamilyId::TS2;
  double k = kInvSqrt2;
};

/// Grid layout shared by both study kinds. With `count_endpoint` the point
/// count includes the periodic duplicate x0 + length, as in "N = 201 points
/// on [-1, 1]", so the grid stores N - 1 values.
struct GridSpec {
  double x0 = 0.0;
  double length = 1.0;
  bool count_endpoint = false;

  std::size_t stored_points(std::size_t n) const;
  double spacing(std::size_t n) const;
};

struct SweepSpec {
  std::string name = "sweep";
  std::vector<MethodSpec> methods;
  Scheme scheme = Scheme::FirstOrder;
  FluxSpec flux{FluxKind::LinearAdvectionLeft};
  SpatialOptions spatial;
  GridSpec grid;
  std::size_t n = 1600;
  InitialCondition ic = step_ic();
  std::vector<double> lambdas;
  /// Exactly one of n_steps and final_time is used; n_steps wins when set.
  std::size_t n_steps = 50;
  double final_time = 0.0;
  double threshold = 1e-8;
  /// Bisect between the last stable and first unstable lambda.
  bool refine = true;
  double refine_tol = 1e-4;

  /// Every problem found, empty when valid.
  std::vector<std::string> problems() const;
};

enum class ReferenceMode { TranslateInitial, ExactBurgers, SelfReference };

std::string_view to_string(ReferenceMode mode);
std::optional<ReferenceMode> parse_reference(std::string_view name);

struct ConvergenceSpec {
  std::string name = "convergence";
  std::vector<MethodSpec> methods;
  Scheme scheme = Scheme::Weno7;
  FluxSpec flux{FluxKind::LinearAdvectionRight};
  SpatialOptions spatial;
  GridSpec grid;
  InitialCondition ic = sine_ic(0.5, 0.5, 1.0);
  /// Temporal refinement: one N and several lambdas. Co-refinement: several
  /// N (strictly increasing) and one lambda.
  std::vector<std::size_t> n_list;
  std::vector<double> lambdas;
  double final_time = 2.0;
  ReferenceMode reference = ReferenceMode::TranslateInitial;
  /// dt = lambda * dx / max|f'(u0)| instead of lambda * dx.
  bool scale_by_speed = false;

  bool is_corefinement() const noexcept { return n_list.size() > 1; }
  std::vector<std::string> problems() const;
};

struct ReportRow {
  std::string method;
  double k = 0.0;
  double param = 0.0;  // lambda, or N for co-refinement
  double dt = 0.0;
  std::size_t steps = 0;
  double tv_step_rise = 0.0;  // NaN when not measured
  double tv_init_rise = 0.0;
  double error_linf = 0.0;
  double error_l1 = 0.0;
  double order = 0.0;  // NaN for the first row of a method
  double runtime_s = 0.0;
  bool blew_up = false;
};

struct MethodSummary {
  std::string method;
  double k = 0.0;
  int design_order = 0;
  double predicted_c = 0.0;
  /// Sweeps: smallest lambda whose TV rise exceeds the threshold.
  std::optional<double> breakdown;
  bool unstable_everywhere = false;
  /// Convergence: order between the two finest rows.
  double final_order = 0.0;
  /// Temporal refinement: halving dt again barely changes the error, so the
  /// spatial error sets the floor.
  bool spatial_dominated = false;
};

struct ExperimentReport {
  std::string name;
  std::string param_name;  // "lambda" or "N"
  std::vector<ReportRow> rows;
  std::vector<MethodSummary> summaries;

  const MethodSummary& summary(std::string_view method) const;
  std::vector<ReportRow> rows_for(std::string_view method) const;
};

struct RunOptions {
  /// Worker threads for independent cells; 0 uses the OpenMP default.
  int jobs = 0;
};

ExperimentReport tv_sharpness_sweep(const SweepSpec& spec, const RunOptions& options = {});
/// tv_sharpness_sweep restricted to WENO schemes.
ExperimentReport weno_sharpness_sweep(const SweepSpec& spec, const RunOptions& options = {});
ExperimentReport temporal_refinement_study(const ConvergenceSpec& spec, const RunOptions& options = {});
ExperimentReport corefinement_study(const ConvergenceSpec& spec, const RunOptions& options = {});

/// Eq.-style TV metrics of a run: max (TV^{n+1} - TV^n) and max (TV^{n+1} - TV^0).
struct TvRise {
  double per_step = 0.0;
  double vs_initial = 0.0;
  bool blew_up = false;
};
TvRise measure_tv_rise(const TwoDerivativeTableau& tab, const SemiDiscretization& sys,
                       const GridFunction& u0, double dt, std::size_t n_steps);

/// CSV with header method,K,param,tv_step_rise,tv_init_rise,error_linf,error_l1,order,runtime_s.
void write_csv(std::ostream& os, const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);
/// One two-column file per (method, metric); returns the paths written.
std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& dir,
                                                   const ExperimentReport& report);
/// Writes <name>.csv, <name>.json and the plot files into dir.
void write_report(const std::filesystem::path& dir, const ExperimentReport& report);

/// Fixed-width table with four significant digits for terminals.
std::string format_table(const ExperimentReport& report);

}  // namespace ssp
