#include "ssp/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

#include "ssp/error.hpp"
#include "text_format.hpp"

namespace ssp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int thread_count(const RunOptions& options) {
  return options.jobs > 0 ? options.jobs : omp_get_max_threads();
}

/// Runs body(i) for i in [0, n) on a worker pool and rethrows the first
/// failure after all workers finish.
template <class Body>
void parallel_cells(std::size_t n, const RunOptions& options, Body&& body) {
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(options))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ssp_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string method_label(const MethodSpec& m) { return std::string(to_string(m.id)); }

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) out += "\n  - " + p;
  return out;
}

void check_methods(const std::vector<MethodSpec>& methods, std::vector<std::string>& out) {
  if (methods.empty()) out.push_back("no methods given");
  for (const auto& m : methods) {
    if (!(m.k > 0.0)) out.push_back(method_label(m) + ": K must be positive");
  }
}

double observed_order(double e_coarse, double e_fine, double dt_coarse, double dt_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !std::isfinite(e_coarse) || !std::isfinite(e_fine))
    return kNaN;
  return std::log(e_coarse / e_fine) / std::log(dt_coarse / dt_fine);
}

std::size_t steps_for(double final_time, double dt) {
  const double ratio = final_time / dt;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9 * ratio)));
}

}  // namespace

InitialCondition step_ic(double lo, double hi) {
  return {"step(" + text::format_number(lo) + "," + text::format_number(hi) + ")",
          [lo, hi](double x) { return x >= lo && x <= hi ? 1.0 : 0.0; },
          [](double) { return 0.0; }};
}

InitialCondition sine_ic(double offset, double amplitude, double frequency) {
  return {"sine(" + text::format_number(offset) + "," + text::format_number(amplitude) + "," +
              text::format_number(frequency) + ")",
          [=](double x) { return offset + amplitude * std::sin(frequency * x); },
          [=](double x) { return amplitude * frequency * std::cos(frequency * x); }};
}

InitialCondition parse_ic(std::string_view spec) {
  const auto s = text::trim(spec);
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    throw ParseError("initial condition must look like step(lo,hi) or sine(a,b,c): " +
                     std::string(s));
  const auto kind = text::trim(s.substr(0, open));
  const auto args = text::parse_numbers(s.substr(open + 1, s.size() - open - 2));
  if (kind == "step") {
    if (args.size() != 2) throw ParseError("step(lo,hi) takes two numbers");
    return step_ic(args[0], args[1]);
  }
  if (kind == "sine") {
    if (args.size() != 3) throw ParseError("sine(offset,amplitude,frequency) takes three numbers");
    return sine_ic(args[0], args[1], args[2]);
  }
  throw ParseError("unknown initial condition '" + std::string(kind) + "'");
}

double exact_burgers(double x, double t, const InitialCondition& ic, double newton_tol) {
  if (!(newton_tol >= 0.0)) throw InvalidParameter("Newton tolerance must be nonnegative");
  auto residual = [&](double xi) { return xi - x + t * ic.value(xi); };
  double xi = x;
  double g = residual(xi);
  for (int it = 0; it < 100; ++it) {
    const double dg = 1.0 + t * ic.derivative(xi);
    const double delta = -g / dg;
    if (!std::isfinite(delta)) break;
    if (std::abs(delta) <= newton_tol) return ic.value(xi + delta);
    // Halve the step until |g| decreases; near the shock time the full
    // Newton step overshoots and cycles.
    double scale = 1.0;
    double next = xi + delta;
    double g_next = residual(next);
    while (!(std::abs(g_next) < std::abs(g)) && scale > 0x1p-30) {
      scale *= 0.5;
      next = xi + scale * delta;
      g_next = residual(next);
    }
    if (!(std::abs(g_next) < std::abs(g))) {
      if (g == 0.0) return ic.value(xi);
      break;
    }
    xi = next;
    g = g_next;
  }
  throw NoConvergence("characteristic Newton iteration did not converge at x = " +
                      text::format_number(x) + ", t = " + text::format_number(t));
}

std::size_t GridSpec::stored_points(std::size_t n) const {
  if (count_endpoint) return n == 0 ? 0 : n - 1;
  return n;
}

double GridSpec::spacing(std::size_t n) const {
  return length / static_cast<double>(stored_points(n));
}

std::string_view to_string(ReferenceMode mode) {
  switch (mode) {
    case ReferenceMode::TranslateInitial:
      return "translate";
    case ReferenceMode::ExactBurgers:
      return "exact-burgers";
    case ReferenceMode::SelfReference:
      return "self";
  }
  return "?";
}

std::optional<ReferenceMode> parse_reference(std::string_view name) {
  if (name == "translate") return ReferenceMode::TranslateInitial;
  if (name == "exact-burgers") return ReferenceMode::ExactBurgers;
  if (name == "self") return ReferenceMode::SelfReference;
  return std::nullopt;
}

std::vector<std::string> SweepSpec::problems() const {
  std::vector<std::string> out;
  check_methods(methods, out);
  if (lambdas.empty()) out.push_back("lambda grid is empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) out.push_back("lambda " + text::format_number(lambdas[i]) + " is not positive");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
      out.push_back("lambda grid is not strictly increasing at position " + std::to_string(i));
  }
  if (n_steps == 0 && !(final_time > 0.0)) out.push_back("set a step count or a positive final time");
  if (!(grid.length > 0.0)) out.push_back("domain length must be positive");
  if (grid.stored_points(n) < min_points(scheme))
    out.push_back(std::string(to_string(scheme)) + " needs at least " +
                  std::to_string(min_points(scheme)) + " stored points");
  if (!(threshold > 0.0)) out.push_back("TV threshold must be positive");
  if (refine && !(refine_tol > 0.0)) out.push_back("refinement tolerance must be positive");
  if (!ic.value) out.push_back("initial condition is missing");
  return out;
}

std::vector<std::string> ConvergenceSpec::problems() const {
  std::vector<std::string> out;
  check_methods(methods, out);
  if (!(final_time > 0.0)) out.push_back("final time must be positive");
  if (n_list.empty()) out.push_back("N list is empty");
  if (lambdas.empty()) out.push_back("lambda list is empty");
  if (n_list.size() > 1 && lambdas.size() > 1)
    out.push_back("refine either N (co-refinement) or lambda (temporal), not both");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (!(n_list[i] > n_list[i - 1]))
      out.push_back("N list is not strictly increasing at position " + std::to_string(i));
  for (double l : lambdas)
    if (!(l > 0.0)) out.push_back("lambda " + text::format_number(l) + " is not positive");
  for (std::size_t n : n_list)
    if (grid.stored_points(n) < min_points(scheme))
      out.push_back("N = " + std::to_string(n) + " is too small for " + std::string(to_string(scheme)));
  if (!(grid.length > 0.0)) out.push_back("domain length must be positive");
  if (!ic.value) out.push_back("initial condition is missing");
  if (reference == ReferenceMode::ExactBurgers && flux.kind != FluxKind::Burgers)
    out.push_back("exact-burgers reference needs the burgers flux");
  if (reference == ReferenceMode::ExactBurgers && !ic.derivative)
    out.push_back("exact-burgers reference needs the initial condition's derivative");
  if (reference == ReferenceMode::TranslateInitial && flux.kind == FluxKind::Burgers)
    out.push_back("translated initial data is not a Burgers solution");
  return out;
}

const MethodSummary& ExperimentReport::summary(std::string_view method) const {
  for (const auto& s : summaries)
    if (s.method == method) return s;
  throw InvalidParameter("no summary for method " + std::string(method));
}

std::vector<ReportRow> ExperimentReport::rows_for(std::string_view method) const {
  std::vector<ReportRow> out;
  for (const auto& r : rows)
    if (r.method == method) out.push_back(r);
  return out;
}

TvRise measure_tv_rise(const TwoDerivativeTableau& tab, const SemiDiscretization& sys,
                       const GridFunction& u0, double dt, std::size_t n_steps) {
  TvRise rise{-kInf, -kInf, false};
  const double tv0 = total_variation(u0.values);
  double prev = tv0;
  GridFunction u = u0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    try {
      u = step(tab, sys, u, dt);
    } catch (const BlowUp&) {
      return {kInf, kInf, true};
    }
    const double tv = total_variation(u.values);
    rise.per_step = std::max(rise.per_step, tv - prev);
    rise.vs_initial = std::max(rise.vs_initial, tv - tv0);
    prev = tv;
  }
  if (n_steps == 0) rise = {0.0, 0.0, false};
  return rise;
}

ExperimentReport tv_sharpness_sweep(const SweepSpec& spec, const RunOptions& options) {
  if (auto p = spec.problems(); !p.empty())
    throw InvalidParameter("invalid sweep '" + spec.name + "':" + join_problems(p));

  const std::size_t stored = spec.grid.stored_points(spec.n);
  const GridFunction u0 = sample(spec.grid.x0, spec.grid.length, stored, spec.ic.value);
  const SemiDiscretization sys = make_semidiscretization(spec.flux, spec.scheme, u0, spec.spatial);

  std::vector<FamilyMethod> methods;
  for (const auto& m : spec.methods) methods.push_back(make_family(m.id, m.k));

  auto run = [&](const FamilyMethod& m, double lambda) {
    const double dt = lambda * u0.dx;
    const std::size_t steps = spec.n_steps > 0 ? spec.n_steps : steps_for(spec.final_time, dt);
    return std::pair{measure_tv_rise(m.tableau, sys, u0, dt, steps), steps};
  };

  const std::size_t nl = spec.lambdas.size();
  ExperimentReport report{spec.name, "lambda", std::vector<ReportRow>(methods.size() * nl), {}};
  parallel_cells(report.rows.size(), options, [&](std::size_t cell) {
    const auto& m = methods[cell / nl];
    const double lambda = spec.lambdas[cell % nl];
    const auto start = Clock::now();
    const auto [rise, steps] = run(m, lambda);
    auto& row = report.rows[cell];
    row.method = std::string(to_string(m.id));
    row.k = m.k;
    row.param = lambda;
    row.dt = lambda * u0.dx;
    row.steps = steps;
    row.tv_step_rise = rise.per_step;
    row.tv_init_rise = rise.vs_initial;
    row.error_linf = kNaN;
    row.error_l1 = kNaN;
    row.order = kNaN;
    row.blew_up = rise.blew_up;
    row.runtime_s = seconds_since(start);
  });

  report.summaries.resize(methods.size());
  parallel_cells(methods.size(), options, [&](std::size_t mi) {
    const auto& m = methods[mi];
    auto& s = report.summaries[mi];
    s.method = std::string(to_string(m.id));
    s.k = m.k;
    s.design_order = m.order;
    s.predicted_c = m.c;
    s.final_order = kNaN;
    std::size_t first_bad = nl;
    for (std::size_t i = 0; i < nl; ++i) {
      if (report.rows[mi * nl + i].tv_init_rise > spec.threshold) {
        first_bad = i;
        break;
      }
    }
    if (first_bad == nl) return;
    if (first_bad == 0) {
      s.unstable_everywhere = true;
      s.breakdown = spec.lambdas[0];
      return;
    }
    double lo = spec.lambdas[first_bad - 1];
    double hi = spec.lambdas[first_bad];
    while (spec.refine && hi - lo > spec.refine_tol) {
      const double mid = 0.5 * (lo + hi);
      if (run(m, mid).first.vs_initial > spec.threshold)
        hi = mid;
      else
        lo = mid;
    }
    s.breakdown = hi;
  });
  return report;
}

ExperimentReport weno_sharpness_sweep(const SweepSpec& spec, const RunOptions& options) {
  if (weno_order(spec.scheme) == 0)
    throw IncompatibleScheme("WENO sharpness sweeps need a WENO scheme, got " +
                             std::string(to_string(spec.scheme)));
  return tv_sharpness_sweep(spec, options);
}

namespace {

struct ConvergenceCell {
  std::size_t method = 0;
  std::size_t n = 0;
  double lambda = 0.0;
};

struct RunOutcome {
  GridFunction u;
  double dt = 0.0;
  std::size_t steps = 0;
  bool blew_up = false;
};

class ConvergenceRunner {
 public:
  explicit ConvergenceRunner(const ConvergenceSpec& spec) : spec_(spec) {
    for (const auto& m : spec.methods) methods_.push_back(make_family(m.id, m.k));
    for (std::size_t n : spec.n_list) {
      const std::size_t stored = spec.grid.stored_points(n);
      GridFunction u0 = sample(spec.grid.x0, spec.grid.length, stored, spec.ic.value);
      systems_.push_back(make_semidiscretization(spec.flux, spec.scheme, u0, spec.spatial));
      double speed = 0.0;
      for (double v : u0.values) speed = std::max(speed, std::abs(spec.flux.df(v)));
      speeds_.push_back(speed);
      initial_.push_back(std::move(u0));
    }
  }

  const std::vector<FamilyMethod>& methods() const { return methods_; }

  double dt_for(std::size_t ni, double lambda) const {
    double dt = lambda * initial_[ni].dx;
    if (spec_.scale_by_speed && speeds_[ni] > 0.0) dt /= speeds_[ni];
    return dt;
  }

  /// Runs to the final time with exactly `steps` steps.
  RunOutcome run_steps(std::size_t mi, std::size_t ni, std::size_t steps) const {
    const double dt = spec_.final_time / static_cast<double>(steps);
    RunOutcome out{initial_[ni], dt, steps, false};
    try {
      out.u = evolve(methods_[mi].tableau, systems_[ni], initial_[ni], dt, steps).u;
    } catch (const BlowUp&) {
      out.blew_up = true;
    }
    return out;
  }

  RunOutcome run(std::size_t mi, std::size_t ni, double lambda) const {
    return run_steps(mi, ni, steps_for(spec_.final_time, dt_for(ni, lambda)));
  }

  std::vector<double> exact(std::size_t ni) const {
    const auto& g = initial_[ni];
    std::vector<double> ref(g.size());
    const double t = spec_.final_time;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.x(j);
      if (spec_.reference == ReferenceMode::ExactBurgers)
        ref[j] = exact_burgers(x, t, spec_.ic);
      else
        ref[j] = spec_.ic.value(x - spec_.flux.df(0.0) * t);
    }
    return ref;
  }

  std::pair<double, double> errors(const RunOutcome& r, const std::vector<double>& ref,
                                   double dx) const {
    if (r.blew_up) return {kInf, kInf};
    double linf = 0.0;
    double l1 = 0.0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      const double e = std::abs(r.u.values[j] - ref[j]);
      linf = std::max(linf, e);
      l1 += e;
    }
    return {linf, l1 * dx};
  }

 private:
  const ConvergenceSpec& spec_;
  std::vector<FamilyMethod> methods_;
  std::vector<SemiDiscretization> systems_;
  std::vector<GridFunction> initial_;
  std::vector<double> speeds_;
};

ExperimentReport run_convergence(const ConvergenceSpec& spec, const RunOptions& options) {
  if (auto p = spec.problems(); !p.empty())
    throw InvalidParameter("invalid convergence study '" + spec.name + "':" + join_problems(p));
  const ConvergenceRunner runner(spec);
  const auto& methods = runner.methods();
  const bool coref = spec.is_corefinement();
  const std::size_t per_method = coref ? spec.n_list.size() : spec.lambdas.size();

  std::vector<ConvergenceCell> cells;
  for (std::size_t mi = 0; mi < methods.size(); ++mi)
    for (std::size_t i = 0; i < per_method; ++i)
      cells.push_back({mi, coref ? i : 0, coref ? spec.lambdas[0] : spec.lambdas[i]});

  // Exact references per grid; self-references per (method, grid) use a run
  // at a quarter of the smallest step.
  std::vector<std::vector<double>> exact(spec.n_list.size());
  if (spec.reference != ReferenceMode::SelfReference) {
    parallel_cells(spec.n_list.size(), options, [&](std::size_t ni) { exact[ni] = runner.exact(ni); });
  }
  std::vector<std::vector<double>> self_ref(methods.size() * spec.n_list.size());
  if (spec.reference == ReferenceMode::SelfReference) {
    const double lambda_min = *std::min_element(spec.lambdas.begin(), spec.lambdas.end());
    parallel_cells(self_ref.size(), options, [&](std::size_t c) {
      const std::size_t mi = c / spec.n_list.size();
      const std::size_t ni = c % spec.n_list.size();
      const auto r = runner.run(mi, ni, lambda_min / 4.0);
      if (r.blew_up) throw BlowUp(0, 0);
      self_ref[c] = r.u.values;
    });
  }
  auto reference = [&](std::size_t mi, std::size_t ni) -> const std::vector<double>& {
    return spec.reference == ReferenceMode::SelfReference ? self_ref[mi * spec.n_list.size() + ni]
                                                          : exact[ni];
  };

  ExperimentReport report{spec.name, coref ? "N" : "lambda", std::vector<ReportRow>(cells.size()), {}};
  parallel_cells(cells.size(), options, [&](std::size_t c) {
    const auto& cell = cells[c];
    const auto start = Clock::now();
    const auto r = runner.run(cell.method, cell.n, cell.lambda);
    const double dx = spec.grid.spacing(spec.n_list[cell.n]);
    const auto [linf, l1] = runner.errors(r, reference(cell.method, cell.n), dx);
    auto& row = report.rows[c];
    row.method = std::string(to_string(methods[cell.method].id));
    row.k = methods[cell.method].k;
    row.param = coref ? static_cast<double>(spec.n_list[cell.n]) : cell.lambda;
    row.dt = r.dt;
    row.steps = r.steps;
    row.tv_step_rise = kNaN;
    row.tv_init_rise = kNaN;
    row.error_linf = linf;
    row.error_l1 = l1;
    row.order = kNaN;
    row.blew_up = r.blew_up;
    row.runtime_s = seconds_since(start);
  });

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (std::size_t i = 1; i < per_method; ++i) {
      auto& prev = report.rows[mi * per_method + i - 1];
      auto& row = report.rows[mi * per_method + i];
      row.order = observed_order(prev.error_linf, row.error_linf, prev.dt, row.dt);
    }
  }

  report.summaries.resize(methods.size());
  parallel_cells(methods.size(), options, [&](std::size_t mi) {
    const auto& m = methods[mi];
    auto& s = report.summaries[mi];
    s.method = std::string(to_string(m.id));
    s.k = m.k;
    s.design_order = m.order;
    s.predicted_c = m.c;
    s.final_order = per_method > 1 ? report.rows[mi * per_method + per_method - 1].order : kNaN;
    if (coref || per_method < 2) return;
    // Halve the smallest step once more; if the error hardly responds, the
    // spatial error is the floor.
    std::size_t finest = 0;
    for (std::size_t i = 1; i < per_method; ++i)
      if (report.rows[mi * per_method + i].dt < report.rows[mi * per_method + finest].dt) finest = i;
    const auto& last = report.rows[mi * per_method + finest];
    const auto extra = runner.run_steps(mi, 0, 2 * last.steps);
    const auto [linf, l1] = runner.errors(extra, reference(mi, 0), spec.grid.spacing(spec.n_list[0]));
    (void)l1;
    const double order = observed_order(last.error_linf, linf, last.dt, extra.dt);
    s.spatial_dominated = !(order >= 0.5 * m.order);
  });
  return report;
}

}  // namespace

ExperimentReport temporal_refinement_study(const ConvergenceSpec& spec, const RunOptions& options) {
  if (spec.n_list.size() != 1)
    throw InvalidParameter("temporal refinement uses exactly one grid size");
  return run_convergence(spec, options);
}

ExperimentReport corefinement_study(const ConvergenceSpec& spec, const RunOptions& options) {
  if (spec.lambdas.size() != 1) throw InvalidParameter("co-refinement uses exactly one lambda");
  return run_convergence(spec, options);
}

namespace {

std::string csv_number(double v) { return std::isnan(v) ? std::string() : text::format_number(v); }

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const ExperimentReport& report) {
  os << "method,K,param,tv_step_rise,tv_init_rise,error_linf,error_l1,order,runtime_s\n";
  for (const auto& r : report.rows) {
    os << r.method << ',' << csv_number(r.k) << ',' << csv_number(r.param) << ','
       << csv_number(r.tv_step_rise) << ',' << csv_number(r.tv_init_rise) << ','
       << csv_number(r.error_linf) << ',' << csv_number(r.error_l1) << ',' << csv_number(r.order)
       << ',' << csv_number(r.runtime_s) << '\n';
  }
}

std::string to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["param"] = report.param_name;
  auto summaries = nlohmann::json::array();
  for (const auto& s : report.summaries) {
    nlohmann::json o;
    o["method"] = s.method;
    o["K"] = s.k;
    o["design_order"] = s.design_order;
    o["predicted_c"] = s.predicted_c;
    o["breakdown_lambda"] = s.breakdown ? nlohmann::json(*s.breakdown) : nlohmann::json(nullptr);
    o["unstable_everywhere"] = s.unstable_everywhere;
    o["final_order"] = json_number(s.final_order);
    o["spatial_dominated"] = s.spatial_dominated;
    summaries.push_back(std::move(o));
  }
  j["summaries"] = std::move(summaries);
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json o;
    o["method"] = r.method;
    o["K"] = r.k;
    o["param"] = r.param;
    o["dt"] = r.dt;
    o["steps"] = r.steps;
    o["tv_step_rise"] = json_number(r.tv_step_rise);
    o["tv_init_rise"] = json_number(r.tv_init_rise);
    o["error_linf"] = json_number(r.error_linf);
    o["error_l1"] = json_number(r.error_l1);
    o["order"] = json_number(r.order);
    o["runtime_s"] = r.runtime_s;
    o["blew_up"] = r.blew_up;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j.dump(2);
}

std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& dir,
                                                   const ExperimentReport& report) {
  std::filesystem::create_directories(dir);
  const bool sweep = report.param_name == "lambda" && !report.rows.empty() &&
                     !std::isnan(report.rows.front().tv_init_rise);
  std::vector<std::pair<std::string, double ReportRow::*>> metrics;
  if (sweep) {
    metrics = {{"tv_step_rise", &ReportRow::tv_step_rise}, {"tv_init_rise", &ReportRow::tv_init_rise}};
  } else {
    metrics = {{"error_linf", &ReportRow::error_linf}, {"error_l1", &ReportRow::error_l1}};
  }
  std::vector<std::filesystem::path> written;
  for (const auto& s : report.summaries) {
    const auto rows = report.rows_for(s.method);
    for (const auto& [metric, field] : metrics) {
      auto path = dir / (report.name + "_" + s.method + "_" + metric + ".dat");
      std::ofstream os(path);
      if (!os) throw Error("cannot write " + path.string());
      os << "# " << report.param_name << ' ' << metric << '\n';
      for (const auto& r : rows) os << text::format_number(r.param) << ' ' << text::format_number(r.*field) << '\n';
      written.push_back(std::move(path));
    }
  }
  return written;
}

void write_report(const std::filesystem::path& dir, const ExperimentReport& report) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / (report.name + ".csv"));
    if (!os) throw Error("cannot write into " + dir.string());
    write_csv(os, report);
  }
  {
    std::ofstream os(dir / (report.name + ".json"));
    os << to_json(report) << '\n';
  }
  write_plot_data(dir / "plot", report);
}

std::string format_table(const ExperimentReport& report) {
  std::ostringstream os;
  char buf[256];
  const bool sweep = !report.rows.empty() && !std::isnan(report.rows.front().tv_init_rise);
  if (sweep) {
    std::snprintf(buf, sizeof buf, "%-12s %8s %8s %8s %8s\n", "method", "K", "pred C", "obs C", "");
    os << buf;
    for (const auto& s : report.summaries) {
      std::string obs = "none";
      if (s.breakdown) {
        std::snprintf(buf, sizeof buf, "%.4f", *s.breakdown);
        obs = buf;
      }
      std::snprintf(buf, sizeof buf, "%-12s %8.4f %8.4f %8s %s\n", s.method.c_str(), s.k,
                    s.predicted_c, obs.c_str(), s.unstable_everywhere ? "(unstable at every lambda)" : "");
      os << buf;
    }
    return os.str();
  }
  std::snprintf(buf, sizeof buf, "%-12s %8s %12s %8s\n", "method", report.param_name.c_str(), "error",
                "order");
  os << buf;
  for (const auto& r : report.rows) {
    std::string order = std::isnan(r.order) ? std::string("---") : std::string();
    if (order.empty()) {
      std::snprintf(buf, sizeof buf, "%.2f", r.order);
      order = buf;
    }
    std::snprintf(buf, sizeof buf, "%-12s %8.4g %12.4g %8s\n", r.method.c_str(), r.param, r.error_linf,
                  order.c_str());
    os << buf;
  }
  for (const auto& s : report.summaries) {
    if (s.spatial_dominated) os << s.method << ": spatial error dominates at the smallest step\n";
  }
  return os.str();
}

}  // namespace ssp
