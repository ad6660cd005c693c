#include "ssp/integrator.hpp"

#include <cmath>
#include <string>

namespace ssp {
namespace {

void check_inputs(const SemiDiscretization& sys, const GridFunction& u, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("dt must be positive");
  if (sys.n != 0 && u.size() != sys.n)
    throw InvalidParameter("grid has " + std::to_string(u.size()) + " points, system expects " +
                           std::to_string(sys.n));
  if (!sys.f_op || !sys.fdot_op) throw InvalidParameter("semi-discretization has no operators");
}

void require_finite(std::span<const double> v, std::size_t stage) {
  for (double x : v)
    if (!std::isfinite(x)) throw BlowUp(0, stage);
}

}  // namespace

GridFunction step(const TwoDerivativeTableau& tab, const SemiDiscretization& sys,
                  const GridFunction& u, double dt) {
  check_inputs(sys, u, dt);
  const std::size_t s = tab.stages();
  const std::size_t n = u.size();
  const Matrix& a = tab.a();
  const Matrix& ah = tab.ahat();
  const auto& b = tab.b();
  const auto& bh = tab.bhat();
  const double dt2 = dt * dt;

  std::vector<bool> need_f(s, false);
  std::vector<bool> need_fd(s, false);
  for (std::size_t j = 0; j < s; ++j) {
    need_f[j] = b[j] != 0.0;
    need_fd[j] = bh[j] != 0.0;
    for (std::size_t i = j + 1; i < s; ++i) {
      if (a(i, j) != 0.0) need_f[j] = true;
      if (ah(i, j) != 0.0) need_fd[j] = true;
    }
  }

  std::vector<std::vector<double>> f(s);
  std::vector<std::vector<double>> fd(s);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < s; ++i) {
    y.assign(u.values.begin(), u.values.end());
    for (std::size_t j = 0; j < i; ++j) {
      const double wa = dt * a(i, j);
      const double wh = dt2 * ah(i, j);
      if (wa != 0.0)
        for (std::size_t m = 0; m < n; ++m) y[m] += wa * f[j][m];
      if (wh != 0.0)
        for (std::size_t m = 0; m < n; ++m) y[m] += wh * fd[j][m];
    }
    require_finite(y, i);
    if (need_f[i]) {
      f[i].resize(n);
      sys.f_op(y, f[i]);
    }
    if (need_fd[i]) {
      fd[i].resize(n);
      sys.fdot_op(y, fd[i]);
    }
  }

  GridFunction out = u;
  for (std::size_t j = 0; j < s; ++j) {
    const double wb = dt * b[j];
    const double wh = dt2 * bh[j];
    if (wb != 0.0)
      for (std::size_t m = 0; m < n; ++m) out.values[m] += wb * f[j][m];
    if (wh != 0.0)
      for (std::size_t m = 0; m < n; ++m) out.values[m] += wh * fd[j][m];
  }
  require_finite(out.values, s);
  return out;
}

GridFunction step_shu_osher(const ShuOsherForm& form, const TwoDerivativeTableau& tab,
                            const SemiDiscretization& sys, const GridFunction& u, double dt) {
  check_inputs(sys, u, dt);
  const std::size_t s = tab.stages();
  if (form.size() != s + 1 || form.p.rows() != s + 1 || form.q.rows() != s + 1)
    throw InvalidParameter("Shu-Osher form does not match the tableau's stage count");
  const std::size_t n = u.size();
  const double dt_f = dt / form.r;
  const double dt_fd = dt * dt / form.rhat();

  // y_j + dt/r F(y_j) and y_j + dt^2/rhat Fdot(y_j), formed lazily.
  std::vector<std::vector<double>> euler(s);
  std::vector<std::vector<double>> taylor(s);
  std::vector<double> y(n);
  std::vector<double> tmp(n);
  GridFunction out = u;
  for (std::size_t i = 0; i <= s; ++i) {
    for (std::size_t m = 0; m < n; ++m) y[m] = form.rv[i] * u.values[m];
    for (std::size_t j = 0; j < i; ++j) {
      const double p = form.p(i, j);
      const double q = form.q(i, j);
      if (p != 0.0)
        for (std::size_t m = 0; m < n; ++m) y[m] += p * euler[j][m];
      if (q != 0.0)
        for (std::size_t m = 0; m < n; ++m) y[m] += q * taylor[j][m];
    }
    require_finite(y, i);
    if (i == s) {
      out.values = y;
      break;
    }
    bool need_p = false;
    bool need_q = false;
    for (std::size_t r = i + 1; r <= s; ++r) {
      need_p = need_p || form.p(r, i) != 0.0;
      need_q = need_q || form.q(r, i) != 0.0;
    }
    if (need_p) {
      sys.f_op(y, tmp);
      euler[i].resize(n);
      for (std::size_t m = 0; m < n; ++m) euler[i][m] = y[m] + dt_f * tmp[m];
    }
    if (need_q) {
      sys.fdot_op(y, tmp);
      taylor[i].resize(n);
      for (std::size_t m = 0; m < n; ++m) taylor[i][m] = y[m] + dt_fd * tmp[m];
    }
  }
  return out;
}

SnapshotSink snapshot_file_sink(std::filesystem::path dir, std::string prefix) {
  return [dir = std::move(dir), prefix = std::move(prefix)](std::size_t step, double,
                                                            const GridFunction& u) {
    std::filesystem::create_directories(dir);
    write_snapshot(dir / (prefix + "_" + std::to_string(step) + ".dat"), u);
  };
}

EvolveResult evolve(const TwoDerivativeTableau& tab, const SemiDiscretization& sys,
                    const GridFunction& u0, double dt, std::size_t n_steps,
                    const EvolveOptions& options) {
  EvolveResult result{u0, {}};
  if (options.monitor_tv) result.records.reserve(n_steps);
  for (std::size_t n = 0; n < n_steps; ++n) {
    try {
      result.u = step(tab, sys, result.u, dt);
    } catch (const EvolveAborted&) {
      throw;
    } catch (const BlowUp& e) {
      throw EvolveAborted(e, n, std::move(result.records));
    }
    const double t = options.t0 + static_cast<double>(n + 1) * dt;
    const bool snap = options.snapshot_every != 0 && options.sink &&
                      (n + 1) % options.snapshot_every == 0;
    if (snap) options.sink(n + 1, t, result.u);
    if (options.monitor_tv) result.records.push_back({n + 1, t, total_variation(result.u.values), snap});
  }
  return result;
}

}  // namespace ssp
