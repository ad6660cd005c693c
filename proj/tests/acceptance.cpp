// Acceptance gate: one PASS/FAIL line per criterion.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "ssp/config.hpp"
#include "ssp/experiments.hpp"
#include "ssp/families.hpp"
#include "ssp/sspcert.hpp"
#include "ssp/tableau.hpp"

using namespace ssp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  Outcome outcome() const {
    std::string d;
    for (const auto& n : notes_) d += (d.empty() ? "" : "; ") + n;
    for (const auto& f : failures_) d += (d.empty() ? "" : "; ") + std::string("FAILED ") + f;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> numbers(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + " = ", 0) != 0) continue;
    std::istringstream vals(line.substr(key.size() + 3));
    std::vector<double> out;
    double v;
    while (vals >> v) out.push_back(v);
    return out;
  }
  return {};
}

Outcome criterion1() {
  Checker c;
  const char* argv[] = {"ssp-msmd", "families", "make", "--family", "2s3p", "--k", "0.70710678", "--shu-osher"};
  std::ostringstream out, err;
  const int code = cli::run(8, argv, out, err);
  c.expect(code == 0, "families make exit code " + std::to_string(code));
  const auto text = out.str();
  const auto split = text.find("\nr = ");
  const auto tab_text = text.substr(0, split);
  const auto so_text = split == std::string::npos ? std::string() : text.substr(split + 1);
  const auto A = numbers(tab_text, "A"), Ah = numbers(tab_text, "Ahat"), b = numbers(tab_text, "b"),
             bh = numbers(tab_text, "bhat");
  const auto rv = numbers(so_text, "Rv"), P = numbers(so_text, "P"), Q = numbers(so_text, "Q");
  if (A.size() != 4 || Ah.size() != 4 || b.size() != 2 || bh.size() != 2 || rv.size() != 3 || P.size() != 9 ||
      Q.size() != 9) {
    c.expect(false, "could not read the printed tableau and Shu-Osher form");
    return c.outcome();
  }
  const double got[] = {A[2], Ah[2], b[0], b[1], bh[0], bh[1]};
  const double want[] = {0.594223212099088, 0.176550612898679, 0.693972512991841,
                         0.306027487008159, 0.128597465450411, 0.189553898228989};
  double dev = 0;
  for (int i = 0; i < 6; ++i) dev = std::max(dev, std::abs(got[i] - want[i]));
  c.note("Butcher max dev " + fmt("%.2e", dev));
  c.expect(dev <= 1e-11, "Butcher coefficients beyond 1e-11");
  const double p_want[] = {0, 0, 0, 0.618033988749895, 0, 0, 0.271611333775367, 0.318290138472780, 0};
  const double q_want[] = {0, 0, 0, 0.381966011250105, 0, 0, 0, 0.410098527751853, 0};
  double sdev = std::max({std::abs(rv[0] - 1), std::abs(rv[1]), std::abs(rv[2])});
  for (int i = 0; i < 9; ++i) sdev = std::max({sdev, std::abs(P[i] - p_want[i]), std::abs(Q[i] - q_want[i])});
  c.note("Shu-Osher max dev " + fmt("%.2e", sdev));
  c.expect(sdev <= 1e-9, "Shu-Osher entries beyond 1e-9");
  return c.outcome();
}

Outcome criterion2() {
  Checker c;
  const double ks[] = {0.25, 0.4, 0.5, 0.6, 0.7, 0.8, 1.0, 1.25, 1.5, 1.75, 2.5, 3, 3.5, 4};
  const double rs[] = {0.48, 0.71, 0.84, 0.94, 1.03, 1.11, 1.23, 1.33, 1.39, 1.44, 1.51, 1.54, 1.55, 1.56};
  double d2 = 0;
  for (int i = 0; i < 14; ++i) d2 = std::max(d2, std::abs(make_2s3p(ks[i]).c - rs[i]));
  c.note("2s3p table max dev " + fmt("%.4f", d2));
  c.expect(d2 <= 0.005, "2s3p table beyond 0.005");

  const double fa[] = {0.7947, 0.7842, 0.7751, 0.7674, 0.7609, 0.7555, 0.7510, 0.7472, 0.7441, 0.7415,
                       0.7393, 0.7374, 0.7359, 0.7346, 0.7334, 0.7324, 0.7316, 0.7309, 0.7302, 0.7296};
  const double fc[] = {0.1452, 0.2722, 0.3814, 0.4741, 0.5520, 0.6171, 0.6712, 0.7162, 0.7537, 0.7851,
                       0.8114, 0.8335, 0.8523, 0.8683, 0.8819, 0.8937, 0.9039, 0.9127, 0.9205, 0.9273};
  double d5 = 0;
  for (int i = 0; i < 20; ++i) {
    const auto m = make_3s5p(0.1 * (i + 1));
    d5 = std::max({d5, std::abs(m.aux.at("a21") - fa[i]), std::abs(m.c - fc[i])});
  }
  c.note("3s5p table max dev " + fmt("%.1e", d5));
  c.expect(d5 <= 5e-4, "3s5p table beyond 5e-4");

  const double k = std::sqrt(2.0) / 2;
  const std::pair<FamilyId, double> pred[] = {{FamilyId::TS2, 0.6180},     {FamilyId::Ssp2s2p, 1.2807},
                                              {FamilyId::Ssp2s3p, 1.0400}, {FamilyId::Ssp2s4p, 0.6788},
                                              {FamilyId::Ssp3s4p, 1.3927}, {FamilyId::Ssp3s5p, 0.6746}};
  double d3 = 0;
  for (const auto& [id, v] : pred) d3 = std::max(d3, std::abs(make_family(id, k).c - v));
  c.note("predicted C max dev " + fmt("%.1e", d3));
  c.expect(d3 <= 1e-3, "predicted C beyond 1e-3");
  return c.outcome();
}

Outcome criterion3() {
  Checker c;
  double worst = 0, worst_3s4p = 0;
  int checked = 0;
  for (double k : {0.25, 0.5, kInvSqrt2, 1.0, 2.0}) {
    for (auto id : all_families()) {
      if (id == FamilyId::Ssp3s4p && !(k == 0.5 || k == kInvSqrt2 || k == 1.0)) continue;
      const auto m = make_family(id, k);
      const double bis = find_ssp_coefficient(m.tableau, k);
      ++checked;
      const std::string tag = std::string(to_string(id)) + " K=" + fmt("%.4g", k);
      if (id == FamilyId::Ssp3s4p) {
        // Only a four-digit value is published for the tabulated methods.
        worst_3s4p = std::max(worst_3s4p, std::abs(bis - m.aux.at("stated_c")));
      } else {
        worst = std::max(worst, std::abs(bis - m.c));
        c.expect(std::abs(bis - m.c) <= 1e-6, tag + " bisection vs closed form");
      }
      if (m.c > 0) {
        c.expect(check_certificate(build_shu_osher(m.tableau, bis, k)).feasible, tag + " infeasible at C");
        c.expect(!check_certificate(build_shu_osher(m.tableau, bis * 1.001, k)).feasible,
                 tag + " feasible at 1.001 C");
      }
    }
  }
  c.note(std::to_string(checked) + " (family, K) pairs, max |bisection - closed form| " + fmt("%.1e", worst) +
         ", tabulated 3s4p vs stated " + fmt("%.1e", worst_3s4p));
  c.expect(worst_3s4p <= 5e-4, "3s4p bisection vs stated C");
  return c.outcome();
}

Outcome criterion4() {
  Checker c;
  double worst = 0;
  for (double k : {0.25, 0.5, kInvSqrt2, 1.0, 2.0}) {
    for (auto id : all_families()) {
      if (id == FamilyId::Ssp3s4p && !(k == 0.5 || k == kInvSqrt2 || k == 1.0)) continue;
      const auto m = make_family(id, k);
      const double r = order_residuals(m.tableau, m.order).max_abs_residual;
      worst = std::max(worst, r);
      c.expect(r <= 1e-10, std::string(to_string(id)) + " residual " + fmt("%.1e", r));
    }
  }
  c.note("max residual " + fmt("%.1e", worst));
  c.expect(design_order(make_nonssp_2s3p().tableau) == 3, "non-SSP method order");
  c.expect(design_order(make_ssprk33().tableau) == 3, "SSPRK33 order");
  return c.outcome();
}

Outcome criterion5(const RunOptions& opt) {
  Checker c;
  const auto rep = tv_sharpness_sweep(to_sweep_spec(*preset("example1")), opt);
  const std::pair<const char*, double> exact[] = {
      {"TS2", 0.6180}, {"SSP-2s2p", 1.2807}, {"SSP-2s3p", 1.0400}, {"SSP-3s4p", 1.3927}, {"SSP-2s4p", 0.7320}};
  std::string obs;
  for (const auto& [name, v] : exact) {
    const auto& s = rep.summary(name);
    const double b = s.breakdown.value_or(NAN);
    obs += std::string(obs.empty() ? "" : " ") + name + "=" + fmt("%.4f", b);
    c.expect(std::abs(b - v) <= 0.003, std::string(name) + " breakdown");
  }
  const auto& f = rep.summary("SSP-3s5p");
  const double b5 = f.breakdown.value_or(NAN);
  obs += " SSP-3s5p=" + fmt("%.4f", b5);
  c.expect(b5 >= 0.6746 && std::abs(b5 - 0.7136) <= 0.005, "SSP-3s5p breakdown");
  const auto rows = rep.rows_for("NONSSP-2s3p");
  const ReportRow* first = nullptr;
  for (const auto& r : rows)
    if (std::abs(r.param - 0.05) < 1e-12) first = &r;
  c.expect(first && first->tv_init_rise > 1e-8, "non-SSP TV rise at 0.05");
  if (first) obs += " NONSSP rise@0.05=" + fmt("%.2e", first->tv_init_rise);
  c.note(obs);
  return c.outcome();
}

double order_at(const std::vector<ReportRow>& rows, double param) {
  for (const auto& r : rows)
    if (std::abs(r.param - param) < 1e-9) return r.order;
  return NAN;
}

Outcome criterion6(const RunOptions& opt) {
  Checker c;
  const auto rep = temporal_refinement_study(to_convergence_spec(*preset("example3a")), opt);
  const std::pair<const char*, double> design[] = {
      {"SSPRK33", 3}, {"SSP-2s3p", 3}, {"SSP-2s4p", 4}, {"SSP-3s5p", 5}};
  std::string obs;
  for (const auto& [name, p] : design) {
    const auto rows = rep.rows_for(name);
    const double o1 = order_at(rows, 0.1), o2 = order_at(rows, 0.05);
    obs += std::string(obs.empty() ? "" : " ") + name + "=" + fmt("%.2f", o1) + "," + fmt("%.2f", o2);
    c.expect(std::abs(o1 - p) <= 0.2 && std::abs(o2 - p) <= 0.2, std::string(name) + " order");
  }
  const auto rk = rep.rows_for("SSPRK33"), ts = rep.rows_for("SSP-2s3p");
  bool ordered = rk.size() == ts.size();
  for (std::size_t i = 0; ordered && i < rk.size(); ++i) ordered = rk[i].error_linf > ts[i].error_linf;
  c.expect(ordered, "SSPRK33 error above 2s3p at every lambda");
  c.note("orders (0.2->0.1, 0.1->0.05): " + obs);
  return c.outcome();
}

Outcome criterion7(const RunOptions& opt) {
  Checker c;
  const auto rep = corefinement_study(to_convergence_spec(*preset("example4a")), opt);
  const std::pair<const char*, double> design[] = {
      {"SSPRK33", 3}, {"SSP-2s3p", 3}, {"SSP-2s4p", 4}, {"SSP-3s5p", 5}};
  std::string obs;
  for (const auto& [name, p] : design) {
    const auto rows = rep.rows_for(name);
    std::string line;
    for (double n : {321.0, 641.0, 1281.0}) {
      const double o = order_at(rows, n);
      line += (line.empty() ? "" : ",") + fmt("%.2f", o);
      c.expect(std::abs(o - p) <= 0.1, std::string(name) + " order at N=" + fmt("%.0f", n) + " is " + fmt("%.2f", o));
    }
    obs += std::string(obs.empty() ? "" : " ") + name + "=" + line;
  }
  c.note("orders at N=321,641,1281: " + obs);
  return c.outcome();
}

Outcome criterion8(const RunOptions& opt) {
  Checker c;
  const auto cfg = *preset("example4b");
  const auto spec = to_convergence_spec(cfg);
  const auto rep = corefinement_study(spec, opt);
  const std::pair<const char*, double> target[] = {
      {"SSPRK33", 3.00}, {"SSP-2s3p", 3.01}, {"SSP-2s4p", 4.01}, {"SSP-3s5p", 5.08}};
  std::string obs;
  for (const auto& [name, p] : target) {
    const double o = order_at(rep.rows_for(name), 5121.0);
    obs += std::string(obs.empty() ? "" : " ") + name + "=" + fmt("%.2f", o);
    c.expect(std::abs(o - p) <= 0.3, std::string(name) + " order " + fmt("%.2f", o));
  }
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> X(-1, 1), T(0, 1.4);
  double dev = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = X(rng), t = T(rng);
    dev = std::max(dev, std::abs(exact_burgers(x, t, spec.ic) - oracle::burgers_by_bisection(x, t, spec.ic.value, 0.8, 1.2)));
  }
  c.expect(dev <= 1e-12, "exact_burgers vs oracle " + fmt("%.1e", dev));
  c.note("orders at N=5121: " + obs + "; exact_burgers max dev " + fmt("%.1e", dev));
  return c.outcome();
}

Outcome criterion9() {
  Checker c;
  const double cons = props::conservation_defect();
  const double eq = props::step_equivalence_gap();
  const double cvx = props::convex_combination_defect();
  const auto tvd = props::exhaustive_tvd();
  c.expect(cons <= 1e-12, "conservation");
  c.expect(eq <= 1e-12, "Shu-Osher/Butcher equivalence");
  c.expect(cvx <= 1e-12, "convex combination");
  c.expect(tvd.patterns == 65536 && tvd.worst_rise <= 1e-14, "exhaustive TVD");
  c.note("conservation " + fmt("%.1e", cons) + ", equivalence " + fmt("%.1e", eq) + ", convex " + fmt("%.1e", cvx) +
         ", TVD worst rise " + fmt("%.1e", tvd.worst_rise) + " over " + std::to_string(tvd.patterns) + " patterns");
  return c.outcome();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only;
  int jobs = 0;
  app.add_option("--only", only, "criteria to run")->delimiter(',')->check(CLI::Range(1, 9));
  app.add_option("--jobs", jobs, "worker threads for experiment cells");
  CLI11_PARSE(app, argc, argv);
  const RunOptions opt{jobs};

  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "closed-form coefficient fidelity", 1, criterion1},
      {2, "SSP coefficient tables", 10, criterion2},
      {3, "certification cross-check", 30, criterion3},
      {4, "order conditions", 60, criterion4},
      {5, "TVD sharpness (Example 1)", 120, [&] { return criterion5(opt); }},
      {6, "spectral temporal refinement (Example 3a)", 60, [&] { return criterion6(opt); }},
      {7, "WENO7 co-refinement (Example 4a)", 300, [&] { return criterion7(opt); }},
      {8, "Burgers co-refinement (Example 4b)", 900, [&] { return criterion8(opt); }},
      {9, "property suites", 60, criterion9},
  };
  const std::set<int> selected(only.begin(), only.end());
  int failed = 0;
  for (const auto& cr : all) {
    if (!selected.empty() && !selected.count(cr.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.budget_s) {
      o.pass = false;
      o.detail += "; FAILED runtime budget " + fmt("%.0f s", cr.budget_s);
    }
    failed += !o.pass;
    std::printf("criterion %d: %s  %s (%.2f s) -- %s\n", cr.id, o.pass ? "PASS" : "FAIL", cr.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
