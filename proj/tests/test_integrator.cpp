#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "ssp/error.hpp"
#include "ssp/experiments.hpp"
#include "ssp/families.hpp"
#include "ssp/grid.hpp"
#include "ssp/integrator.hpp"
#include "ssp/spatial.hpp"
#include "ssp/sspcert.hpp"

using namespace ssp;

namespace {

SemiDiscretization scalar_exponential(std::atomic<int>* f_calls = nullptr, std::atomic<int>* g_calls = nullptr) {
  SemiDiscretization sys;
  sys.f_op = [f_calls](std::span<const double> u, std::span<double> out) {
    if (f_calls) ++*f_calls;
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i];
  };
  sys.fdot_op = [g_calls](std::span<const double> u, std::span<double> out) {
    if (g_calls) ++*g_calls;
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i];
  };
  return sys;
}

GridFunction example1_ic(std::size_t n = 1600) {
  return sample(0.0, 1.0, n, [](double x) { return (x >= 0.25 && x <= 0.5) ? 1.0 : 0.0; });
}

SemiDiscretization example1_system(const GridFunction& u0) {
  return make_semidiscretization(FluxSpec{FluxKind::LinearAdvectionLeft}, Scheme::FirstOrder, u0);
}

double max_tv_rise(const TwoDerivativeTableau& t, const SemiDiscretization& sys, const GridFunction& u0,
                   double lambda, std::size_t steps = 50) {
  EvolveOptions opt;
  opt.monitor_tv = true;
  const auto res = evolve(t, sys, u0, lambda * u0.dx, steps, opt);
  double prev = total_variation(u0.values), rise = -1e300;
  for (const auto& r : res.records) {
    rise = std::max(rise, r.tv - prev);
    prev = r.tv;
  }
  return rise;
}

}  // namespace

TEST_CASE("constants are fixed points of the advection step") {
  const auto u0 = sample(0.0, 1.0, 64, [](double) { return 3.25; });
  const auto sys = example1_system(u0);
  const auto u1 = step(make_ts2().tableau, sys, u0, 0.5 * u0.dx);
  CHECK(u1.values == u0.values);
}

TEST_CASE("two-stage fourth-order step on the exponential") {
  GridFunction u{{1.0}, 0.0, 1.0};
  const auto u1 = step(make_2s4p().tableau, scalar_exponential(), u, 0.1);
  const double expect = 1 + 0.1 + 0.01 / 2 + 0.001 / 6 + 0.0001 / 24;
  CHECK(u1.values[0] == doctest::Approx(expect).epsilon(1e-15));
  CHECK(u1.values[0] == doctest::Approx(1.1051708333333333).epsilon(1e-15));
}

TEST_CASE("evaluation counts") {
  std::atomic<int> f = 0, g = 0;
  GridFunction u{{1.0}, 0.0, 1.0};
  step(make_ssprk33().tableau, scalar_exponential(&f, &g), u, 0.1);
  CHECK(f == 3);
  CHECK(g == 0);
  f = g = 0;
  step(make_2s3p(kInvSqrt2).tableau, scalar_exponential(&f, &g), u, 0.1);
  CHECK(f == 2);
  CHECK(g == 2);
  f = g = 0;
  step(make_3s5p(kInvSqrt2).tableau, scalar_exponential(&f, &g), u, 0.1);
  CHECK(f <= 3);
  CHECK(g <= 3);
}

TEST_CASE("one step is exact on polynomials up to the design order") {
  for (auto id : all_families()) {
    const auto m = make_family(id, kInvSqrt2);
    const int p = m.order;
    SemiDiscretization sys;
    sys.f_op = [p](std::span<const double> u, std::span<double> out) {
      out[0] = p * std::pow(u[1], p - 1);
      out[1] = 1.0;
    };
    sys.fdot_op = [p](std::span<const double> u, std::span<double> out) {
      out[0] = p >= 2 ? p * (p - 1) * std::pow(u[1], p - 2) : 0.0;
      out[1] = 0.0;
    };
    const double t0 = 0.3, dt = 0.7;
    GridFunction u{{std::pow(t0, p), t0}, 0.0, 1.0};
    const auto u1 = step(m.tableau, sys, u, dt);
    CAPTURE(to_string(id));
    CHECK(u1.values[0] == doctest::Approx(std::pow(t0 + dt, p)).epsilon(1e-13));
  }
}

TEST_CASE("Shu-Osher evaluation matches the Butcher form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(-1, 1);
  const auto u0 = sample(0.0, 1.0, 64, [&](double x) {
    return std::sin(2 * M_PI * x) + 0.3 * std::cos(6 * M_PI * x);
  });
  const auto first = example1_system(u0);
  const auto weno = make_semidiscretization(FluxSpec{FluxKind::LinearAdvectionRight}, Scheme::Weno5, u0);
  for (auto id : all_families()) {
    if (id == FamilyId::NonSsp2s3p) continue;
    const auto m = make_family(id, kInvSqrt2);
    const auto form = build_shu_osher(m.tableau, m.c, kInvSqrt2);
    for (const auto* sys : {&first, &weno}) {
      const double dt = 0.5 * sys->dt_fe;
      const auto a = step(m.tableau, *sys, u0, dt);
      const auto b = step_shu_osher(form, m.tableau, *sys, u0, dt);
      CAPTURE(to_string(id));
      CHECK(oracle::max_abs_diff(a.values, b.values) <= 1e-12 * oracle::max_abs(u0.values));
    }
  }
}

TEST_CASE("Shu-Osher evaluation handles the degenerate identity form") {
  const auto t = make_ts2().tableau;
  ShuOsherForm form{1.0, 1.0, {1.0, 1.0}, Matrix(2, 2), Matrix(2, 2)};
  const auto u0 = example1_ic(32);
  const auto u1 = step_shu_osher(form, t, example1_system(u0), u0, 0.01);
  CHECK(u1.values == u0.values);
  ShuOsherForm wrong{1.0, 1.0, {1.0, 1.0, 1.0}, Matrix(3, 3), Matrix(3, 3)};
  CHECK_THROWS_AS(step_shu_osher(wrong, t, example1_system(u0), u0, 0.01), InvalidParameter);
}

TEST_CASE("Shu-Osher evaluation of the fifth-order method keeps TV at C") {
  const auto m = make_3s5p(kInvSqrt2);
  const auto form = build_shu_osher(m.tableau, m.c, kInvSqrt2);
  auto u = example1_ic();
  const auto sys = example1_system(u);
  double tv = total_variation(u.values);
  for (int n = 0; n < 50; ++n) {
    u = step_shu_osher(form, m.tableau, sys, u, m.c * sys.dt_fe);
    const double next = total_variation(u.values);
    CHECK(next <= tv + 1e-12);
    tv = next;
  }
}

TEST_CASE("evolve with zero steps") {
  const auto u0 = example1_ic(32);
  const auto res = evolve(make_ts2().tableau, example1_system(u0), u0, 0.01, 0, {true});
  CHECK(res.u.values == u0.values);
  CHECK(res.records.empty());
}

TEST_CASE("evolve records TV and times") {
  const auto u0 = example1_ic(100);
  EvolveOptions opt;
  opt.monitor_tv = true;
  opt.t0 = 1.0;
  const auto res = evolve(make_2s2p(kInvSqrt2).tableau, example1_system(u0), u0, 0.005, 5, opt);
  REQUIRE(res.records.size() == 5);
  CHECK(res.records[0].step == 1);
  CHECK(res.records[4].time == doctest::Approx(1.025));
  for (const auto& r : res.records) CHECK(r.tv >= 0.0);
  CHECK(res.records.back().tv == doctest::Approx(total_variation(res.u.values)));
}

TEST_CASE("two-stage second-order TV around its coefficient") {
  const auto u0 = example1_ic();
  const auto sys = example1_system(u0);
  const auto t = make_2s2p(kInvSqrt2).tableau;
  CHECK(max_tv_rise(t, sys, u0, 1.28) <= 1e-12);
  CHECK(max_tv_rise(t, sys, u0, 1.35) > 1e-8);
}

TEST_CASE("TV does not grow at certified step sizes") {
  const auto u0 = example1_ic();
  const auto sys = example1_system(u0);
  for (auto id : all_families()) {
    if (id == FamilyId::NonSsp2s3p) continue;
    const auto m = make_family(id, std::sqrt(2.0) / 2);
    for (double frac : {0.25, 0.6, 1.0}) {
      CAPTURE(to_string(id));
      CHECK(max_tv_rise(m.tableau, sys, u0, frac * m.c * 0.999999) <= 1e-12);
    }
  }
}

TEST_CASE("blow-up reports stage and step") {
  SemiDiscretization sys;
  sys.f_op = [](std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] > 10 ? INFINITY : u[i] * 100;
  };
  sys.fdot_op = [](std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = 0 * u[i];
  };
  GridFunction u{{1.0}, 0.0, 1.0};
  try {
    evolve(make_ssprk33().tableau, sys, u, 0.5, 10, {true});
    FAIL("expected blow-up");
  } catch (const EvolveAborted& e) {
    CHECK(e.step() == 0);
    CHECK(e.stage() >= 1);
    CHECK(e.history().empty());
  }
  SemiDiscretization slow = sys;
  slow.f_op = [](std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] > 1e3 ? NAN : 2 * u[i];
  };
  try {
    evolve(make_ssprk33().tableau, slow, u, 1.0, 20, {true});
    FAIL("expected blow-up");
  } catch (const EvolveAborted& e) {
    CHECK(e.step() > 0);
    CHECK(e.history().size() == e.step());
  }
}

TEST_CASE("step validates inputs") {
  const auto u0 = example1_ic(32);
  const auto sys = example1_system(u0);
  CHECK_THROWS_AS(step(make_ts2().tableau, sys, u0, 0.0), InvalidParameter);
  const auto other = example1_ic(16);
  CHECK_THROWS_AS(step(make_ts2().tableau, sys, other, 0.01), InvalidParameter);
}

TEST_CASE("snapshot sink writes every k steps") {
  const auto dir = std::filesystem::temp_directory_path() / "ssp_msmd_snapshots";
  std::filesystem::remove_all(dir);
  const auto u0 = example1_ic(40);
  EvolveOptions opt;
  opt.monitor_tv = true;
  opt.snapshot_every = 3;
  opt.sink = snapshot_file_sink(dir, "ts2");
  const auto res = evolve(make_ts2().tableau, example1_system(u0), u0, 0.01, 7, opt);
  CHECK(std::filesystem::exists(dir / "ts2_3.dat"));
  CHECK(std::filesystem::exists(dir / "ts2_6.dat"));
  CHECK_FALSE(std::filesystem::exists(dir / "ts2_7.dat"));
  const auto back = read_snapshot(dir / "ts2_6.dat");
  CHECK(back.size() == 40);
  CHECK(back.dx == doctest::Approx(u0.dx));
  int flagged = 0;
  for (const auto& r : res.records) flagged += r.snapshot;
  CHECK(flagged == 2);
  CHECK(res.records[5].snapshot);
  std::filesystem::remove_all(dir);
}
