#include <doctest.h>

#include <random>

#include "ssp/kernels.hpp"
#include "ssp/spatial.hpp"

using namespace ssp;
namespace k = ssp::kernels;

namespace {

std::vector<double> noisy_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> v(n);
  for (double& x : v) {
    x = d(rng);
    if (x > 0.5) x += 1.0;
  }
  return v;
}

}  // namespace

TEST_CASE("OpenMP kernels agree with the serial reference bit for bit") {
  for (std::size_t n : {33, 511, 512, 4099}) {
    const auto u = noisy_values(n, static_cast<unsigned>(n));
    std::vector<double> a(n), b(n);
    k::serial::upwind_difference(u, 0.01, a);
    k::omp::upwind_difference(u, 0.01, b);
    CHECK(a == b);
    k::serial::centered_second(u, 0.01, a);
    k::omp::centered_second(u, 0.01, b);
    CHECK(a == b);
    for (int order : {5, 7, 9}) {
      for (auto bias : {k::WenoBias::Plus, k::WenoBias::Minus}) {
        k::serial::weno_derivative(k::weno_tables(order), bias, u, 0.01, a);
        k::omp::weno_derivative(k::weno_tables(order), bias, u, 0.01, b);
        CHECK(a == b);
      }
    }
  }
  for (std::size_t n : {41, 601}) {
    const auto D = spectral_matrix(n);
    const auto u = noisy_values(n, 3);
    std::vector<double> a(n), b(n);
    k::serial::dense_matvec(D, u, a);
    k::omp::dense_matvec(D, u, b);
    CHECK(a == b);
  }
}
