#include <doctest.h>
#include <omp.h>

#include <complex>
#include <vector>

#include "slab/kernels.hpp"
#include "slab/rng.hpp"

using namespace slab;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.symmetric(i);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("omp kernels match the serial reference bitwise") {
  const std::size_t n = 10000 + 37;  // force a ragged last block
  auto a = random_vec(n, 1);
  auto b = random_vec(n, 2);

  std::vector<double> o1(n), o2(n);
  kernels::mul(a, b, o1);
  kernels::serial::mul(a, b, o2);
  CHECK(o1 == o2);

  o1 = a;
  o2 = a;
  kernels::axpy(0.37, b, o1);
  kernels::serial::axpy(0.37, b, o2);
  CHECK(o1 == o2);

  kernels::lincomb(1.5, a, -2.5, b, o1);
  kernels::serial::lincomb(1.5, a, -2.5, b, o2);
  CHECK(o1 == o2);

  kernels::divide(a, b, o1);
  kernels::serial::divide(a, b, o2);
  CHECK(o1 == o2);

  CHECK(kernels::sum(a) == kernels::serial::sum(a));
  CHECK(kernels::dot(a, b) == kernels::serial::dot(a, b));
  CHECK(kernels::max_abs(a) == kernels::serial::max_abs(a));
  CHECK(kernels::min_val(a) == kernels::serial::min_val(a));

  std::vector<std::complex<double>> c1(n), c2(n);
  for (std::size_t i = 0; i < n; ++i) c1[i] = c2[i] = {a[i], b[i]};
  kernels::apply_multiplier(c1, b);
  kernels::serial::apply_multiplier(c2, b);
  CHECK(c1 == c2);
  kernels::apply_ik(c1, a);
  kernels::serial::apply_ik(c2, a);
  CHECK(c1 == c2);
}

TEST_CASE("parity projection agrees between omp and serial") {
  const int nx = 12, ny = 10, nz = 8;
  auto v1 = random_vec(static_cast<std::size_t>(nx) * ny * nz, 3);
  auto v2 = v1;
  kernels::parity_project(v1, nx, ny, nz, -1);
  kernels::serial::parity_project(v2, nx, ny, nz, -1);
  CHECK(v1 == v2);
  kernels::parity_project(v1, nx, ny, nz, +1);
  kernels::serial::parity_project(v2, nx, ny, nz, +1);
  CHECK(v1 == v2);
}

TEST_CASE("reductions are reproducible across thread counts") {
  const std::size_t n = 300000 + 11;
  auto a = random_vec(n, 7);
  auto b = random_vec(n, 8);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double s1 = kernels::sum(a);
  const double d1 = kernels::dot(a, b);
  omp_set_num_threads(2);
  const double s2 = kernels::sum(a);
  const double d2 = kernels::dot(a, b);
  omp_set_num_threads(saved);
  CHECK(s1 == s2);
  CHECK(d1 == d2);
}

}  // TEST_SUITE
