// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Prints one row per kernel and size with the speedup.

#include <omp.h>

#include <complex>
#include <cstdio>
#include <vector>

#include "slab/kernels.hpp"

using namespace slab;

namespace {

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    f();
    const double t1 = omp_get_wtime();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

void fill_pattern(std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = 1.0 + 1e-6 * static_cast<double>(i % 1013);
}

void bench_size(std::size_t n) {
  std::vector<double> a(n), b(n), out(n);
  std::vector<std::complex<double>> c(n, {1.0, 0.5});
  fill_pattern(a);
  fill_pattern(b);
  const int reps = 20;

  struct Row {
    const char* name;
    double t_serial;
    double t_omp;
  };
  std::vector<Row> rows;

  rows.push_back({"mul",
                  time_best_of(reps, [&] { kernels::serial::mul(a, b, out); }),
                  time_best_of(reps, [&] { kernels::mul(a, b, out); })});
  rows.push_back({"axpy",
                  time_best_of(reps, [&] { kernels::serial::axpy(1.1, a, out); }),
                  time_best_of(reps, [&] { kernels::axpy(1.1, a, out); })});
  rows.push_back({"dot",
                  time_best_of(reps, [&] { (void)kernels::serial::dot(a, b); }),
                  time_best_of(reps, [&] { (void)kernels::dot(a, b); })});
  rows.push_back(
      {"max_abs",
       time_best_of(reps, [&] { (void)kernels::serial::max_abs(a); }),
       time_best_of(reps, [&] { (void)kernels::max_abs(a); })});
  rows.push_back(
      {"multiplier",
       time_best_of(reps, [&] { kernels::serial::apply_multiplier(c, a); }),
       time_best_of(reps, [&] { kernels::apply_multiplier(c, a); })});
  rows.push_back(
      {"parity",
       time_best_of(reps,
                    [&] { kernels::serial::parity_project(a, 64, 8, n > 64 * 8 ? static_cast<int>(n / (64 * 8)) : 1, +1); }),
       time_best_of(reps, [&] {
         kernels::parity_project(a, 64, 8, n > 64 * 8 ? static_cast<int>(n / (64 * 8)) : 1, +1);
       })});

  for (const auto& r : rows)
    std::printf("%-12s n=%-9zu serial %9.1f us   omp %9.1f us   speedup %.2fx\n",
                r.name, n, 1e6 * r.t_serial, 1e6 * r.t_omp,
                r.t_serial / r.t_omp);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  bench_size(1 << 15);  // a 64x64x8 grid
  bench_size(1 << 18);
  bench_size(1 << 21);
  return 0;
}
