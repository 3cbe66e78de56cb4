#include "slab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace slab::kernels {

namespace {

// below this size the fork/join cost of a parallel region exceeds the work
constexpr std::ptrdiff_t kParallelCutoff = 1 << 15;

// Per-block partials, combined in block order: reproducible for any thread
// count as long as the block size is fixed.
template <class BlockOp>
double blocked_reduce(std::size_t n, double init, bool parallel, BlockOp op,
                      double (*combine)(double, double)) {
  const std::size_t nblocks = (n + reduction_block - 1) / reduction_block;
  std::vector<double> partial(nblocks, init);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * reduction_block;
    const std::size_t hi = std::min(n, lo + reduction_block);
    partial[b] = op(lo, hi);
  }
  double acc = init;
  for (double p : partial) acc = combine(acc, p);
  return acc;
}

double add2(double a, double b) { return a + b; }
double max2(double a, double b) { return a > b ? a : b; }
double min2(double a, double b) { return a < b ? a : b; }

}  // namespace

void fill(mspan out, double value) {
  const std::ptrdiff_t n = out.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = value;
}

void copy(cspan in, mspan out) {
  const std::ptrdiff_t n = out.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = in[i];
}

void scale(mspan x, double a) {
  const std::ptrdiff_t n = x.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) x[i] *= a;
}

void axpy(double a, cspan x, mspan y) {
  const std::ptrdiff_t n = y.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void lincomb(double a, cspan x, double b, cspan y, mspan out) {
  const std::ptrdiff_t n = out.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void mul(cspan a, cspan b, mspan out) {
  const std::ptrdiff_t n = out.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_add(cspan a, cspan b, mspan out) {
  const std::ptrdiff_t n = out.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void divide(cspan num, cspan den, mspan out) {
  const std::ptrdiff_t n = out.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = num[i] / den[i];
}

void apply_multiplier(zspan c, cspan m) {
  const std::ptrdiff_t n = c.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) c[i] *= m[i];
}

void apply_ik(zspan c, cspan k) {
  const std::ptrdiff_t n = c.size();
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::complex<double> z = c[i];
    c[i] = std::complex<double>(-z.imag() * k[i], z.real() * k[i]);
  }
}

double sum(cspan x) {
  return blocked_reduce(
      x.size(), 0.0, x.size() >= static_cast<std::size_t>(kParallelCutoff),
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        return s;
      },
      add2);
}

double dot(cspan x, cspan y) {
  return blocked_reduce(
      x.size(), 0.0, x.size() >= static_cast<std::size_t>(kParallelCutoff),
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
        return s;
      },
      add2);
}

double max_abs(cspan x) {
  return blocked_reduce(
      x.size(), 0.0, x.size() >= static_cast<std::size_t>(kParallelCutoff),
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s = std::max(s, std::abs(x[i]));
        return s;
      },
      max2);
}

double min_val(cspan x) {
  return blocked_reduce(
      x.size(), std::numeric_limits<double>::infinity(),
      x.size() >= static_cast<std::size_t>(kParallelCutoff),
      [&](std::size_t lo, std::size_t hi) {
        double s = std::numeric_limits<double>::infinity();
        for (std::size_t i = lo; i < hi; ++i) s = std::min(s, x[i]);
        return s;
      },
      min2);
}

void parity_project(mspan v, int nx, int ny, int nz, int sign) {
  const double sg = static_cast<double>(sign);
  const std::ptrdiff_t plane = static_cast<std::ptrdiff_t>(nx) * ny;
  // iz=0 and iz=nz/2 are their own mirror images.
#pragma omp parallel for schedule(static) if (plane >= kParallelCutoff)
  for (std::ptrdiff_t p = 0; p < plane; ++p) {
    if (sign < 0) {
      v[p] = 0.0;
      if (nz % 2 == 0) v[plane * (nz / 2) + p] = 0.0;
    }
  }
#pragma omp parallel for schedule(static) collapse(2) if (plane * nz >= kParallelCutoff)
  for (int iz = 1; iz < (nz + 1) / 2; ++iz) {
    for (std::ptrdiff_t p = 0; p < plane; ++p) {
      const std::ptrdiff_t a = plane * iz + p;
      const std::ptrdiff_t b = plane * (nz - iz) + p;
      const double va = v[a];
      const double vb = v[b];
      v[a] = 0.5 * (va + sg * vb);
      v[b] = 0.5 * (vb + sg * va);
    }
  }
}

namespace serial {

void fill(mspan out, double value) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = value;
}
void copy(cspan in, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = in[i];
}
void scale(mspan x, double a) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= a;
}
void axpy(double a, cspan x, mspan y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}
void lincomb(double a, cspan x, double b, cspan y, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + b * y[i];
}
void mul(cspan a, cspan b, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}
void mul_add(cspan a, cspan b, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] * b[i];
}
void divide(cspan num, cspan den, mspan out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = num[i] / den[i];
}
void apply_multiplier(zspan c, cspan m) {
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m[i];
}
void apply_ik(zspan c, cspan k) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::complex<double> z = c[i];
    c[i] = std::complex<double>(-z.imag() * k[i], z.real() * k[i]);
  }
}
double sum(cspan x) {
  return blocked_reduce(
      x.size(), 0.0, false,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i];
        return s;
      },
      add2);
}
double dot(cspan x, cspan y) {
  return blocked_reduce(
      x.size(), 0.0, false,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
        return s;
      },
      add2);
}
double max_abs(cspan x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s = std::max(s, std::abs(x[i]));
  return s;
}
double min_val(cspan x) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) s = std::min(s, x[i]);
  return s;
}
void parity_project(mspan v, int nx, int ny, int nz, int sign) {
  const double sg = static_cast<double>(sign);
  const std::ptrdiff_t plane = static_cast<std::ptrdiff_t>(nx) * ny;
  if (sign < 0) {
    for (std::ptrdiff_t p = 0; p < plane; ++p) v[p] = 0.0;
    if (nz % 2 == 0)
      for (std::ptrdiff_t p = 0; p < plane; ++p) v[plane * (nz / 2) + p] = 0.0;
  }
  for (int iz = 1; iz < (nz + 1) / 2; ++iz) {
    for (std::ptrdiff_t p = 0; p < plane; ++p) {
      const std::ptrdiff_t a = plane * iz + p;
      const std::ptrdiff_t b = plane * (nz - iz) + p;
      const double va = v[a];
      const double vb = v[b];
      v[a] = 0.5 * (va + sg * vb);
      v[b] = 0.5 * (vb + sg * va);
    }
  }
}

}  // namespace serial

}  // namespace slab::kernels
