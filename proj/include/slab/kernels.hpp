#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Hot inner loops shared by the field and spectral modules. Each kernel has
// an OpenMP version (the default entry point) and a serial reference version
// under kernels::serial with the identical contract; the test suite checks
// them against each other and bench/ compares their throughput.
//
// Reductions are chunked with a fixed block size and the partial results are
// combined in ascending block order, so sums are bitwise reproducible for any
// thread count.

namespace slab::kernels {

inline constexpr std::size_t reduction_block = 4096;

using cspan = std::span<const double>;
using mspan = std::span<double>;
using zspan = std::span<std::complex<double>>;

void fill(mspan out, double value);
void copy(cspan in, mspan out);
void scale(mspan x, double a);
void axpy(double a, cspan x, mspan y);                    // y += a*x
void lincomb(double a, cspan x, double b, cspan y, mspan out);
void mul(cspan a, cspan b, mspan out);                     // out = a*b
void mul_add(cspan a, cspan b, mspan out);                 // out += a*b
void divide(cspan num, cspan den, mspan out);              // out = num/den

// c[i] *= m[i] for a real spectral multiplier
void apply_multiplier(zspan c, cspan m);
// c[i] *= i*k[i]  (spectral derivative)
void apply_ik(zspan c, cspan k);

double sum(cspan x);
double dot(cspan x, cspan y);
double max_abs(cspan x);
double min_val(cspan x);

// In-place projection onto the even (sign=+1) or odd (sign=-1) part under
// the vertical reflection iz -> (Nz-iz) mod Nz, x-fastest layout.
void parity_project(mspan v, int nx, int ny, int nz, int sign);

namespace serial {
void fill(mspan out, double value);
void copy(cspan in, mspan out);
void scale(mspan x, double a);
void axpy(double a, cspan x, mspan y);
void lincomb(double a, cspan x, double b, cspan y, mspan out);
void mul(cspan a, cspan b, mspan out);
void mul_add(cspan a, cspan b, mspan out);
void divide(cspan num, cspan den, mspan out);
void apply_multiplier(zspan c, cspan m);
void apply_ik(zspan c, cspan k);
double sum(cspan x);
double dot(cspan x, cspan y);
double max_abs(cspan x);
double min_val(cspan x);
void parity_project(mspan v, int nx, int ny, int nz, int sign);
}  // namespace serial

}  // namespace slab::kernels
