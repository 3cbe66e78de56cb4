#include "slab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <sstream>

#include "slab/errors.hpp"
#include "slab/kernels.hpp"

namespace slab {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// derivative wavenumber for index i of n samples, fundamental k0;
// the unpaired Nyquist mode is zeroed
double deriv_wavenumber(int i, int n, double k0) {
  const int k = (i <= n / 2 - 1) ? i : i - n;
  if (n % 2 == 0 && (i == n / 2)) return 0.0;
  return k0 * k;
}

bool keep_23(int i, int n) {
  const int k = (i <= n / 2 - 1) ? i : i - n;
  return std::abs(k) < n / 3 || n < 6;
}

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

SpectralWorkspace::SpectralWorkspace(std::shared_ptr<const SlabGrid> grid)
    : grid_(std::move(grid)) {
  const int Nx = grid_->Nx, Ny = grid_->Ny, Nz = grid_->Nz;
  const int Nxc = Nx / 2 + 1;
  nmodes_ = static_cast<std::size_t>(Nz) * Ny * Nxc;
  rbuf_ = fftw_alloc_real(grid_->size());
  cbuf_ = reinterpret_cast<Complex*>(fftw_alloc_complex(nmodes_));
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_3d(Nz, Ny, Nx, rbuf_,
                                     reinterpret_cast<fftw_complex*>(cbuf_),
                                     FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_3d(Nz, Ny, Nx,
                                     reinterpret_cast<fftw_complex*>(cbuf_),
                                     rbuf_, FFTW_ESTIMATE);
  }

  kxm_.resize(nmodes_);
  kym_.resize(nmodes_);
  kzm_.resize(nmodes_);
  k2m_.resize(nmodes_);
  mask_.resize(nmodes_);
  const double k0x = M_PI / grid_->L, k0y = M_PI / grid_->L, k0z = M_PI;
  std::size_t c = 0;
  for (int iz = 0; iz < Nz; ++iz)
    for (int iy = 0; iy < Ny; ++iy)
      for (int ix = 0; ix < Nxc; ++ix, ++c) {
        const double kx = deriv_wavenumber(ix, Nx, k0x);
        const double ky = deriv_wavenumber(iy, Ny, k0y);
        const double kz = deriv_wavenumber(iz, Nz, k0z);
        kxm_[c] = kx;
        kym_[c] = ky;
        kzm_[c] = kz;
        k2m_[c] = kx * kx + ky * ky + kz * kz;
        mask_[c] = (keep_23(ix, Nx) && keep_23(iy, Ny) && keep_23(iz, Nz))
                       ? 1.0
                       : 0.0;
      }
}

SpectralWorkspace::~SpectralWorkspace() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(rbuf_);
  fftw_free(reinterpret_cast<fftw_complex*>(cbuf_));
}

void SpectralWorkspace::forward(const ScalarField& f,
                                std::vector<Complex>& out) {
  kernels::copy(f.v, {rbuf_, grid_->size()});
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  out.assign(cbuf_, cbuf_ + nmodes_);
}

void SpectralWorkspace::inverse(const std::vector<Complex>& in,
                                ScalarField& out) {
  std::copy(in.begin(), in.end(), cbuf_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  out.v.resize(grid_->size());
  kernels::copy({rbuf_, grid_->size()}, out.v);
  kernels::scale(out.v, 1.0 / static_cast<double>(grid_->size()));
}

ScalarField SpectralWorkspace::deriv(const ScalarField& f, int axis) {
  const std::vector<double>& k = (axis == 0) ? kxm_ : (axis == 1 ? kym_ : kzm_);
  std::vector<Complex> spec;
  forward(f, spec);
  kernels::apply_ik(spec, k);
  ScalarField out(grid_, axis == 2 ? flip(f.parity) : f.parity);
  inverse(spec, out);
  return out;
}

VectorField SpectralWorkspace::grad(const ScalarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
  VectorField out(grid_, {f.parity, f.parity, flip(f.parity)});
  std::vector<Complex> tmp(nmodes_);
  const std::vector<double>* ks[3] = {&kxm_, &kym_, &kzm_};
  for (int a = 0; a < 3; ++a) {
    tmp = spec;
    kernels::apply_ik(tmp, *ks[a]);
    inverse(tmp, out[a]);
  }
  return out;
}

ScalarField SpectralWorkspace::divergence(const VectorField& v) {
  std::vector<Complex> acc(nmodes_, Complex(0.0, 0.0));
  std::vector<Complex> spec;
  const std::vector<double>* ks[3] = {&kxm_, &kym_, &kzm_};
  for (int a = 0; a < 3; ++a) {
    forward(v[a], spec);
    kernels::apply_ik(spec, *ks[a]);
    for (std::size_t i = 0; i < nmodes_; ++i) acc[i] += spec[i];
  }
  ScalarField out(grid_, v[0].parity);
  inverse(acc, out);
  return out;
}

ScalarField SpectralWorkspace::laplacian(const ScalarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
  for (std::size_t i = 0; i < nmodes_; ++i) spec[i] *= -k2m_[i];
  ScalarField out(grid_, f.parity);
  inverse(spec, out);
  return out;
}

ScalarField SpectralWorkspace::inverse_laplacian(const ScalarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
  for (std::size_t i = 0; i < nmodes_; ++i)
    spec[i] = (k2m_[i] > 0.0) ? spec[i] / (-k2m_[i]) : Complex(0.0, 0.0);
  ScalarField out(grid_, f.parity);
  inverse(spec, out);
  return out;
}

VectorField SpectralWorkspace::helmholtz(const VectorField& v) {
  std::vector<Complex> sx, sy, sz;
  forward(v[0], sx);
  forward(v[1], sy);
  forward(v[2], sz);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nmodes_); ++i) {
    if (k2m_[i] <= 0.0) continue;  // zero mode passes through
    const Complex kdotv =
        kxm_[i] * sx[i] + kym_[i] * sy[i] + kzm_[i] * sz[i];
    const Complex q = kdotv / k2m_[i];
    sx[i] -= kxm_[i] * q;
    sy[i] -= kym_[i] * q;
    sz[i] -= kzm_[i] * q;
  }
  VectorField out(grid_, {v[0].parity, v[1].parity, v[2].parity});
  inverse(sx, out[0]);
  inverse(sy, out[1]);
  inverse(sz, out[2]);
  return out;
}

PlanarField SpectralWorkspace::vertical_average(const ScalarField& f) {
  // physical-space mean over x3 with measure |T1| = 2: (1/2) * sum * dz
  const auto& g = *grid_;
  PlanarField out(g.horizontal);
  const std::size_t plane = static_cast<std::size_t>(g.Nx) * g.Ny;
  const double w = 1.0 / g.Nz;  // (dz/|T1|) = 1/Nz
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(plane); ++p) {
    double s = 0.0;
    for (int iz = 0; iz < g.Nz; ++iz) s += f.v[plane * iz + p];
    out.v[p] = s * w;
  }
  return out;
}

ScalarField SpectralWorkspace::vertical_primitive(const ScalarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nmodes_); ++i) {
    const double kz = kzm_[i];
    if (kz == 0.0) {
      spec[i] = Complex(0.0, 0.0);  // vertical mean modes dropped
    } else {
      const Complex z = spec[i];
      spec[i] = Complex(z.imag() / kz, -z.real() / kz);  // divide by i*kz
    }
  }
  ScalarField out(grid_, flip(f.parity));
  inverse(spec, out);
  return out;
}

void SpectralWorkspace::apply_multiplier_inplace(ScalarField& f,
                                                 const std::vector<double>& m) {
  std::vector<Complex> spec;
  forward(f, spec);
  kernels::apply_multiplier(spec, m);
  inverse(spec, f);
}

void SpectralWorkspace::mollify(ScalarField& f, double delta) {
  if (!(delta > 0.0)) throw ConfigError("mollification scale must be > 0");
  std::vector<double> m(nmodes_);
  const double c = 0.5 * delta * delta;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nmodes_); ++i)
    m[i] = std::exp(-c * k2m_[i]);
  apply_multiplier_inplace(f, m);
}

void SpectralWorkspace::dealias(ScalarField& f) {
  apply_multiplier_inplace(f, mask_);
}

void SpectralWorkspace::dealias(VectorField& f) {
  for (int c = 0; c < 3; ++c) dealias(f[c]);
}

// ---------------------------------------------------------------------------

PlanarWorkspace::PlanarWorkspace(std::shared_ptr<const PlanarGrid> grid)
    : grid_(std::move(grid)) {
  const int Nx = grid_->Nx, Ny = grid_->Ny;
  const int Nxc = Nx / 2 + 1;
  nmodes_ = static_cast<std::size_t>(Ny) * Nxc;
  rbuf_ = fftw_alloc_real(grid_->size());
  cbuf_ = reinterpret_cast<Complex*>(fftw_alloc_complex(nmodes_));
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_2d(Ny, Nx, rbuf_,
                                     reinterpret_cast<fftw_complex*>(cbuf_),
                                     FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_2d(Ny, Nx,
                                     reinterpret_cast<fftw_complex*>(cbuf_),
                                     rbuf_, FFTW_ESTIMATE);
  }
  kxm_.resize(nmodes_);
  kym_.resize(nmodes_);
  k2m_.resize(nmodes_);
  mask_.resize(nmodes_);
  const double k0 = M_PI / grid_->L;
  std::size_t c = 0;
  for (int iy = 0; iy < Ny; ++iy)
    for (int ix = 0; ix < Nxc; ++ix, ++c) {
      const double kx = deriv_wavenumber(ix, Nx, k0);
      const double ky = deriv_wavenumber(iy, Ny, k0);
      kxm_[c] = kx;
      kym_[c] = ky;
      k2m_[c] = kx * kx + ky * ky;
      mask_[c] = (keep_23(ix, Nx) && keep_23(iy, Ny)) ? 1.0 : 0.0;
    }
}

PlanarWorkspace::~PlanarWorkspace() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(rbuf_);
  fftw_free(reinterpret_cast<fftw_complex*>(cbuf_));
}

void PlanarWorkspace::forward(const PlanarField& f, std::vector<Complex>& out) {
  kernels::copy(f.v, {rbuf_, grid_->size()});
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  out.assign(cbuf_, cbuf_ + nmodes_);
}

void PlanarWorkspace::inverse(const std::vector<Complex>& in, PlanarField& out) {
  std::copy(in.begin(), in.end(), cbuf_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  out.v.resize(grid_->size());
  kernels::copy({rbuf_, grid_->size()}, out.v);
  kernels::scale(out.v, 1.0 / static_cast<double>(grid_->size()));
}

PlanarField PlanarWorkspace::deriv(const PlanarField& f, int axis) {
  std::vector<Complex> spec;
  forward(f, spec);
  kernels::apply_ik(spec, axis == 0 ? kxm_ : kym_);
  PlanarField out(grid_);
  inverse(spec, out);
  return out;
}

PlanarVec PlanarWorkspace::grad(const PlanarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
  PlanarVec out(grid_);
  std::vector<Complex> tmp = spec;
  kernels::apply_ik(tmp, kxm_);
  inverse(tmp, out[0]);
  tmp = spec;
  kernels::apply_ik(tmp, kym_);
  inverse(tmp, out[1]);
  return out;
}

PlanarField PlanarWorkspace::divergence(const PlanarVec& v) {
  std::vector<Complex> sx, sy;
  forward(v[0], sx);
  forward(v[1], sy);
  kernels::apply_ik(sx, kxm_);
  kernels::apply_ik(sy, kym_);
  for (std::size_t i = 0; i < nmodes_; ++i) sx[i] += sy[i];
  PlanarField out(grid_);
  inverse(sx, out);
  return out;
}

PlanarField PlanarWorkspace::curl(const PlanarVec& v) {
  std::vector<Complex> sx, sy;
  forward(v[0], sx);
  forward(v[1], sy);
  kernels::apply_ik(sy, kxm_);  // d1 v2
  kernels::apply_ik(sx, kym_);  // d2 v1
  for (std::size_t i = 0; i < nmodes_; ++i) sy[i] -= sx[i];
  PlanarField out(grid_);
  inverse(sy, out);
  return out;
}

PlanarField PlanarWorkspace::laplacian(const PlanarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
  for (std::size_t i = 0; i < nmodes_; ++i) spec[i] *= -k2m_[i];
  PlanarField out(grid_);
  inverse(spec, out);
  return out;
}

PlanarField PlanarWorkspace::inverse_laplacian(const PlanarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
  for (std::size_t i = 0; i < nmodes_; ++i)
    spec[i] = (k2m_[i] > 0.0) ? spec[i] / (-k2m_[i]) : Complex(0.0, 0.0);
  PlanarField out(grid_);
  inverse(spec, out);
  return out;
}

PlanarVec PlanarWorkspace::leray(const PlanarVec& v) {
  std::vector<Complex> sx, sy;
  forward(v[0], sx);
  forward(v[1], sy);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nmodes_); ++i) {
    if (k2m_[i] <= 0.0) continue;
    const Complex q = (kxm_[i] * sx[i] + kym_[i] * sy[i]) / k2m_[i];
    sx[i] -= kxm_[i] * q;
    sy[i] -= kym_[i] * q;
  }
  PlanarVec out(grid_);
  inverse(sx, out[0]);
  inverse(sy, out[1]);
  return out;
}

void PlanarWorkspace::dealias(PlanarField& f) {
  std::vector<Complex> spec;
  forward(f, spec);
  kernels::apply_multiplier(spec, mask_);
  inverse(spec, f);
}

PlanarField cutoff_chi(double eps, double alpha,
                       std::shared_ptr<const PlanarGrid> grid) {
  if (!(eps > 0.0) || !(alpha > 0.0))
    throw ConfigError("cutoff_chi requires eps > 0 and alpha > 0");
  const double r1 = std::pow(eps, -alpha);
  const double r2 = 2.0 * r1;
  if (r2 > 0.95 * grid->L) {
    std::ostringstream os;
    os << "cutoff radius 2*eps^-alpha = " << r2
       << " exceeds 0.95*L = " << 0.95 * grid->L
       << "; choose a larger L or a larger alpha";
    throw ConfigError(os.str());
  }
  PlanarField chi(grid);
  for (int j = 0; j < grid->Ny; ++j)
    for (int i = 0; i < grid->Nx; ++i) {
      const double s = std::hypot(grid->x[i], grid->y[j]);
      chi.at(i, j) = 1.0 - smoothstep5((s - r1) / (r2 - r1));
    }
  return chi;
}

}  // namespace slab
