#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "slab/field.hpp"
#include "slab/grid.hpp"

namespace slab {

using Complex = std::complex<double>;

/// Fourier-side operators on the slab grid. A workspace owns transform plans
/// and scratch buffers: use one workspace per thread of execution and do not
/// re-enter it. All derivative multipliers zero the Nyquist wavenumbers; the
/// 2/3-rule mask is applied by dealias().
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(std::shared_ptr<const SlabGrid> grid);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const SlabGrid& grid() const { return *grid_; }
  std::shared_ptr<const SlabGrid> grid_ptr() const { return grid_; }
  std::size_t nmodes() const { return nmodes_; }

  // normalized round trip: inverse(forward(f)) == f
  void forward(const ScalarField& f, std::vector<Complex>& out);
  void inverse(const std::vector<Complex>& in, ScalarField& out);

  // per-mode wavenumber tables (derivative convention: Nyquist -> 0)
  const std::vector<double>& kx() const { return kxm_; }
  const std::vector<double>& ky() const { return kym_; }
  const std::vector<double>& kz() const { return kzm_; }
  const std::vector<double>& k2() const { return k2m_; }
  const std::vector<double>& dealias_mask() const { return mask_; }

  VectorField grad(const ScalarField& f);
  ScalarField deriv(const ScalarField& f, int axis);
  ScalarField divergence(const VectorField& v);
  ScalarField laplacian(const ScalarField& f);
  /// Zero-mean solution of Laplace(u) = f (the f mean mode is dropped).
  ScalarField inverse_laplacian(const ScalarField& f);

  /// L2-orthogonal projection onto solenoidal fields; the zero mode passes
  /// through unchanged.
  VectorField helmholtz(const VectorField& v);

  /// Mean over the vertical torus (measure |T1| = 2): the kappa=0 mode.
  PlanarField vertical_average(const ScalarField& f);
  /// I[v]: unique zero-vertical-mean field with d3 I[v] = v - <v>.
  ScalarField vertical_primitive(const ScalarField& f);

  /// Gaussian mollifier exp(-delta^2 |k|^2 / 2); unit mass, commutes with
  /// spectral derivatives, preserves parity and means.
  void mollify(ScalarField& f, double delta);

  void dealias(ScalarField& f);
  void dealias(VectorField& f);

 private:
  void apply_multiplier_inplace(ScalarField& f, const std::vector<double>& m);

  std::shared_ptr<const SlabGrid> grid_;
  std::size_t nmodes_ = 0;
  std::vector<double> kxm_, kym_, kzm_, k2m_, mask_;
  double* rbuf_ = nullptr;
  Complex* cbuf_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

/// 2D analogue for horizontal fields.
class PlanarWorkspace {
 public:
  explicit PlanarWorkspace(std::shared_ptr<const PlanarGrid> grid);
  ~PlanarWorkspace();
  PlanarWorkspace(const PlanarWorkspace&) = delete;
  PlanarWorkspace& operator=(const PlanarWorkspace&) = delete;

  const PlanarGrid& grid() const { return *grid_; }
  std::shared_ptr<const PlanarGrid> grid_ptr() const { return grid_; }
  std::size_t nmodes() const { return nmodes_; }

  void forward(const PlanarField& f, std::vector<Complex>& out);
  void inverse(const std::vector<Complex>& in, PlanarField& out);

  const std::vector<double>& kx() const { return kxm_; }
  const std::vector<double>& ky() const { return kym_; }
  const std::vector<double>& k2() const { return k2m_; }
  const std::vector<double>& dealias_mask() const { return mask_; }

  PlanarVec grad(const PlanarField& f);
  PlanarField deriv(const PlanarField& f, int axis);
  PlanarField divergence(const PlanarVec& v);
  PlanarField curl(const PlanarVec& v);  // d1 v2 - d2 v1
  PlanarField laplacian(const PlanarField& f);
  PlanarField inverse_laplacian(const PlanarField& f);  // zero-mean
  /// 2D Leray projection onto divergence-free fields.
  PlanarVec leray(const PlanarVec& v);
  void dealias(PlanarField& f);

 private:
  std::shared_ptr<const PlanarGrid> grid_;
  std::size_t nmodes_ = 0;
  std::vector<double> kxm_, kym_, k2m_, mask_;
  double* rbuf_ = nullptr;
  Complex* cbuf_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

/// Smooth radial cut-off: 1 on |x_h| <= eps^-alpha, 0 on |x_h| >= 2 eps^-alpha,
/// |grad chi| <= 2 eps^alpha (quintic smoothstep ramp). Throws ConfigError when
/// the outer radius 2 eps^-alpha does not fit inside 0.95 L.
PlanarField cutoff_chi(double eps, double alpha,
                       std::shared_ptr<const PlanarGrid> grid);

}  // namespace slab
