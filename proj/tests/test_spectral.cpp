#include <doctest.h>

#include <cmath>

#include "slab/errors.hpp"
#include "slab/field.hpp"
#include "slab/presets.hpp"
#include "slab/rng.hpp"
#include "slab/spectral.hpp"

using namespace slab;

namespace {

SimParams ops_params() {
  SimParams p;
  p.L = M_PI;
  p.Nx = 16;
  p.Ny = 16;
  p.Nz = 8;
  return p;
}

double linf_diff(const ScalarField& a, const ScalarField& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    e = std::max(e, std::abs(a.v[i] - b.v[i]));
  return e;
}

double inner(const VectorField& a, const VectorField& b) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a[c].v.size(); ++i) s += a[c].v[i] * b[c].v[i];
  return s * a.grid()->cell_volume();
}

}  // namespace

TEST_SUITE("spectral-ops") {

TEST_CASE("gradient of single modes") {
  auto g = make_grid(ops_params());
  SpectralWorkspace ws(g);

  ScalarField f(g, Parity::even);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) f.at(i, j, k) = std::sin(2.0 * g->x[i]);
  VectorField gr = ws.grad(f);
  double err = 0.0;
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) {
        err = std::max(err, std::abs(gr[0].at(i, j, k) -
                                     2.0 * std::cos(2.0 * g->x[i])));
        err = std::max(err, std::abs(gr[1].at(i, j, k)));
        err = std::max(err, std::abs(gr[2].at(i, j, k)));
      }
  CHECK(err <= 1e-12);

  // constant -> zero gradient
  ScalarField c(g, Parity::even);
  for (auto& v : c.v) v = 3.7;
  VectorField gc = ws.grad(c);
  for (int a = 0; a < 3; ++a) CHECK(max_abs(gc[a]) <= 1e-13);

  // cos(pi x3) -> (0, 0, -pi sin(pi x3)), parity flips to odd
  ScalarField h(g, Parity::even);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) h.at(i, j, k) = std::cos(M_PI * g->z[k]);
  VectorField gh = ws.grad(h);
  CHECK(gh[2].parity == Parity::odd);
  double err3 = 0.0;
  for (int k = 0; k < g->Nz; ++k)
    err3 = std::max(err3, std::abs(gh[2].at(3, 2, k) +
                                   M_PI * std::sin(M_PI * g->z[k])));
  CHECK(err3 <= 1e-12);
}

TEST_CASE("helmholtz projection: gradients annihilated, solenoidal fixed") {
  auto g = make_grid(ops_params());
  SpectralWorkspace ws(g);

  // v = grad(phi), phi = sin(x) cos(pi x3) -> H[v] = 0
  ScalarField phi(g, Parity::even);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i)
        phi.at(i, j, k) = std::sin(g->x[i]) * std::cos(M_PI * g->z[k]);
  VectorField v = ws.grad(phi);
  VectorField Hv = ws.helmholtz(v);
  for (int a = 0; a < 3; ++a) CHECK(max_abs(Hv[a]) <= 1e-12);

  // divergence-free horizontal field is a fixed point
  VectorField w(g);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) {
        w[0].at(i, j, k) = -std::sin(g->y[j]);
        w[1].at(i, j, k) = std::sin(g->x[i]);
      }
  VectorField Hw = ws.helmholtz(w);
  for (int a = 0; a < 3; ++a) CHECK(linf_diff(Hw[a], w[a]) <= 1e-12);
}

TEST_CASE("helmholtz: idempotent orthogonal decomposition, div H = 0") {
  SimParams p = ops_params();
  auto g = make_grid(p);
  SpectralWorkspace ws(g);
  Rng rng(21);

  for (int cse = 0; cse < 5; ++cse) {
    VectorField v(g);
    for (int a = 0; a < 3; ++a) {
      v[a] = random_band_limited(g, ws, rng.stream(3 * cse + a), 0.6,
                                 a == 2 ? Parity::odd : Parity::even);
    }
    VectorField H = ws.helmholtz(v);
    VectorField HH = ws.helmholtz(H);
    VectorField perp(g);
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < v[a].v.size(); ++i)
        perp[a].v[i] = v[a].v[i] - H[a].v[i];

    double vnorm = l2_norm(v);
    // idempotence
    double drift = 0.0;
    for (int a = 0; a < 3; ++a) drift = std::max(drift, linf_diff(HH[a], H[a]));
    CHECK(drift <= 1e-10 * vnorm);
    // orthogonality
    CHECK(std::abs(inner(H, perp)) <= 1e-10 * vnorm * vnorm);
    // solenoidality
    ScalarField div = ws.divergence(H);
    CHECK(max_abs(div) <= 1e-10 * vnorm);
    // parity class preserved
    for (int a = 0; a < 3; ++a) CHECK(parity_defect(H[a]) <= 1e-12);
    // decomposition reconstructs v
    VectorField rec(g);
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < v[a].v.size(); ++i)
        rec[a].v[i] = H[a].v[i] + perp[a].v[i];
    for (int a = 0; a < 3; ++a) CHECK(linf_diff(rec[a], v[a]) <= 1e-12);
  }
}

TEST_CASE("helmholtz passes the zero mode through") {
  auto g = make_grid(ops_params());
  SpectralWorkspace ws(g);
  VectorField v(g);
  for (auto& x : v[0].v) x = 1.5;
  for (auto& x : v[1].v) x = -0.5;
  VectorField H = ws.helmholtz(v);
  CHECK(H[0].v[7] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(H[1].v[7] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("vertical average examples") {
  auto g = make_grid(ops_params());
  SpectralWorkspace ws(g);
  ScalarField f(g, Parity::even);

  for (auto& v : f.v) v = 2.5;
  PlanarField a = ws.vertical_average(f);
  CHECK(a.at(3, 3) == doctest::Approx(2.5));

  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) f.at(i, j, k) = std::sin(M_PI * g->z[k]);
  a = ws.vertical_average(f);
  CHECK(max_abs(a) <= 1e-14);

  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i)
        f.at(i, j, k) =
            std::cos(g->x[i]) * (1.0 + std::cos(M_PI * g->z[k]));
  a = ws.vertical_average(f);
  double err = 0.0;
  for (int j = 0; j < g->Ny; ++j)
    for (int i = 0; i < g->Nx; ++i)
      err = std::max(err, std::abs(a.at(i, j) - std::cos(g->x[i])));
  CHECK(err <= 1e-13);
}

TEST_CASE("vertical primitive: defining identities") {
  auto g = make_grid(ops_params());
  SpectralWorkspace ws(g);

  // cos(pi x3) -> sin(pi x3)/pi
  ScalarField f(g, Parity::even);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) f.at(i, j, k) = std::cos(M_PI * g->z[k]);
  ScalarField I = ws.vertical_primitive(f);
  CHECK(I.parity == Parity::odd);
  double err = 0.0;
  for (int k = 0; k < g->Nz; ++k)
    err = std::max(err, std::abs(I.at(2, 2, k) -
                                 std::sin(M_PI * g->z[k]) / M_PI));
  CHECK(err <= 1e-13);

  // constant -> 0
  ScalarField c(g, Parity::even);
  for (auto& v : c.v) v = 4.0;
  CHECK(max_abs(ws.vertical_primitive(c)) <= 1e-14);

  // any band-limited v: <I[v]> = 0 and d3 I[v] + <v> = v
  Rng rng(31);
  ScalarField v = random_band_limited(g, ws, rng, 0.6, Parity::even);
  ScalarField Iv = ws.vertical_primitive(v);
  CHECK(max_abs(ws.vertical_average(Iv)) <= 1e-12);
  ScalarField d3 = ws.deriv(Iv, 2);
  PlanarField avg = ws.vertical_average(v);
  double id_err = 0.0;
  const std::size_t plane = static_cast<std::size_t>(g->Nx) * g->Ny;
  for (int k = 0; k < g->Nz; ++k)
    for (std::size_t p = 0; p < plane; ++p)
      id_err = std::max(id_err, std::abs(d3.v[plane * k + p] + avg.v[p] -
                                         v.v[plane * k + p]));
  CHECK(id_err <= 1e-10);
}

TEST_CASE("mollifier: unit mass, multiplier amplitude, commutation") {
  auto g = make_grid(ops_params());
  SpectralWorkspace ws(g);

  ScalarField c(g, Parity::even);
  for (auto& v : c.v) v = 1.25;
  ScalarField cm = c;
  ws.mollify(cm, 0.3);
  CHECK(linf_diff(cm, c) <= 1e-13);

  // single mode sin(2x): amplitude shrinks by exp(-delta^2 |k|^2/2)
  ScalarField f(g, Parity::even);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) f.at(i, j, k) = std::sin(2.0 * g->x[i]);
  ScalarField fm = f;
  const double delta = 0.2;
  ws.mollify(fm, delta);
  const double expected = std::exp(-delta * delta * 4.0 / 2.0);
  CHECK(fm.at(2, 0, 0) == doctest::Approx(expected * f.at(2, 0, 0))
                              .epsilon(1e-12));

  // commutes with derivatives to round-off
  Rng rng(41);
  ScalarField v = random_band_limited(g, ws, rng, 0.6, Parity::even);
  ScalarField a = v;
  ws.mollify(a, 0.15);
  a = ws.deriv(a, 0);
  ScalarField b = ws.deriv(v, 0);
  ws.mollify(b, 0.15);
  CHECK(linf_diff(a, b) <= 1e-11);

  // delta -> 0: multiplier tends to 1 on band-limited data
  ScalarField tiny = v;
  ws.mollify(tiny, 1e-6);
  CHECK(linf_diff(tiny, v) <= 1e-9);
}

TEST_CASE("cutoff family") {
  auto g = make_planar_grid(64, 64, 40.0);
  const double eps = 0.1, alpha = 1.0;  // radii 10 and 20 fit inside 38
  PlanarField chi = cutoff_chi(eps, alpha, g);
  const double r1 = std::pow(eps, -alpha);
  for (int j = 0; j < g->Ny; ++j)
    for (int i = 0; i < g->Nx; ++i) {
      const double s = std::hypot(g->x[i], g->y[j]);
      if (s <= 0.5 * r1) CHECK(chi.at(i, j) == doctest::Approx(1.0));
      if (s >= 3.0 * r1) CHECK(chi.at(i, j) == doctest::Approx(0.0));
      CHECK(chi.at(i, j) >= 0.0);
      CHECK(chi.at(i, j) <= 1.0);
    }
  // |grad chi| <= 2 eps^alpha plus discretization slack, by finite differences
  double gmax = 0.0;
  for (int j = 0; j < g->Ny; ++j)
    for (int i = 0; i + 1 < g->Nx; ++i)
      gmax = std::max(gmax,
                      std::abs(chi.at(i + 1, j) - chi.at(i, j)) / g->dx);
  CHECK(gmax <= 2.0 * std::pow(eps, alpha) * 1.05);

  // radius exceeding the box is a configuration error
  auto small = make_planar_grid(16, 16, 10.0);
  CHECK_THROWS_AS(cutoff_chi(0.1, 1.0, small), ConfigError);
}

}  // TEST_SUITE
