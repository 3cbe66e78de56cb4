#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "slab/errors.hpp"
#include "slab/field.hpp"
#include "slab/grid.hpp"
#include "slab/presets.hpp"
#include "slab/rng.hpp"
#include "slab/spectral.hpp"

using namespace slab;

namespace {

SimParams small_params() {
  SimParams p;
  p.L = M_PI;
  p.Nx = 4;
  p.Ny = 4;
  p.Nz = 4;
  return p;
}

}  // namespace

TEST_SUITE("core-grid") {

TEST_CASE("uniform periodic nodes") {
  auto g = make_grid(small_params());
  CHECK(g->x[0] == doctest::Approx(-M_PI));
  CHECK(g->x[1] == doctest::Approx(-M_PI / 2));
  CHECK(g->x[2] == doctest::Approx(0.0));
  CHECK(g->x[3] == doctest::Approx(M_PI / 2));
  // vertical torus of measure exactly 2
  CHECK(g->z[0] == doctest::Approx(-1.0));
  CHECK(g->z[1] == doctest::Approx(-0.5));
  CHECK(g->z[2] == doctest::Approx(0.0));
  CHECK(g->z[3] == doctest::Approx(0.5));
  CHECK(g->dz * g->Nz == doctest::Approx(2.0));
  // kappa_k = pi k
  CHECK(g->kz[1] == doctest::Approx(M_PI));
  CHECK(g->kz[3] == doctest::Approx(-M_PI));
}

TEST_CASE("grid validation rejects odd or tiny sizes") {
  SimParams p = small_params();
  p.Nx = 3;
  CHECK_THROWS_AS(make_grid(p), ConfigError);
  p.Nx = 2;
  CHECK_THROWS_AS(make_grid(p), ConfigError);
  p = small_params();
  p.epsilon = -1.0;
  CHECK_THROWS_AS(make_grid(p), ConfigError);
}

TEST_CASE("transform round trip and exact representability of e^{i pi x3}") {
  SimParams p = small_params();
  p.Nx = 8;
  p.Ny = 8;
  p.Nz = 4;
  auto g = make_grid(p);
  SpectralWorkspace ws(g);

  // mode cos(pi x3) must round-trip exactly through the discrete transform
  ScalarField f(g, Parity::even);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i)
        f.at(i, j, k) = std::cos(M_PI * g->z[k]) + 0.5 * std::sin(g->x[i]);
  std::vector<Complex> spec;
  ws.forward(f, spec);
  ScalarField back(g, Parity::even);
  ws.inverse(spec, back);
  double err = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i)
    err = std::max(err, std::abs(f.v[i] - back.v[i]));
  CHECK(err <= 1e-12 * max_abs(f));
}

TEST_CASE("parity projection examples") {
  auto g = make_grid(small_params());
  ScalarField even_f(g, Parity::even), odd_f(g, Parity::odd);
  for (int k = 0; k < g->Nz; ++k)
    for (int j = 0; j < g->Ny; ++j)
      for (int i = 0; i < g->Nx; ++i) {
        const double c = std::cos(M_PI * g->z[k]);
        const double s = std::sin(M_PI * g->z[k]);
        even_f.at(i, j, k) = c + s;  // even part is cos
        odd_f.at(i, j, k) = c;       // odd part of an even function is 0
      }
  enforce_parity(even_f);
  enforce_parity(odd_f);
  for (int k = 0; k < g->Nz; ++k) {
    CHECK(even_f.at(1, 2, k) ==
          doctest::Approx(std::cos(M_PI * g->z[k])).epsilon(1e-14));
    CHECK(odd_f.at(1, 2, k) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("parity projection is an idempotent linear projection") {
  SimParams p = small_params();
  p.Nx = 8;
  p.Ny = 6;
  p.Nz = 8;
  auto g = make_grid(p);
  Rng rng(11);
  ScalarField f(g, Parity::odd);
  for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = rng.symmetric(i);
  ScalarField once = f;
  enforce_parity(once);
  ScalarField twice = once;
  enforce_parity(twice);
  for (std::size_t i = 0; i < f.v.size(); ++i)
    CHECK(once.v[i] == doctest::Approx(twice.v[i]).epsilon(1e-15));
  CHECK(parity_defect(once) <= 1e-14);

  // linearity: proj(a f + b h) = a proj(f) + b proj(h)
  ScalarField h(g, Parity::odd);
  for (std::size_t i = 0; i < h.v.size(); ++i) h.v[i] = rng.symmetric(9000 + i);
  ScalarField combo(g, Parity::odd);
  for (std::size_t i = 0; i < h.v.size(); ++i)
    combo.v[i] = 2.0 * f.v[i] - 0.5 * h.v[i];
  enforce_parity(combo);
  ScalarField hp = h;
  enforce_parity(hp);
  for (std::size_t i = 0; i < h.v.size(); ++i)
    CHECK(combo.v[i] ==
          doctest::Approx(2.0 * once.v[i] - 0.5 * hp.v[i]).epsilon(1e-13));

  // odd fields vanish on the symmetry planes x3 in {-1, 0} and have zero
  // vertical average: the discrete complete-slip condition
  for (int j = 0; j < g->Ny; ++j)
    for (int i = 0; i < g->Nx; ++i) {
      CHECK(once.at(i, j, 0) == 0.0);
      CHECK(once.at(i, j, g->Nz / 2) == 0.0);
      double avg = 0.0;
      for (int k = 0; k < g->Nz; ++k) avg += once.at(i, j, k);
      CHECK(std::abs(avg) <= 1e-13);
    }
}

TEST_CASE("field serialization round trip") {
  SimParams p = small_params();
  p.Nx = 6;
  p.Ny = 4;
  p.Nz = 4;
  auto g = make_grid(p);
  Rng rng(5);
  ScalarField f(g, Parity::odd);
  for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = rng.symmetric(i);

  const std::string path =
      (std::filesystem::temp_directory_path() / "slabf_test.bin").string();
  write_field(path, f);
  RawField r = read_field(path);
  CHECK(r.Nx == 6);
  CHECK(r.Ny == 4);
  CHECK(r.Nz == 4);
  CHECK(r.parity == Parity::odd);
  CHECK(r.v == f.v);
  std::filesystem::remove(path);
}

TEST_CASE("csv export writes one row per node") {
  auto g = make_grid(small_params());
  ScalarField f(g, Parity::even);
  const std::string path =
      (std::filesystem::temp_directory_path() / "slabf_test.csv").string();
  write_field_csv(path, f);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 4 * 4 * 4);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
