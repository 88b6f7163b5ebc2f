#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cgl/state.hpp"
#include "helpers.hpp"

using namespace cgl;
using Catch::Approx;

namespace {
const double s4p = std::sqrt(kFourPi);
}

TEST_CASE("prim_to_cons on the Brio-Wu left state") {
  PrimState w{1, 0, 0, 0, 1, 1, s4p, 0};
  GlobalField g{0.75 * s4p};
  const ConsState u = prim_to_cons(w, g);
  CHECK(u.E == Approx(2.28125).epsilon(1e-14));
  CHECK(u.dp == 0.0);
  CHECK(u.rho == 1.0);
}

TEST_CASE("kinetic term enters the energy exactly") {
  PrimState w{2, 1, 0, 0, 1, 1, 1, 0};
  GlobalField g{1};
  PrimState w0 = w;
  w0.ux = 0.0;
  CHECK(prim_to_cons(w, g).E - prim_to_cons(w0, g).E == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("prim/cons round trip is the identity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int it = 0; it < 1000; ++it) {
    GlobalField g{-3.0 + 6.0 * U(rng)};
    PrimState w{0.05 + 3.0 * U(rng), -2 + 4 * U(rng), -2 + 4 * U(rng), -2 + 4 * U(rng),
                0.02 + 3.0 * U(rng), 0.02 + 3.0 * U(rng), -3 + 6 * U(rng), -3 + 6 * U(rng)};
    const PrimState w2 = cons_to_prim(prim_to_cons(w, g), g);
    const Vec8 a = cgltest::prim_vec(w), b = cgltest::prim_vec(w2);
    for (int c = 0; c < 8; ++c)
      CHECK(b[c] == Approx(a[c]).epsilon(1e-13).margin(1e-13));
  }
}

TEST_CASE("cons_to_prim rejects states below the magnetic+kinetic floor") {
  GlobalField g{1};
  ConsState u;
  u.rho = 1; u.mx = 1; u.By = 1; u.Bz = 0; u.dp = 0;
  u.E = 0.5 + 2.0 / (2 * kFourPi) - 0.1;  // below kinetic + magnetic
  CHECK_THROWS_AS(cons_to_prim(u, g), NonPhysical);
  u.rho = -1.0;
  CHECK_THROWS_AS(cons_to_prim(u, g), NonPhysical);
}

TEST_CASE("pressure split from dp and p") {
  GlobalField g{1};
  PrimState w{1, 0, 0, 0, 1.2, 0.9, 0.5, 0};  // p = 1, dp = 0.3
  const ConsState u = prim_to_cons(w, g);
  CHECK(u.dp == Approx(0.3).epsilon(1e-14));
  const PrimState w2 = cons_to_prim(u, g);
  CHECK(w2.p_par == Approx(1.2).epsilon(1e-14));
  CHECK(w2.p_perp == Approx(0.9).epsilon(1e-14));
}

TEST_CASE("flux on the Brio-Wu left state") {
  PrimState w{1, 0, 0, 0, 1, 1, s4p, 0};
  GlobalField g{0.75 * s4p};
  const Vec8 f = flux(w, g);
  CHECK(f[1] == Approx(1.21875).epsilon(1e-14));
  // u = 0: mass, anisotropy and induction fluxes vanish
  CHECK(f[0] == 0.0);
  CHECK(f[4] == 0.0);
  CHECK(f[6] == 0.0);
  CHECK(f[7] == 0.0);
}

TEST_CASE("induction flux example") {
  PrimState w{1, 1, 0, 0, 1, 1, s4p, 0};
  GlobalField g{0.75 * s4p};
  CHECK(flux(w, g)[6] == Approx(s4p).epsilon(1e-14));
}

TEST_CASE("flux requires a nonzero field") {
  PrimState w{1, 0, 0, 0, 1, 1, 0, 0};
  GlobalField g{0};
  CHECK_THROWS_AS(flux(w, g), DegenerateField);
}

TEST_CASE("noncons matrix structure") {
  {
    PrimState w{1, 0, 0, 0, 1, 1, 0, 0};
    GlobalField g{1};
    const Mat8 c = noncons_matrix(w, g);
    CHECK(c(4, 0) == 0.0);
    CHECK(c(4, 1) == Approx(2.0).epsilon(1e-14));
    CHECK(c(4, 2) == 0.0);
    CHECK(c(4, 3) == 0.0);
  }
  std::mt19937 rng(11);
  GlobalField g;
  for (int it = 0; it < 50; ++it) {
    const PrimState w = cgltest::random_omega_state(rng, g);
    const Mat8 c = noncons_matrix(w, g);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (i != 4 || j >= 4) CHECK(c(i, j) == 0.0);
  }
}

TEST_CASE("noncons row reproduces the red terms on a smooth profile") {
  // row . dU/dx must equal (2 p_par + p_perp) bx (b . du/dx) - p_perp dux/dx
  GlobalField g{0.8};
  auto wat = [&](double x) {
    PrimState w;
    w.rho = 2.0 + 0.3 * std::sin(x);
    w.ux = 0.5 * std::cos(1.3 * x);
    w.uy = 0.2 * std::sin(0.7 * x);
    w.uz = -0.4 * std::cos(0.4 * x);
    w.p_par = 1.1 + 0.2 * std::sin(0.9 * x);
    w.p_perp = 0.9 + 0.1 * std::cos(1.7 * x);
    w.By = 1.0 + 0.5 * std::sin(0.6 * x);
    w.Bz = -0.7 + 0.2 * std::cos(1.1 * x);
    return w;
  };
  const double x0 = 0.37, h = 1e-6;
  const PrimState w = wat(x0);
  const Vec8 up = prim_to_cons(wat(x0 + h), g).to_vec();
  const Vec8 um = prim_to_cons(wat(x0 - h), g).to_vec();
  const Vec8 du = (1.0 / (2.0 * h)) * (up - um);
  const double row_val = noncons_row(w, g).apply(du);

  const double B = std::sqrt(bsq(w, g));
  const double bx = g.Bx / B, by = w.By / B, bz = w.Bz / B;
  auto u_of = [&](double x) {
    const PrimState ww = wat(x);
    return std::array<double, 3>{ww.ux, ww.uy, ww.uz};
  };
  const auto uu_p = u_of(x0 + h), uu_m = u_of(x0 - h);
  const double duxdx = (uu_p[0] - uu_m[0]) / (2 * h);
  const double bdotdu = bx * duxdx + by * (uu_p[1] - uu_m[1]) / (2 * h) +
                        bz * (uu_p[2] - uu_m[2]) / (2 * h);
  const double expect = (2 * w.p_par + w.p_perp) * bx * bdotdu - w.p_perp * duxdx;
  CHECK(row_val == Approx(expect).epsilon(1e-6));
}

TEST_CASE("relaxation source") {
  ConsState u;
  u.dp = 0.0;
  CHECK(source(u, 1e-8) == Vec8{});
  u.dp = 0.5;
  CHECK(source(u, 1e-8)[4] == Approx(-5e7).epsilon(1e-14));
  CHECK(source(u, std::nullopt) == Vec8{});
}

TEST_CASE("omega classification") {
  GlobalField g{s4p};
  PrimState w{1, 0, 0, 0, 1, 1, 0, 0};  // |B|^2 = 4 pi
  const OmegaClass oc = classify_omega(w, g);
  CHECK(oc.pm == Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(oc.pM == Approx(2.0).epsilon(1e-14));
  CHECK(oc.region == OmegaRegion::RegionIII);

  w.p_par = 3.0;
  CHECK(classify_omega(w, g).region == OmegaRegion::Outside);

  w.p_par = oc.pm;  // closed interval boundary
  CHECK(classify_omega(w, g).region == OmegaRegion::RegionI);
}

TEST_CASE("region ordering matches computed speeds") {
  std::mt19937 rng(23);
  GlobalField g;
  for (int it = 0; it < 400; ++it) {
    const PrimState w = cgltest::random_omega_state(rng, g);
    const OmegaClass oc = classify_omega(w, g);
    REQUIRE(oc.region != OmegaRegion::Outside);
    const WaveSpeeds s = wave_speeds(w, g);
    const double tol = 1e-10 * std::max(1.0, s.cf);
    if (oc.slow_below_alfven) {
      CHECK(s.cs <= s.ca + tol);
      CHECK(s.ca <= s.cf + tol);
    } else {
      CHECK(s.ca <= s.cs + tol);
      CHECK(s.cs <= s.cf + tol);
    }
  }
}
