#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "magspec/closedform.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/errors.hpp"
#include "magspec/reduction.hpp"

using namespace magspec;

TEST_CASE("family bookkeeping") {
  CHECK_THROWS_AS(build_family("nope", {}), UnknownFamily);
  CHECK_THROWS_AS(build_family("kepler_radial", {{"m", -1.0}}), InvalidQuantumNumber);
  CHECK_THROWS_AS(build_family("kepler_radial", {{"m", 0.5}}), InvalidQuantumNumber);
  CHECK_THROWS_AS(build_family("sphere_bundle_h", {{"B", 1.0}, {"m", 0.3}}),
                  InvalidQuantumNumber);

  ReducedFamily nil = build_family("nil", {{"B", 1.0}});
  CHECK_THROWS_AS(family_value(nil, Eigen::VectorXd::Zero(2)), ShapeMismatch);

  // to_lambda0 is what family_lambda0_at applies
  ReducedFamily sol = build_family("sol", {{"Bx", 1.0}, {"By", 0.0}});
  Eigen::VectorXd xi = Eigen::Vector2d(-1.0, 0.0);
  CHECK(family_lambda0_at(sol, xi) ==
        doctest::Approx(sol.to_lambda0(family_value(sol, xi))).epsilon(1e-15));
}

TEST_CASE("flat landau family is the closed ladder") {
  ReducedFamily fam = build_family("torus_landau", {{"lambda", 1.0}});
  ClosedFormSpectrum ref = landau_spectrum(Eigen::VectorXd::Constant(1, 1.0), 0);
  for (int k = 0; k < 4; ++k) {
    const double level = family_value(fam, Eigen::VectorXd(), k);
    CHECK(level == doctest::Approx(convert(ref.points(20.0)[size_t(k)],
                                           Convention::Double, Convention::Half))
                       .epsilon(1e-14));
  }
}

TEST_CASE("hyperbolic family minimum matches the explicit bottom") {
  for (double b : {0.3, 1.0}) {
    ReducedFamily fam = build_family("maass", {{"B", b}});
    CoverGroundState g = minimize_over_momenta(fam);
    CHECK(std::abs(g.value - maass_spectrum(b).lambda0) < 5e-3);
  }
}

TEST_CASE("cosphere fiber family at a fixed integer index") {
  // fiber m = 0 of field B carries no ladder; its bottom is (B^2 + 1/4)/2
  ReducedFamily fam = build_family("sphere_bundle_h", {{"B", 0.5}, {"m", 0.0}});
  CoverGroundState g = minimize_over_momenta(fam);
  CHECK(std::abs(g.value - 0.5 * (0.25 + 0.25)) < 5e-3);
}

TEST_CASE("sl2 family reproduces the piecewise bottom") {
  ReducedFamily fam = build_family("sl2_universal", {{"B", 2.0}});
  CoverGroundState g = minimize_over_momenta(fam);
  CHECK(std::abs(g.value - sl2_universal_lambda0(2.0)) < 5e-3);
}

TEST_CASE("heisenberg family: continuous and integer momentum") {
  for (double b : {0.2, 1.0, 3.0}) {
    ReducedFamily fam = build_family("nil", {{"B", b}});
    CoverGroundState uni = minimize_over_momenta(fam);
    CHECK(std::abs(uni.value - nil_universal_lambda0(b)) < 1e-9);

    CoverGroundState ab = abelian_cover_groundstate("nil", b);
    double brute = 0.5 * b * b;
    for (int m = -12; m <= 12; ++m)
      if (m != 0) brute = std::min(brute, nil_family_value(b, m, 0));
    CHECK(std::abs(ab.value - brute) < 1e-12);
    CHECK(ab.tail_margin >= 0.0);
  }
  CoverGroundState sb = abelian_cover_groundstate("sphere_bundle_h", 1.3);
  CHECK(std::abs(sb.value - sphere_bundle_h_lambda0(1.3)) < 1e-12);
  CHECK_THROWS_AS(abelian_cover_groundstate("sol", 1.0), UnknownFamily);
}

TEST_CASE("sol family crosses its one-arm closed form") {
  // the fiber at xi = (-1, 0) is the Morse well centered at z = 0
  ReducedFamily fam = build_family("sol", {{"Bx", 1.0}, {"By", 0.0}});
  CHECK(std::abs(family_lambda0_at(fam, Eigen::Vector2d(-1.0, 0.0)) - 0.375) < 5e-3);
  CHECK(std::abs(family_value(fam, Eigen::Vector2d(-1.0, 0.0)) -
                 sol_axis_ground(1.0)) < 5e-3);
}

TEST_CASE("radial coulomb family against the level table") {
  ReducedFamily fam = build_family("kepler_radial", {{"m", 1.0}, {"B", 0.0}});
  SpectrumResult s = solve_effective_1d(fam.effective(Eigen::VectorXd()), 3);
  for (int n = 0; n < 3; ++n) {
    const double exact = kepler_level(1, n, 0.0);
    CHECK(std::abs(s.eigenvalues[n] - exact) < 1e-3 * std::abs(exact));
  }
}

TEST_CASE("momentum scan refuses window-edge minima") {
  ReducedFamily fam;
  fam.name = "offcenter";
  fam.n_momenta = 1;
  fam.scan_lo = Eigen::VectorXd::Constant(1, -1.0);
  fam.scan_hi = Eigen::VectorXd::Constant(1, 1.0);
  fam.to_lambda0 = [](double v) { return v; };
  fam.closed_level = [](const Eigen::VectorXd& xi, int) {
    return (xi[0] - 10.0) * (xi[0] - 10.0);
  };
  CHECK_THROWS_AS(minimize_over_momenta(fam), ScanRangeExhausted);
}

TEST_CASE("monopole fiber is independent of the vertical momentum") {
  // a horizontal translation absorbs xi_t; keep z_lo above log(2 h_x) so the
  // well width exp(z) stays resolved, and keep the x walls several widths out
  AssembledOperator at0 = sol_monopole_fiber(1.0, 0.0, 80, 16, 10.0, -0.5, 1.0);
  AssembledOperator at4 = sol_monopole_fiber(1.0, 0.4, 80, 16, 10.0, -0.5, 1.0);
  AssembledOperator at7 = sol_monopole_fiber(1.0, 0.75, 80, 16, 10.0, -0.5, 1.0);
  LanczosOptions opt;
  opt.k = 1;
  opt.tol = 1e-8;
  const double l0 = lanczos_lowest(at0, opt).eigenvalues[0];
  const double l4 = lanczos_lowest(at4, opt).eigenvalues[0];
  const double l7 = lanczos_lowest(at7, opt).eigenvalues[0];
  CHECK(std::abs(l0 - l4) < 1e-6);
  // 0.75 = 3 h_x relabels the nodes exactly, up to wall tails
  CHECK(std::abs(l0 - l7) < 1e-6);

  // hyperbolic chart of the same fiber sits exactly 1/8 higher
  AssembledOperator hp = sol_monopole_halfplane(1.0, 80, 16, 10.0, -0.5, 1.0);
  const double lh = lanczos_lowest(hp, opt).eigenvalues[0];
  CHECK(std::abs(lh - (l0 + 0.125)) < 5e-3);
}
