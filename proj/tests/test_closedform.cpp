#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "magspec/closedform.hpp"
#include "magspec/convention.hpp"
#include "magspec/errors.hpp"

using namespace magspec;
using std::numbers::pi;

TEST_CASE("landau ladder in both conventions") {
  Eigen::VectorXd one = Eigen::VectorXd::Constant(1, 1.0);
  ClosedFormSpectrum s = landau_spectrum(one, 0);
  CHECK(s.lambda0 == doctest::Approx(1.0));
  CHECK(s.lambda0_in(Convention::Half) == doctest::Approx(0.5));
  std::vector<double> pts = s.points(10.0);
  REQUIRE(pts.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(pts[size_t(k)] == doctest::Approx(2 * k + 1));

  // two-frequency ladder vs a brute-force double loop
  Eigen::VectorXd lam(2);
  lam << 1.0, std::sqrt(2.0);
  ClosedFormSpectrum d = landau_spectrum(lam, 0);
  std::vector<double> brute;
  for (int k1 = 0; k1 < 12; ++k1)
    for (int k2 = 0; k2 < 12; ++k2) {
      const double e = (2 * k1 + 1) + std::sqrt(2.0) * (2 * k2 + 1);
      if (e <= 15.0) brute.push_back(e);
    }
  std::sort(brute.begin(), brute.end());
  std::vector<double> got = d.points(15.0);
  REQUIRE(got.size() == brute.size());
  for (size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == doctest::Approx(brute[i]).epsilon(1e-12));

  // a field-free direction smears the ladder into a half line
  ClosedFormSpectrum free_dir = landau_spectrum(one, 1);
  CHECK(free_dir.threshold == doctest::Approx(1.0));
  CHECK(free_dir.lambda0 == doctest::Approx(1.0));
  CHECK(free_dir.points(10.0).empty());

  CHECK_THROWS_AS(landau_spectrum(Eigen::VectorXd::Constant(1, -1.0), 0), ConfigError);
}

TEST_CASE("hyperbolic plane spectrum against the ladder formula") {
  ClosedFormSpectrum s2 = maass_spectrum(2.0);
  CHECK(s2.threshold == doctest::Approx(2.125));
  std::vector<double> pts = s2.points(s2.threshold);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == doctest::Approx(1.0));
  CHECK(pts[1] == doctest::Approx(2.0));
  CHECK(s2.lambda0 == doctest::Approx(1.0));

  // weak field: no bound state, the bottom is the continuum edge
  ClosedFormSpectrum s03 = maass_spectrum(0.3);
  CHECK(s03.points(100.0).empty());
  CHECK(s03.lambda0 == doctest::Approx(0.5 * (0.09 + 0.25)));

  // brute force the ladder at a few fields
  for (double b : {0.7, 1.3, 2.6}) {
    std::vector<double> brute;
    for (int k = 0; k < b - 0.5; ++k)
      brute.push_back(0.5 * ((2 * k + 1) * b - k * (k + 1)));
    std::sort(brute.begin(), brute.end());
    std::vector<double> got = maass_spectrum(b).points(1e9);
    REQUIRE(got.size() == brute.size());
    for (size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(brute[i]).epsilon(1e-12));
  }
}

TEST_CASE("cosphere bundle bottom equals the fiber-wise minimum") {
  // independent enumeration: fiber m carries the ladder of field -m shifted
  // by (B+m)^2/2 and a continuum from ((B+m)^2 + m^2 + 1/4)/2
  auto brute = [](double b) {
    double best = std::numeric_limits<double>::infinity();
    for (int m = -10; m <= 10; ++m) {
      const double shift = 0.5 * (b + m) * (b + m);
      best = std::min(best, shift + 0.5 * (double(m) * m + 0.25));
      const double am = std::abs(m);
      for (int k = 0; k < am - 0.5; ++k)
        best = std::min(best, shift + 0.5 * ((2 * k + 1) * am - double(k) * (k + 1)));
    }
    return best;
  };
  for (int i = 0; i <= 300; ++i) {
    const double b = 0.01 * i;
    CHECK(sphere_bundle_h_lambda0(b) == doctest::Approx(brute(b)).epsilon(1e-12));
    CHECK(sphere_bundle_h_spectrum(b).lambda0 ==
          doctest::Approx(sphere_bundle_h_lambda0(b)).epsilon(1e-12));
  }
  // kink value at 7/8
  CHECK(sphere_bundle_h_lambda0(0.875) == doctest::Approx(65.0 / 128).epsilon(1e-15));
}

TEST_CASE("heisenberg spectra, integer and continuous center momentum") {
  for (double b : {0.2, 0.5, 1.0, 3.0}) {
    // integer momentum: enumerate branches
    ClosedFormSpectrum ab = nil_abelian_spectrum(b);
    double brute = 0.5 * b * b;
    for (int m = -12; m <= 12; ++m)
      if (m != 0) brute = std::min(brute, nil_family_value(b, m, 0));
    CHECK(ab.lambda0 == doctest::Approx(brute).epsilon(1e-12));
    CHECK(ab.threshold == doctest::Approx(0.5 * b * b));

    // continuous momentum: dense scan plus local refinement
    double scan = 0.5 * b * b;  // xi = 0 edge
    double best_xi = 0.0;
    const double r = (std::abs(b) + 2.0) / (2.0 * pi);
    for (int i = -4000; i <= 4000; ++i) {
      const double xi = r * i / 4000.0;
      const double v = nil_family_value(b, xi, 0);
      if (v < scan) {
        scan = v;
        best_xi = xi;
      }
    }
    for (int pass = 0; pass < 200; ++pass) {  // crude shrink
      const double step = r / 4000.0 * std::pow(0.95, pass);
      for (double xi : {best_xi - step, best_xi + step}) {
        const double v = nil_family_value(b, xi, 0);
        if (v < scan) {
          scan = v;
          best_xi = xi;
        }
      }
    }
    CHECK(nil_universal_lambda0(b) == doctest::Approx(scan).epsilon(1e-9));
  }
  CHECK_THROWS_AS(nil_family_value(1.0, 0.5, -1), InvalidQuantumNumber);
}

TEST_CASE("sol one-arm well and its lambda0 map") {
  CHECK(sol_axis_ground(0.3) == 0.0);
  CHECK(sol_axis_ground(0.5) == doctest::Approx(0.0));
  CHECK(sol_axis_ground(1.0) == doctest::Approx(-0.25));
  CHECK(sol_axis_ground(-1.0) == doctest::Approx(-0.25));  // parity in b
  CHECK(sol_axis_lambda0(1.0) == doctest::Approx(0.375));
  CHECK(sol_axis_lambda0(0.4) == doctest::Approx(0.08));  // no well: b^2/2
}

TEST_CASE("radial coulomb levels") {
  CHECK(kepler_level(1, 0, 0.0) == doctest::Approx(-2.0 / 9.0));
  CHECK(kepler_level(2, 1, 0.1) == doctest::Approx(-0.5 / 12.25 + 0.2));
  CHECK(bohr_level(0) == doctest::Approx(-2.0));
  CHECK(bohr_level(1) == doctest::Approx(-2.0 / 9.0));
  CHECK_THROWS_AS(kepler_level(0, 0, 0.0), InvalidQuantumNumber);
  CHECK_THROWS_AS(kepler_level(1, -1, 0.0), InvalidQuantumNumber);
  CHECK_THROWS_AS(bohr_level(-1), InvalidQuantumNumber);
}

TEST_CASE("circle flux law and its lattice version") {
  CHECK(circle_flux_lambda0(0.2) == doctest::Approx(2.0 * pi * pi * 0.04));
  CHECK(circle_flux_lambda0(1.3) == doctest::Approx(2.0 * pi * pi * 0.09));
  CHECK(circle_flux_lambda0(-0.4) == doctest::Approx(2.0 * pi * pi * 0.16));
  CHECK(circle_flux_lambda0(1.0) == doctest::Approx(0.0));

  // lattice value converges to the continuum one from below
  const double cont = circle_flux_lambda0(0.37);
  double prev = 0.0;
  for (int n : {16, 32, 64, 128, 256}) {
    const double disc = circle_flux_lambda0_discrete(0.37, n);
    CHECK(disc <= cont + 1e-15);
    CHECK(disc >= prev);
    prev = disc;
  }
  CHECK(std::abs(circle_flux_lambda0_discrete(0.37, 256) - cont) < 1e-4);
}

TEST_CASE("sl2 bottom is continuous across the regime change") {
  const double eps = 1e-9;
  CHECK(std::abs(sl2_universal_lambda0(1.0 - eps) - sl2_universal_lambda0(1.0 + eps)) < 1e-8);
  CHECK(sl2_universal_lambda0(0.0) == doctest::Approx(0.125));
  CHECK(sl2_universal_lambda0(2.0) == doctest::Approx(0.875));
}
