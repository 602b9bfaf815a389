#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "magspec/assembly.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/errors.hpp"
#include "magspec/geometry.hpp"
#include "magspec/mane.hpp"

using namespace magspec;
using std::numbers::pi;

namespace {

VectorPotential shifted_sine(const Grid& grid, double c) {
  return sample_vector_potential(grid, [c](const Eigen::VectorXd& x) {
    return Eigen::VectorXd::Constant(1, c + std::sin(2.0 * pi * x[0]));
  });
}

double phi_max(const Grid& grid, const VectorPotential& a, const ScalarPotential& v) {
  double worst = -std::numeric_limits<double>::infinity();
  for (long i = 0; i < grid.size(); ++i)
    worst = std::max(worst, 0.5 * a.a.row(i).squaredNorm() + v.v[i]);
  return worst;
}

}  // namespace

TEST_CASE("pinned critical value of the shifted sine form") {
  Grid grid = make_grid(torus_geometry({1.0}), 256);
  VectorPotential alpha = shifted_sine(grid, 0.7);
  ScalarPotential v = zero_scalar(grid);
  MCVResult res = critical_value(grid, alpha, v);

  // the sine summand is exactly a discrete differential (equispaced full
  // period sums to zero), so only the constant survives the gauge
  CHECK(res.lower_bound == doctest::Approx(0.5 * 0.49).epsilon(1e-10));
  CHECK(std::abs(res.value - 0.245) < 1e-3);
  CHECK(res.gap >= 0.0);
  CHECK(res.gap < 1e-3);
  CHECK(res.iterations > 0);

  // reported value is the exact node maximum at the reported gauge
  CHECK(res.value == doctest::Approx(phi_max(grid, res.shifted, v)).epsilon(1e-12));
  VectorPotential re = gauge_shift(grid, alpha, res.f);
  CHECK((re.a - res.shifted.a).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("critical value ignores gauge moves of the input") {
  Grid grid = make_grid(torus_geometry({1.0}), 64);
  VectorPotential alpha = shifted_sine(grid, 0.7);
  ScalarPotential v = zero_scalar(grid);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  GaugeFunction f(grid.size());
  for (long i = 0; i < grid.size(); ++i) f[i] = u(rng);

  const double base = critical_value(grid, alpha, v).value;
  const double moved = critical_value(grid, gauge_shift(grid, alpha, f), v).value;
  CHECK(std::abs(base - moved) < 1e-3);
}

TEST_CASE("strict value minimizes over the cohomology class") {
  Grid grid = make_grid(torus_geometry({1.0}), 64);
  VectorPotential alpha = shifted_sine(grid, 0.7);
  MCVResult strict = strict_critical_value(grid, alpha, zero_scalar(grid));
  CHECK(std::abs(strict.value) < 1e-3);  // the constant is removable

  // without periodic axes there is nothing to remove
  Grid box = make_grid(plane_box_geometry(Eigen::VectorXd::Zero(1),
                                          Eigen::VectorXd::Ones(1)),
                       16);
  CHECK_THROWS_AS(critical_value(box, zero_potential(box), zero_scalar(box)),
                  NotTorus);
}

TEST_CASE("ground level sits below the critical value on random data") {
  Grid grid = make_grid(torus_geometry({1.0, 1.0}), Eigen::Vector2i(10, 8));
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int run = 0; run < 3; ++run) {
    VectorPotential alpha{Eigen::MatrixXd(grid.size(), 2)};
    ScalarPotential v{Eigen::VectorXd(grid.size()), 0.0};
    for (long i = 0; i < grid.size(); ++i) {
      alpha.a(i, 0) = u(rng);
      alpha.a(i, 1) = u(rng);
      v.v[i] = std::abs(u(rng));
    }
    v.min_value = v.v.minCoeff();
    Lambda0CCheck chk = verify_lambda0_le_c(grid, alpha, v);
    CHECK(chk.slack >= 0.0);
    CHECK(chk.lambda0 <= chk.c + 1e-6);
  }
}

TEST_CASE("uniform-field reference values") {
  CHECK(mane_reference("maass", 2.0) == doctest::Approx(2.0));
  CHECK(mane_reference("hyperbolic", 1.0) == doctest::Approx(0.5));
  CHECK(mane_reference("sphere_bundle_h", 1.0) == doctest::Approx(0.5));
  CHECK(mane_reference("sl2_universal", 2.0) == doctest::Approx(1.0));
  CHECK(mane_reference("nil", 3.0) == doctest::Approx(4.5));
  CHECK(mane_reference("sol", 1.0) == doctest::Approx(0.5));
  CHECK(mane_reference("torus_exact", 5.0) == doctest::Approx(0.0));
  CHECK(std::isinf(mane_reference("torus_monopole", 1.0)));
  CHECK_THROWS_AS(mane_reference("nowhere", 1.0), UnknownGeometry);
}

TEST_CASE("weak-field curvature of the ground level matches the class norm") {
  // lambda0(B alpha) ~ B^2 ||alpha_cc||^2 / (2 vol) for small B, i.e. the
  // second derivative at B = 0 is twice the critical value of alpha
  Grid grid = make_grid(torus_geometry({1.0}), 64);
  VectorPotential alpha = shifted_sine(grid, 0.7);
  ScalarPotential v = zero_scalar(grid);

  auto lam0 = [&](double b) {
    VectorPotential scaled{b * alpha.a};
    return dense_spectrum(assemble(grid, scaled, v), 1).eigenvalues[0];
  };
  const double hb = 0.05;
  const double d2 = (lam0(hb) - 2.0 * lam0(0.0) + lam0(-hb)) / (hb * hb);

  HodgeSplit split = hodge_decompose_torus(grid, alpha);
  const double vol = grid.size() * grid.cell_volume();
  const double target = (form_norm2(grid, split.harmonic_in_kernel) +
                         form_norm2(grid, split.harmonic_perp) +
                         form_norm2(grid, split.coexact)) /
                        vol;
  CHECK(std::abs(d2 - target) < 2e-2 * target);
  CHECK(std::abs(0.5 * d2 - 0.245) < 5e-3);
}
