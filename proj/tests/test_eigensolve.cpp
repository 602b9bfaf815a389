#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "magspec/assembly.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/errors.hpp"
#include "magspec/geometry.hpp"

using namespace magspec;
using std::numbers::pi;

namespace {

AssembledOperator circle_op(int n, double alpha_const, double v_const) {
  Grid grid = make_grid(torus_geometry({1.0}), n);
  VectorPotential a = sample_vector_potential(grid, [alpha_const](const Eigen::VectorXd&) {
    return Eigen::VectorXd::Constant(1, alpha_const);
  });
  ScalarPotential v = sample_scalar_potential(
      grid, [v_const](const Eigen::VectorXd& x) { return v_const * (1.0 + std::sin(2.0 * pi * x[0])); });
  v.min_value = 0.0;
  return assemble(grid, a, v);
}

}  // namespace

TEST_CASE("tridiagonal bisection matches the dense eigensolver") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const int n = 200;
  Eigen::VectorXd diag(n), off(n - 1);
  for (int i = 0; i < n; ++i) diag[i] = u(rng);
  for (int i = 0; i + 1 < n; ++i) off[i] = u(rng);

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  t.diagonal() = diag;
  t.diagonal(1) = off;
  t.diagonal(-1) = off;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);

  Eigen::VectorXd lo = symmetric_tridiagonal_lowest(diag, off, 6);
  for (int i = 0; i < 6; ++i)
    CHECK(lo[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-12));
}

TEST_CASE("dense solver on an explicit hermitian matrix") {
  std::mt19937 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = 30;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
  m = (m + m.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  SpectrumResult s = dense_spectrum(m, 7, true);
  REQUIRE(s.eigenvalues.size() == 7);
  for (int i = 0; i < 7; ++i) {
    CHECK(s.eigenvalues[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-12));
    CHECK(s.residuals[i] < 1e-11 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()));
  }
  CHECK(dense_spectrum(m).eigenvalues.size() == n);  // k = -1 means all
}

TEST_CASE("dense solver refuses oversized operators") {
  Grid grid = make_grid(torus_geometry({1.0}), 4100);
  AssembledOperator op = assemble(grid, zero_potential(grid), zero_scalar(grid));
  CHECK_THROWS_AS(dense_spectrum(op), TooLarge);
}

TEST_CASE("restarted lanczos agrees with the dense factorization") {
  AssembledOperator op = circle_op(512, 1.7, 3.0);
  SpectrumResult dense = dense_spectrum(op, 5);
  LanczosOptions opt;
  opt.k = 5;
  opt.tol = 1e-10;
  SpectrumResult fast = lanczos_lowest(op, opt);
  const double scale = std::max(1.0, dense.eigenvalues.cwiseAbs().maxCoeff());
  CHECK((fast.eigenvalues - dense.eigenvalues).cwiseAbs().maxCoeff() < 1e-8 * scale);
  CHECK(fast.method == "lanczos");
}

TEST_CASE("lanczos reports non-convergence with its best estimates") {
  AssembledOperator op = circle_op(256, 0.3, 1.0);
  LanczosOptions opt;
  opt.k = 2;
  opt.tol = 1e-300;  // unreachable
  opt.max_basis = 12;
  opt.max_restarts = 2;
  try {
    lanczos_lowest(op, opt);
    FAIL("expected NotConverged");
  } catch (const NotConverged& e) {
    CHECK(e.best.size() == 2);
    CHECK(e.gap > 0.0);
  }
}

TEST_CASE("harmonic oscillator levels from the 1d solver") {
  Effective1D prob;
  prob.lo = -10.0;
  prob.hi = 10.0;
  prob.n = 1999;
  prob.potential = [](double x) { return 0.5 * x * x; };

  SpectrumResult plain = solve_effective_1d(prob, 3);
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(plain.eigenvalues[k] - (k + 0.5)) < 5e-4);

  prob.richardson = true;
  SpectrumResult rich = solve_effective_1d(prob, 3);
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(rich.eigenvalues[k] - (k + 0.5)) < 5e-7);
}

TEST_CASE("free particle in a box, second-order convergence and richardson") {
  Effective1D prob;
  prob.lo = 0.0;
  prob.hi = 1.0;
  prob.potential = [](double) { return 0.0; };
  const double exact = 0.5 * pi * pi;

  prob.n = 250;
  const double e1 = std::abs(solve_effective_1d(prob).eigenvalues[0] - exact);
  prob.n = 500;
  const double e2 = std::abs(solve_effective_1d(prob).eigenvalues[0] - exact);
  CHECK(e1 / e2 > 3.5);  // h^2 rate
  CHECK(e1 / e2 < 4.5);

  prob.n = 999;
  prob.richardson = true;
  CHECK(std::abs(solve_effective_1d(prob).eigenvalues[0] - exact) < 1e-10 * exact);
}

TEST_CASE("coulomb tail with the soft wall at the origin") {
  Effective1D prob;
  prob.lo = 0.0;
  prob.hi = 60.0;
  prob.n = 5999;
  prob.left_bc = Bc1D::FriedrichsKepler;
  prob.potential = [](double r) { return -1.0 / r - 1.0 / (8.0 * r * r); };

  SpectrumResult s = solve_effective_1d(prob, 1);
  CHECK(std::abs(s.eigenvalues[0] - (-2.0)) < 1e-2);

  prob.right_bc = Bc1D::FriedrichsKepler;
  CHECK_THROWS_AS(solve_effective_1d(prob, 1), ConfigError);
}

TEST_CASE("decay walls certify the boundary amplitude") {
  // morse-type well, ground level -1/4, amplitude at the cut ~ e^-22
  Effective1D prob;
  prob.lo = -44.0;
  prob.hi = 10.0;
  prob.n = 2699;
  prob.mass_prefactor = 1.0;
  prob.left_bc = Bc1D::Decay;
  prob.right_bc = Bc1D::Decay;
  prob.potential = [](double z) {
    const double w = 1.0 - std::exp(z);
    return w * w - 1.0;
  };
  SpectrumResult s = solve_effective_1d(prob, 1);
  CHECK(std::abs(s.eigenvalues[0] - (-0.25)) < 5e-3);

  // a free box state slams into the walls and must be rejected
  Effective1D bad;
  bad.lo = 0.0;
  bad.hi = 1.0;
  bad.n = 200;
  bad.left_bc = Bc1D::Decay;
  bad.right_bc = Bc1D::Decay;
  bad.potential = [](double) { return 0.0; };
  CHECK_THROWS_AS(solve_effective_1d(bad, 1), BoundaryAmplitudeTooLarge);
}

TEST_CASE("1d problem validation") {
  Effective1D prob;
  prob.lo = 1.0;
  prob.hi = 0.0;
  prob.potential = [](double) { return 0.0; };
  CHECK_THROWS_AS(solve_effective_1d(prob), ConfigError);
  prob.lo = 0.0;
  prob.hi = 1.0;
  prob.n = 4;
  CHECK_THROWS_AS(solve_effective_1d(prob), ConfigError);
  prob.n = 100;
  prob.potential = nullptr;
  CHECK_THROWS_AS(solve_effective_1d(prob), ConfigError);
}
