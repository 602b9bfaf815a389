#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "magspec/errors.hpp"
#include "magspec/geometry.hpp"

using namespace magspec;
using std::numbers::pi;

namespace {

// sample a handful of nodes spread over the grid
std::vector<long> probe_nodes(const Grid& grid) {
  std::vector<long> out;
  const long n = grid.size();
  for (long i = 0; i < 7; ++i) out.push_back((i * (n - 1)) / 6);
  return out;
}

void check_metric_spd(const Geometry& geom, int nodes_per_axis) {
  Grid grid = make_grid(geom, nodes_per_axis);
  for (long flat : probe_nodes(grid)) {
    const Eigen::VectorXd x = grid.node(flat);
    const Eigen::MatrixXd ginv = geom.metric_inverse(x);
    CHECK((ginv - ginv.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ginv);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(geom.volume_density(x) > 0.0);
  }
}

VectorPotential random_form(const Grid& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VectorPotential a{Eigen::MatrixXd(grid.size(), grid.dim())};
  for (long i = 0; i < grid.size(); ++i)
    for (int k = 0; k < grid.dim(); ++k) a.a(i, k) = u(rng);
  return a;
}

}  // namespace

TEST_CASE("grid indexing round trip and node placement") {
  Grid grid = make_grid(torus_geometry({1.5, 0.8}), Eigen::Vector2i(6, 5));
  CHECK(grid.size() == 30);
  for (long flat = 0; flat < grid.size(); ++flat) {
    CHECK(grid.index(grid.unindex(flat)) == flat);
  }
  // periodic nodes at lo + i h, exact spacing period / n
  CHECK(grid.h[0] == doctest::Approx(1.5 / 6).epsilon(1e-15));
  CHECK(grid.node(0)[0] == doctest::Approx(0.0));
  CHECK(grid.coordinate(0, 2) == doctest::Approx(2 * 1.5 / 6));

  // Dirichlet nodes are cell-centered
  Grid box = make_grid(plane_box_geometry(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)),
                       Eigen::Vector2i(4, 4));
  CHECK(box.coordinate(0, 0) == doctest::Approx(0.125));
  CHECK(box.coordinate(0, 3) == doctest::Approx(0.875));
}

TEST_CASE("neighbor links wrap on periodic axes and stop at walls") {
  Grid grid = make_grid(torus_geometry({1.0}), 8);
  bool wrapped = false;
  CHECK(grid.neighbor(3, 0, wrapped) == 4);
  CHECK(!wrapped);
  CHECK(grid.neighbor(7, 0, wrapped) == 0);
  CHECK(wrapped);

  Grid box = make_grid(plane_box_geometry(Eigen::VectorXd::Zero(1),
                                          Eigen::VectorXd::Ones(1)),
                       8);
  CHECK(box.neighbor(7, 0, wrapped) == -1);
}

TEST_CASE("grid and chart validation") {
  CHECK_THROWS_AS(make_grid(torus_geometry({1.0}), 3), TooCoarse);
  CHECK_THROWS_AS(torus_geometry({0.0}), DegenerateChart);
  CHECK_THROWS_AS(plane_box_geometry(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)),
                  DegenerateChart);
  CHECK_THROWS_AS(half_plane_geometry(1.0, 2.0, -1.0), DegenerateChart);
  CHECK_THROWS_AS(punctured_plane_geometry(0.0, 2.0), DegenerateChart);
}

TEST_CASE("metric data is SPD with positive density on every factory") {
  check_metric_spd(torus_geometry({1.0, 2.0}), 5);
  check_metric_spd(plane_box_geometry(Eigen::Vector2d(-8, -8), Eigen::Vector2d(8, 8)), 6);
  check_metric_spd(half_plane_geometry(1.0, -4.0, 1.5), 6);
  check_metric_spd(sphere_bundle_geometry(1.0, -4.0, 1.5), 5);
  check_metric_spd(nil_geometry(CoverKind::Universal), 5);
  check_metric_spd(nil_geometry(CoverKind::MaximalAbelian), 5);
  check_metric_spd(sol_geometry(), 5);
  check_metric_spd(punctured_plane_geometry(0.01, 60.0), 6);
}

TEST_CASE("skew normal form reproduces the matrix and its invariants") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int dim : {2, 4, 5, 6}) {
    Eigen::MatrixXd r(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r(i, j) = u(rng);
    Eigen::MatrixXd b = r - r.transpose();
    SkewNormalForm nf = skew_normal_form(b);

    CHECK((nf.Q.transpose() * nf.Q - Eigen::MatrixXd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(int(nf.lambdas.size()) * 2 + nf.zero_dim == dim);

    // rebuild block diagonal [[0, l], [-l, 0]] + zero block
    Eigen::MatrixXd canon = Eigen::MatrixXd::Zero(dim, dim);
    for (size_t j = 0; j < nf.lambdas.size(); ++j) {
      CHECK(nf.lambdas[j] > 0.0);
      canon(2 * j, 2 * j + 1) = nf.lambdas[j];
      canon(2 * j + 1, 2 * j) = -nf.lambdas[j];
    }
    CHECK((nf.Q.transpose() * b * nf.Q - canon).cwiseAbs().maxCoeff() < 1e-10);

    // block coefficients are the positive imaginary parts of the eigenvalues
    Eigen::EigenSolver<Eigen::MatrixXd> es(b);
    std::vector<double> imag;
    for (int i = 0; i < dim; ++i)
      if (es.eigenvalues()[i].imag() > 1e-10) imag.push_back(es.eigenvalues()[i].imag());
    std::sort(imag.begin(), imag.end());
    std::vector<double> lam = nf.lambdas;
    std::sort(lam.begin(), lam.end());
    REQUIRE(lam.size() == imag.size());
    for (size_t j = 0; j < lam.size(); ++j)
      CHECK(lam[j] == doctest::Approx(imag[j]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(skew_normal_form(Eigen::MatrixXd::Identity(2, 2)), NotSkew);
}

TEST_CASE("model potential pairs axes as lambda x dx'") {
  Grid grid = make_grid(torus_geometry({1.0, 1.0}), Eigen::Vector2i(8, 8));
  VectorPotential a = model_potential_torus(grid, {2.5});
  for (long flat : probe_nodes(grid)) {
    const Eigen::VectorXd x = grid.node(flat);
    CHECK(a.a(flat, 0) == 0.0);
    CHECK(a.a(flat, 1) == doctest::Approx(2.5 * x[0]).epsilon(1e-15));
  }
  CHECK_THROWS_AS(model_potential_torus(make_grid(torus_geometry({1.0}), 8), {1.0}),
                  OddDimensionPairing);
}

TEST_CASE("link differential telescopes to zero around torus loops") {
  Grid grid = make_grid(torus_geometry({1.0, 0.7}), Eigen::Vector2i(6, 9));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GaugeFunction f(grid.size());
  for (long i = 0; i < grid.size(); ++i) f[i] = u(rng);
  VectorPotential df = link_differential(grid, f);
  // each axis column sums to zero: every circle telescopes, wrap included
  for (int k = 0; k < 2; ++k) CHECK(std::abs(df.a.col(k).sum()) < 1e-12);
}

TEST_CASE("form inner product matches the weighted sum") {
  Grid grid = make_grid(torus_geometry({2.0, 1.0}), Eigen::Vector2i(5, 4));
  VectorPotential a = random_form(grid, 11), b = random_form(grid, 12);
  double expect = 0.0;
  for (long i = 0; i < grid.size(); ++i)
    for (int k = 0; k < 2; ++k) expect += a.a(i, k) * b.a(i, k) * grid.cell_volume();
  CHECK(form_inner(grid, a, b) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(form_norm2(grid, a) > 0.0);
}

TEST_CASE("hodge decomposition is orthogonal, complete and idempotent") {
  Grid grid = make_grid(torus_geometry({1.2, 0.9}), Eigen::Vector2i(6, 5));
  VectorPotential alpha = random_form(grid, 21);
  HodgeSplit split = hodge_decompose_torus(grid, alpha);

  const double scale = std::max(1.0, form_norm2(grid, alpha));

  // recomposition
  Eigen::MatrixXd sum = split.harmonic_in_kernel.a + split.harmonic_perp.a +
                        split.exact.a + split.coexact.a;
  CHECK((sum - alpha.a).cwiseAbs().maxCoeff() < 1e-10);

  // pairwise orthogonality
  const VectorPotential* parts[4] = {&split.harmonic_in_kernel, &split.harmonic_perp,
                                     &split.exact, &split.coexact};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(std::abs(form_inner(grid, *parts[i], *parts[j])) < 1e-10 * scale);

  // exact part really is d(potential)
  VectorPotential df = link_differential(grid, split.potential);
  CHECK((split.exact.a - df.a).cwiseAbs().maxCoeff() < 1e-10);

  // harmonic mean is the per-axis average
  for (int k = 0; k < 2; ++k)
    CHECK(split.harmonic_mean[k] ==
          doctest::Approx(alpha.a.col(k).mean()).epsilon(1e-12));

  // idempotence on the coexact summand
  HodgeSplit again = hodge_decompose_torus(grid, split.coexact);
  CHECK((again.coexact.a - split.coexact.a).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(again.exact.a.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(again.harmonic_mean.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hodge kernel directions capture the selected harmonic span") {
  Grid grid = make_grid(torus_geometry({1.0, 1.0}), Eigen::Vector2i(5, 5));
  VectorPotential alpha = random_form(grid, 31);
  std::vector<Eigen::VectorXd> dirs = {Eigen::Vector2d(1.0, 0.0)};
  HodgeSplit split = hodge_decompose_torus(grid, alpha, dirs);
  // kernel part: axis-0 mean only; perp part carries the axis-1 mean
  CHECK(split.harmonic_in_kernel.a.col(0).maxCoeff() ==
        doctest::Approx(alpha.a.col(0).mean()).epsilon(1e-12));
  CHECK(split.harmonic_in_kernel.a.col(1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(split.harmonic_perp.a.col(0).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(
      hodge_decompose_torus(make_grid(half_plane_geometry(1.0, -1.0, 1.0), 6),
                            zero_potential(make_grid(half_plane_geometry(1.0, -1.0, 1.0), 6))),
      NotTorus);
}
