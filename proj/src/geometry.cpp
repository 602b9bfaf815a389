#include "magspec/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <cmath>
#include <numeric>

namespace magspec {

const char* geom_kind_name(GeomKind k) {
  switch (k) {
    case GeomKind::TorusFlat: return "torus_flat";
    case GeomKind::PlaneTruncated: return "plane_truncated";
    case GeomKind::HalfPlaneHyperbolic: return "half_plane_hyperbolic";
    case GeomKind::SphereBundleH: return "sphere_bundle_h";
    case GeomKind::NilCover: return "nil_cover";
    case GeomKind::SolCover: return "sol_cover";
    case GeomKind::PuncturedPlaneRadial: return "punctured_plane_radial";
  }
  return "unknown";
}

namespace {

void check_interval(double lo, double hi, const char* what) {
  if (!(hi > lo)) {
    throw DegenerateChart(std::string(what) + ": empty chart interval");
  }
}

Eigen::MatrixXd identity_metric(int d) { return Eigen::MatrixXd::Identity(d, d); }

}  // namespace

Geometry torus_geometry(const std::vector<double>& lengths) {
  Geometry g;
  g.kind = GeomKind::TorusFlat;
  g.dim = static_cast<int>(lengths.size());
  if (g.dim == 0) throw DegenerateChart("torus: no axes");
  g.lo = Eigen::VectorXd::Zero(g.dim);
  g.hi = Eigen::VectorXd::Zero(g.dim);
  for (int k = 0; k < g.dim; ++k) {
    check_interval(0.0, lengths[k], "torus");
    g.hi[k] = lengths[k];
  }
  g.boundary.assign(g.dim, Boundary::Periodic);
  int d = g.dim;
  g.metric_inverse = [d](const Eigen::VectorXd&) { return identity_metric(d); };
  g.volume_density = [](const Eigen::VectorXd&) { return 1.0; };
  g.chart_note = "flat torus, x_k in [0, L_k)";
  return g;
}

Geometry plane_box_geometry(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw DegenerateChart("plane box: bounds size mismatch");
  }
  Geometry g;
  g.kind = GeomKind::PlaneTruncated;
  g.dim = static_cast<int>(lo.size());
  g.lo = lo;
  g.hi = hi;
  for (int k = 0; k < g.dim; ++k) check_interval(lo[k], hi[k], "plane box");
  g.boundary.assign(g.dim, Boundary::Dirichlet);
  int d = g.dim;
  g.metric_inverse = [d](const Eigen::VectorXd&) { return identity_metric(d); };
  g.volume_density = [](const Eigen::VectorXd&) { return 1.0; };
  g.chart_note = "truncated Euclidean plane, Dirichlet walls";
  return g;
}

Geometry half_plane_geometry(double x_period, double z_lo, double z_hi,
                             bool x_periodic) {
  check_interval(0.0, x_period, "half plane x");
  check_interval(z_lo, z_hi, "half plane z");
  Geometry g;
  g.kind = GeomKind::HalfPlaneHyperbolic;
  g.dim = 2;
  g.lo = Eigen::Vector2d(0.0, z_lo);
  g.hi = Eigen::Vector2d(x_period, z_hi);
  g.boundary = {x_periodic ? Boundary::Periodic : Boundary::Dirichlet,
                Boundary::Dirichlet};
  // Chart (x, z) with y = e^z: ds^2 = e^{-2z} dx^2 + dz^2.
  g.metric_inverse = [](const Eigen::VectorXd& p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = std::exp(2.0 * p[1]);
    m(1, 1) = 1.0;
    return m;
  };
  g.volume_density = [](const Eigen::VectorXd& p) { return std::exp(-p[1]); };
  g.chart_note = "hyperbolic half-plane, z = log y";
  return g;
}

Geometry sphere_bundle_geometry(double x_period, double z_lo, double z_hi) {
  check_interval(0.0, x_period, "sphere bundle x");
  check_interval(z_lo, z_hi, "sphere bundle z");
  Geometry g;
  g.kind = GeomKind::SphereBundleH;
  g.dim = 3;
  g.lo = Eigen::Vector3d(0.0, z_lo, 0.0);
  g.hi = Eigen::Vector3d(x_period, z_hi, 2.0 * M_PI);
  g.boundary = {Boundary::Periodic, Boundary::Dirichlet, Boundary::Periodic};
  // Chart (x, z, phi), y = e^z. The x-phi block is coupled.
  g.metric_inverse = [](const Eigen::VectorXd& p) {
    double ez = std::exp(p[1]);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = ez * ez;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    m(0, 2) = m(2, 0) = -ez;
    return m;
  };
  g.volume_density = [](const Eigen::VectorXd& p) { return std::exp(-p[1]); };
  g.chart_note = "unit sphere bundle over the hyperbolic plane, z = log y";
  return g;
}

Geometry nil_geometry(CoverKind cover, double x_half_width) {
  check_interval(-x_half_width, x_half_width, "nil");
  Geometry g;
  g.kind = GeomKind::NilCover;
  g.dim = 3;
  if (cover == CoverKind::MaximalAbelian) {
    // Central direction z compactified to period 1; x, y unrolled.
    g.lo = Eigen::Vector3d(-x_half_width, -x_half_width, 0.0);
    g.hi = Eigen::Vector3d(x_half_width, x_half_width, 1.0);
    g.boundary = {Boundary::Dirichlet, Boundary::Dirichlet, Boundary::Periodic};
    g.chart_note = "Heisenberg group, central circle of period 1";
  } else {
    g.lo = Eigen::Vector3d::Constant(-x_half_width);
    g.hi = Eigen::Vector3d::Constant(x_half_width);
    g.boundary.assign(3, Boundary::Dirichlet);
    g.chart_note = "Heisenberg group, universal cover (truncated)";
  }
  // Left-invariant metric dx^2 + dy^2 + (dz - x dy)^2.
  g.metric_inverse = [](const Eigen::VectorXd& p) {
    double x = p[0];
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(1, 2) = m(2, 1) = x;
    m(2, 2) = 1.0 + x * x;
    return m;
  };
  g.volume_density = [](const Eigen::VectorXd&) { return 1.0; };
  return g;
}

Geometry sol_geometry(double z_half_width, double x_period, double y_period) {
  check_interval(0.0, x_period, "sol x");
  check_interval(0.0, y_period, "sol y");
  check_interval(-z_half_width, z_half_width, "sol z");
  Geometry g;
  g.kind = GeomKind::SolCover;
  g.dim = 3;
  g.lo = Eigen::Vector3d(0.0, 0.0, -z_half_width);
  g.hi = Eigen::Vector3d(x_period, y_period, z_half_width);
  g.boundary = {Boundary::Periodic, Boundary::Periodic, Boundary::Dirichlet};
  // ds^2 = e^{-2z} dx^2 + e^{2z} dy^2 + dz^2, unimodular: sqrt|g| = 1.
  g.metric_inverse = [](const Eigen::VectorXd& p) {
    double e2z = std::exp(2.0 * p[2]);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = e2z;
    m(1, 1) = 1.0 / e2z;
    m(2, 2) = 1.0;
    return m;
  };
  g.volume_density = [](const Eigen::VectorXd&) { return 1.0; };
  g.chart_note = "Sol group, x/y periodic, z truncated";
  return g;
}

Geometry punctured_plane_geometry(double r_min, double r_max) {
  if (r_min <= 0.0) throw DegenerateChart("punctured plane: r_min <= 0");
  check_interval(r_min, r_max, "punctured plane r");
  Geometry g;
  g.kind = GeomKind::PuncturedPlaneRadial;
  g.dim = 2;
  g.lo = Eigen::Vector2d(r_min, 0.0);
  g.hi = Eigen::Vector2d(r_max, 2.0 * M_PI);
  g.boundary = {Boundary::Dirichlet, Boundary::Periodic};
  g.metric_inverse = [](const Eigen::VectorXd& p) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0 / (p[0] * p[0]);
    return m;
  };
  g.volume_density = [](const Eigen::VectorXd& p) { return p[0]; };
  g.chart_note = "punctured plane in polar coordinates";
  return g;
}

long Grid::size() const {
  long s = 1;
  for (int k = 0; k < n.size(); ++k) s *= n[k];
  return s;
}

long Grid::index(const Eigen::VectorXi& multi) const {
  long flat = 0;
  for (int k = 0; k < n.size(); ++k) flat = flat * n[k] + multi[k];
  return flat;
}

Eigen::VectorXi Grid::unindex(long flat) const {
  Eigen::VectorXi multi(n.size());
  for (int k = static_cast<int>(n.size()) - 1; k >= 0; --k) {
    multi[k] = static_cast<int>(flat % n[k]);
    flat /= n[k];
  }
  return multi;
}

double Grid::coordinate(int axis, int i) const {
  double offset = periodic(axis) ? 0.0 : 0.5;
  return geom.lo[axis] + (i + offset) * h[axis];
}

Eigen::VectorXd Grid::node(long flat) const {
  Eigen::VectorXi multi = unindex(flat);
  Eigen::VectorXd x(n.size());
  for (int k = 0; k < n.size(); ++k) x[k] = coordinate(k, multi[k]);
  return x;
}

long Grid::neighbor(long flat, int k, bool& wrapped) const {
  wrapped = false;
  Eigen::VectorXi multi = unindex(flat);
  if (multi[k] + 1 < n[k]) {
    multi[k] += 1;
    return index(multi);
  }
  if (!periodic(k)) return -1;
  wrapped = true;
  multi[k] = 0;
  return index(multi);
}

Grid make_grid(const Geometry& geom, const Eigen::VectorXi& nodes_per_axis) {
  if (nodes_per_axis.size() != geom.dim) {
    throw ShapeMismatch("make_grid: nodes_per_axis size != chart dimension");
  }
  Grid grid;
  grid.geom = geom;
  grid.n = nodes_per_axis;
  grid.h = Eigen::VectorXd(geom.dim);
  grid.boundary = geom.boundary;
  for (int k = 0; k < geom.dim; ++k) {
    if (nodes_per_axis[k] < 4) {
      throw TooCoarse("make_grid: fewer than 4 nodes on an axis");
    }
    grid.h[k] = geom.period(k) / nodes_per_axis[k];
  }
  return grid;
}

Grid make_grid(const Geometry& geom, int nodes_per_axis) {
  return make_grid(geom,
                   Eigen::VectorXi::Constant(geom.dim, nodes_per_axis));
}

VectorPotential sample_vector_potential(
    const Grid& grid,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& alpha) {
  VectorPotential out;
  out.a.resize(grid.size(), grid.dim());
  for (long i = 0; i < grid.size(); ++i) out.a.row(i) = alpha(grid.node(i));
  return out;
}

ScalarPotential sample_scalar_potential(
    const Grid& grid, const std::function<double(const Eigen::VectorXd&)>& v) {
  ScalarPotential out;
  out.v.resize(grid.size());
  for (long i = 0; i < grid.size(); ++i) out.v[i] = v(grid.node(i));
  out.min_value = out.v.size() ? out.v.minCoeff() : 0.0;
  return out;
}

VectorPotential zero_potential(const Grid& grid) {
  VectorPotential out;
  out.a = Eigen::MatrixXd::Zero(grid.size(), grid.dim());
  return out;
}

ScalarPotential zero_scalar(const Grid& grid) {
  ScalarPotential out;
  out.v = Eigen::VectorXd::Zero(grid.size());
  out.min_value = 0.0;
  return out;
}

VectorPotential model_potential_torus(const Grid& grid,
                                      const std::vector<double>& lambda) {
  if (grid.geom.kind != GeomKind::TorusFlat &&
      grid.geom.kind != GeomKind::PlaneTruncated) {
    throw ShapeMismatch("model potential needs a flat chart");
  }
  if (2 * static_cast<int>(lambda.size()) > grid.dim()) {
    throw OddDimensionPairing(
        "model potential: chart has no axis pair for every lambda");
  }
  VectorPotential out = zero_potential(grid);
  for (long i = 0; i < grid.size(); ++i) {
    Eigen::VectorXd x = grid.node(i);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      out.a(i, 2 * j + 1) = lambda[j] * x[2 * j];
    }
  }
  return out;
}

SkewNormalForm skew_normal_form(const Eigen::MatrixXd& B) {
  if (B.rows() != B.cols()) throw NotSkew("skew normal form: matrix not square");
  const int n = static_cast<int>(B.rows());
  if (((B + B.transpose()).array().abs() > 1e-12).any()) {
    throw NotSkew("skew normal form: ||B + B^T||_max > 1e-12");
  }
  SkewNormalForm out;
  if (n == 0) {
    out.Q.resize(0, 0);
    return out;
  }

  Eigen::RealSchur<Eigen::MatrixXd> schur(B);
  const Eigen::MatrixXd& T = schur.matrixT();
  const Eigen::MatrixXd& U = schur.matrixU();

  // B is normal, so T is block diagonal: 2x2 blocks [[0, t], [-t, 0]] for
  // the pairs +-i|t|, and 1x1 zeros for the kernel. Collect pairs first.
  double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  std::vector<int> pair_cols, zero_cols;
  std::vector<double> lambdas;
  int i = 0;
  while (i < n) {
    if (i + 1 < n && std::abs(T(i + 1, i)) > 1e-12 * scale) {
      double t = T(i, i + 1);
      // Orientation: columns (q1, q2) with q1^T B q2 = lambda > 0.
      if (t >= 0.0) {
        pair_cols.push_back(i);
        pair_cols.push_back(i + 1);
        lambdas.push_back(t);
      } else {
        pair_cols.push_back(i + 1);
        pair_cols.push_back(i);
        lambdas.push_back(-t);
      }
      i += 2;
    } else {
      zero_cols.push_back(i);
      i += 1;
    }
  }

  out.Q.resize(n, n);
  int c = 0;
  for (int col : pair_cols) out.Q.col(c++) = U.col(col);
  for (int col : zero_cols) out.Q.col(c++) = U.col(col);
  out.lambdas = std::move(lambdas);
  out.zero_dim = static_cast<int>(zero_cols.size());
  return out;
}

double form_inner(const Grid& grid, const VectorPotential& a,
                  const VectorPotential& b) {
  return (a.a.array() * b.a.array()).sum() * grid.cell_volume();
}

VectorPotential link_differential(const Grid& grid, const GaugeFunction& f) {
  if (f.size() != grid.size()) {
    throw ShapeMismatch("link differential: gauge function size != grid");
  }
  VectorPotential df = zero_potential(grid);
  for (long i = 0; i < grid.size(); ++i) {
    for (int k = 0; k < grid.dim(); ++k) {
      bool wrapped = false;
      long j = grid.neighbor(i, k, wrapped);
      // A missing Dirichlet link multiplies a dropped coupling; its df value
      // never enters any operator, zero keeps the array total.
      df.a(i, k) = (j >= 0) ? (f[j] - f[i]) / grid.h[k] : 0.0;
    }
  }
  return df;
}

namespace {

// Least-squares potential of alpha: minimizes sum over links of
// (alpha_k - (df)_k)^2. Normal equations give the standard periodic
// (-1, 2, -1)/h^2 Laplacian, whose kernel is the constants; the right-hand
// side telescopes to zero mean, so conjugate gradients stays consistent.
GaugeFunction least_squares_potential(const Grid& grid,
                                      const VectorPotential& alpha) {
  const long N = grid.size();
  const int d = grid.dim();
  using Trip = Eigen::Triplet<double>;
  std::vector<Trip> trips;
  trips.reserve(static_cast<std::size_t>(N) * 4 * d);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
  for (long i = 0; i < N; ++i) {
    for (int k = 0; k < d; ++k) {
      bool wrapped = false;
      long j = grid.neighbor(i, k, wrapped);  // torus: always a node
      int ii = static_cast<int>(i), jj = static_cast<int>(j);
      double w = 1.0 / (grid.h[k] * grid.h[k]);
      trips.emplace_back(ii, ii, w);
      trips.emplace_back(jj, jj, w);
      trips.emplace_back(ii, jj, -w);
      trips.emplace_back(jj, ii, -w);
      rhs[i] -= alpha.a(i, k) / grid.h[k];
      rhs[j] += alpha.a(i, k) / grid.h[k];
    }
  }
  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trips.begin(), trips.end());

  // the graph laplacian kills constants; rounding leaves a kernel component
  // in rhs that would stall cg, so project it out first
  rhs.array() -= rhs.mean();

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                           Eigen::Lower | Eigen::Upper>
      cg;
  cg.setTolerance(1e-14);
  cg.setMaxIterations(20 * N);
  cg.compute(A);
  GaugeFunction f = cg.solve(rhs);
  f.array() -= f.mean();
  return f;
}

}  // namespace

HodgeSplit hodge_decompose_torus(
    const Grid& grid, const VectorPotential& alpha,
    const std::vector<Eigen::VectorXd>& cover_kernel_dirs) {
  if (grid.geom.kind != GeomKind::TorusFlat) {
    throw NotTorus("hodge decomposition is defined on the flat torus");
  }
  if (alpha.a.rows() != grid.size() || alpha.a.cols() != grid.dim()) {
    throw ShapeMismatch("hodge: alpha shape != grid");
  }
  const long N = grid.size();
  const int d = grid.dim();

  HodgeSplit out;
  out.harmonic_mean = alpha.a.colwise().mean();

  VectorPotential centered = alpha;
  for (int k = 0; k < d; ++k) {
    centered.a.col(k).array() -= out.harmonic_mean[k];
  }
  out.potential = least_squares_potential(grid, centered);
  out.exact = link_differential(grid, out.potential);
  out.coexact.a = centered.a - out.exact.a;

  // Split the constant harmonic vector against the cover-kernel span.
  Eigen::VectorXd in_kernel = Eigen::VectorXd::Zero(d);
  if (!cover_kernel_dirs.empty()) {
    Eigen::MatrixXd D(d, static_cast<int>(cover_kernel_dirs.size()));
    for (std::size_t c = 0; c < cover_kernel_dirs.size(); ++c) {
      if (cover_kernel_dirs[c].size() != d) {
        throw ShapeMismatch("hodge: cover kernel direction size != dim");
      }
      D.col(static_cast<int>(c)) = cover_kernel_dirs[c];
    }
    // Orthogonal projector onto span(D).
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(D);
    Eigen::MatrixXd Qfull = qr.householderQ();
    int rank = std::min<int>(d, static_cast<int>(cover_kernel_dirs.size()));
    Eigen::MatrixXd Qr = Qfull.leftCols(rank);
    in_kernel = Qr * (Qr.transpose() * out.harmonic_mean);
  }
  Eigen::VectorXd perp = out.harmonic_mean - in_kernel;

  out.harmonic_in_kernel.a = Eigen::MatrixXd::Zero(N, d);
  out.harmonic_perp.a = Eigen::MatrixXd::Zero(N, d);
  for (int k = 0; k < d; ++k) {
    out.harmonic_in_kernel.a.col(k).setConstant(in_kernel[k]);
    out.harmonic_perp.a.col(k).setConstant(perp[k]);
  }
  return out;
}

}  // namespace magspec
