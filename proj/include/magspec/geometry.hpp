#pragma once

// Model geometries (chart + metric) and their uniform grid discretizations.
//
// Every geometry is described in a single chart with per-axis bounds. Curved
// directions that are exponential in nature (hyperbolic y, Sol z) use a
// logarithmic chart coordinate so the grid can stay uniform; the metric
// evaluators below are already expressed in chart coordinates.

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "magspec/errors.hpp"

namespace magspec {

enum class GeomKind {
  TorusFlat,
  PlaneTruncated,
  HalfPlaneHyperbolic,
  SphereBundleH,
  NilCover,
  SolCover,
  PuncturedPlaneRadial,
};

enum class Boundary { Periodic, Dirichlet };

enum class CoverKind { Universal, MaximalAbelian };

const char* geom_kind_name(GeomKind k);

struct Geometry {
  GeomKind kind{};
  int dim = 0;
  Eigen::VectorXd lo, hi;          // chart bounds per axis
  std::vector<Boundary> boundary;  // identification rule per axis
  // g^{jk} and sqrt|g| as functions of the chart point.
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> metric_inverse;
  std::function<double(const Eigen::VectorXd&)> volume_density;
  std::string chart_note;  // human-readable chart convention

  double period(int k) const { return hi[k] - lo[k]; }
};

// Factories. All throw DegenerateChart on empty intervals (and on r <= 0
// for the radial chart, where the metric would degenerate).
Geometry torus_geometry(const std::vector<double>& lengths);
Geometry plane_box_geometry(const Eigen::VectorXd& lo,
                            const Eigen::VectorXd& hi);
// Hyperbolic half-plane in coordinates (x, z), z = log y. The x axis is
// periodic (strip of circumference x_period) unless x_periodic is false.
Geometry half_plane_geometry(double x_period, double z_lo, double z_hi,
                             bool x_periodic = true);
// Unit sphere bundle over the hyperbolic plane, chart (x, z, phi), z = log y.
Geometry sphere_bundle_geometry(double x_period, double z_lo, double z_hi);
Geometry nil_geometry(CoverKind cover, double x_half_width = 6.0);
Geometry sol_geometry(double z_half_width = 6.0, double x_period = 1.0,
                      double y_period = 1.0);
Geometry punctured_plane_geometry(double r_min, double r_max);

// Uniform grid over a geometry chart. Spacing is exactly period/n on every
// axis. Periodic axes place nodes at lo + i*h (the wrap link closes the
// circle); Dirichlet axes are cell-centered, lo + (i + 1/2)*h, and couplings
// leaving the chart are dropped (ghost value zero).
struct Grid {
  Geometry geom;
  Eigen::VectorXi n;
  Eigen::VectorXd h;
  std::vector<Boundary> boundary;

  int dim() const { return geom.dim; }
  long size() const;
  bool periodic(int k) const { return boundary[k] == Boundary::Periodic; }

  // Row-major flat index, axis 0 slowest.
  long index(const Eigen::VectorXi& multi) const;
  Eigen::VectorXi unindex(long flat) const;
  Eigen::VectorXd node(long flat) const;
  double coordinate(int axis, int i) const;

  // Flat index of the forward neighbor along axis k, or -1 if the link
  // leaves a Dirichlet chart. `wrapped` is set when a periodic link wraps.
  long neighbor(long flat, int k, bool& wrapped) const;

  // Cell volume h_1*...*h_d.
  double cell_volume() const { return h.prod(); }
};

Grid make_grid(const Geometry& geom, const Eigen::VectorXi& nodes_per_axis);
Grid make_grid(const Geometry& geom, int nodes_per_axis);

// Nodewise fields. Vector potentials store one column per axis; the value in
// row x, column k is read on the half-shifted link x -> x + e_k (its base
// node), which is the convention the assembler and every difference stencil
// in this project share.
struct VectorPotential {
  Eigen::MatrixXd a;  // N x d
};

struct ScalarPotential {
  Eigen::VectorXd v;  // N
  double min_value = 0.0;
};

using GaugeFunction = Eigen::VectorXd;  // N

VectorPotential sample_vector_potential(
    const Grid& grid,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& alpha);
ScalarPotential sample_scalar_potential(
    const Grid& grid, const std::function<double(const Eigen::VectorXd&)>& v);
VectorPotential zero_potential(const Grid& grid);
ScalarPotential zero_scalar(const Grid& grid);

// Linear model potential alpha = sum_j lambda_j x_{2j-1} dx^{2j} (axes are
// paired (0,1), (2,3), ...). Throws OddDimensionPairing when the chart has
// fewer than 2*#lambda axes.
VectorPotential model_potential_torus(const Grid& grid,
                                      const std::vector<double>& lambda);

// Normal form of a real skew-symmetric matrix: Q^T B Q is block diagonal
// with 2x2 blocks [[0, lambda_j], [-lambda_j, 0]], lambda_j > 0, followed by
// a zero block. Throws NotSkew when ||B + B^T||_max > 1e-12.
struct SkewNormalForm {
  Eigen::MatrixXd Q;            // orthogonal
  std::vector<double> lambdas;  // positive block coefficients
  int zero_dim = 0;
};
SkewNormalForm skew_normal_form(const Eigen::MatrixXd& B);

// L2 inner product of nodewise 1-forms with the flat-torus weight (cell
// volume per node).
double form_inner(const Grid& grid, const VectorPotential& a,
                  const VectorPotential& b);
inline double form_norm2(const Grid& grid, const VectorPotential& a) {
  return form_inner(grid, a, a);
}

// Discrete Hodge decomposition on the flat torus:
//   alpha = harmonic_in_kernel + harmonic_perp + exact + coexact,
// pairwise L2-orthogonal. The harmonic part is the per-axis mean, split
// against the span of `cover_kernel_dirs` (may be empty: everything lands in
// harmonic_perp). The exact part is d of the least-squares potential, built
// with the same link stencil as the assembler, so the decomposition is
// orthogonal to solver precision. Throws NotTorus off the flat torus.
struct HodgeSplit {
  VectorPotential harmonic_in_kernel;
  VectorPotential harmonic_perp;
  VectorPotential exact;
  VectorPotential coexact;
  GaugeFunction potential;      // f with exact = df
  Eigen::VectorXd harmonic_mean;  // per-axis mean of alpha
};
HodgeSplit hodge_decompose_torus(
    const Grid& grid, const VectorPotential& alpha,
    const std::vector<Eigen::VectorXd>& cover_kernel_dirs = {});

// Forward-difference differential of a nodewise function, on links (base
// node convention), respecting identifications. This is the single gauge
// stencil shared by gauge shifts, the Hodge split and the critical-value
// objective.
VectorPotential link_differential(const Grid& grid, const GaugeFunction& f);

}  // namespace magspec
