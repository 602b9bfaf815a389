#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <string>

#include "magspec/assembly.hpp"
#include "magspec/eigensolve.hpp"

namespace magspec {

// A geometry with enough symmetry separates into fibers labelled by
// momenta. The family evaluates one fiber at a time, either through a
// closed-form level or through a 1D (in one case 2D) effective problem,
// and knows how to map its own fiber values back to lambda0 units of the
// half-convention operator upstairs.
struct ReducedFamily {
  std::string name;
  int n_momenta = 0;
  std::map<std::string, double> params;

  // numeric fiber at momentum xi (used when closed_level is absent)
  std::function<Effective1D(const Eigen::VectorXd&)> effective;
  // assembled 2D fiber, for reductions that only drop one variable
  std::function<AssembledOperator(const Eigen::VectorXd&)> effective_2d;
  // exact fiber level (family normalization), rung k
  std::function<double(const Eigen::VectorXd&, int)> closed_level;

  // family value -> lambda0 units of the half-convention operator
  std::function<double(double)> to_lambda0;
  std::string normalization;  // one line stating that map

  Eigen::VectorXd scan_lo, scan_hi;  // default momentum window
};

// Families by name and parameters:
//   torus_landau  {lambda}       closed oscillator ladder, no momenta
//   maass         {B}            1D in z, momentum xi (horizontal)
//   sphere_bundle_h {B, m}       1D in z at integer fiber m, momentum xi
//   sl2_universal {B}            1D in z, momenta (xi_phi, xi_x)
//   nil           {B}            closed ladder over central momentum xi
//   sol           {Bx, By}       1D in z, momenta (xi_x, xi_y), value 2H - B^2
//   kepler_radial {m, B}         1D in r, no momenta
//   sol_monopole  {B}            2D in (x, z), momentum xi_t
ReducedFamily build_family(const std::string& name,
                           const std::map<std::string, double>& params);

// fiber value in the family's own normalization
double family_value(const ReducedFamily& fam, const Eigen::VectorXd& xi, int k = 0);
// the same, mapped to lambda0 units
double family_lambda0_at(const ReducedFamily& fam, const Eigen::VectorXd& xi, int k = 0);

struct CoverGroundState {
  double value = 0.0;        // lambda0 units
  Eigen::VectorXd argmin;    // momenta
  double tail_margin = 0.0;  // certified slack outside the enumeration window
};

struct MomentumScan {
  int coarse = 25;        // coarse samples per momentum axis
  int golden_iters = 70;  // golden-section steps per axis during refinement
  int sweeps = 3;         // cyclic coordinate refinement passes
  int rung = 0;           // which fiber level to minimize
};

// Ground value over continuous momenta: coarse scan of the window, then
// cyclic golden-section refinement. Throws ScanRangeExhausted when the
// coarse minimum sits on the window edge.
CoverGroundState minimize_over_momenta(const ReducedFamily& fam,
                                       const MomentumScan& scan = {});

// Ground value over integer momenta (closed-form ladders), with an explicit
// tail bound certifying that no branch outside the enumerated window can
// undercut the minimum. Supports nil and sphere_bundle_h.
CoverGroundState abelian_cover_groundstate(const std::string& name, double b);

// Sol-monopole fiber at vertical momentum xi_t on the (x, z) slab, and the
// same spectrum generated through the hyperbolic chart: the half-plane with
// scalar potential (b x / y)^2 / 2 sits exactly 1/8 above it.
AssembledOperator sol_monopole_fiber(double b, double xi_t, int nx, int nz,
                                     double x_half, double z_lo, double z_hi);
AssembledOperator sol_monopole_halfplane(double b, int nx, int nz, double x_half,
                                         double z_lo, double z_hi);

}  // namespace magspec
