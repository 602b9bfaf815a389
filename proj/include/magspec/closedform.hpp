#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "magspec/convention.hpp"

namespace magspec {

// Explicit spectrum of a model operator: isolated points plus (possibly)
// a continuum [threshold, inf). Points inside the continuum are genuine
// embedded eigenvalues of fibered models and are kept in the list.
struct ClosedFormSpectrum {
  std::string family;
  Convention convention = Convention::Half;
  double threshold = std::numeric_limits<double>::infinity();
  double lambda0 = 0.0;
  std::function<std::vector<double>(double)> generate_points;

  // isolated points <= cap, sorted, duplicates within 1e-12 merged
  std::vector<double> points(double cap) const;
  double lambda0_in(Convention c) const { return convert(lambda0, convention, c); }
};

// Flat space, constant field with skew eigenvalues lambda_j >= 0 and
// zero_dim field-free directions. Full rank gives the pure point ladder
// sum_j lambda_j (2 k_j + 1); any free direction smears the ladder into the
// half line starting at its bottom. Stated in the Double convention by
// default, where the formulas carry no 1/2.
ClosedFormSpectrum landau_spectrum(const Eigen::VectorXd& lambdas, int zero_dim,
                                   Convention conv = Convention::Double);

// Constant-curvature half plane, uniform field B (half convention).
// Points (2k+1)|B|/2 - k(k+1)/2 for 0 <= k < |B| - 1/2, continuum from
// (B^2 + 1/4)/2.
ClosedFormSpectrum maass_spectrum(double b);

// Unit cosphere bundle of the half plane, fibered over the integer vertical
// momentum m: fiber m contributes the Maass ladder of field -m shifted by
// (B+m)^2/2, with fiber continuum from ((B+m)^2 + m^2 + 1/4)/2.
ClosedFormSpectrum sphere_bundle_h_spectrum(double b);
double sphere_bundle_h_lambda0(double b); // independent piecewise formula

// Heisenberg group, maximal abelian cover: integer central momentum m.
// m != 0 gives the ladder (B + 2 pi m)^2/2 + pi (2k+1) |m|; m = 0 gives a
// continuum from B^2/2.
ClosedFormSpectrum nil_abelian_spectrum(double b);
// Heisenberg group, universal cover: continuous central momentum.
double nil_universal_lambda0(double b);
// fiber level of the universal family at central momentum xi, rung k
double nil_family_value(double b, double xi, int k);

// Universal cover of SL(2,R), continuous fiber parameter.
double sl2_universal_lambda0(double b);

// Sol fibers with only one exponential arm, W = (xi e^z + b)^2 - b^2: the
// Morse well. Ground value |b| - 1/4 - b^2 when |b| > 1/2, else no bound
// state and the fiber infimum is the z -> -inf threshold 0.
double sol_axis_ground(double b);
// lambda0 of the Sol field (bx, 0)
double sol_axis_lambda0(double bx);

// Radial Coulomb problem at angular momentum m >= 1 in a uniform field,
// linear Zeeman term only: -1/(2 (n + m + 1/2)^2) + b m.
double kepler_level(int m, int n, double b);
// m = 0 with the Friedrichs (soft) boundary condition at r = 0
double bohr_level(int n);

// Unit circle with constant form 2 pi a dx: 2 pi^2 dist(a, Z)^2, and its
// exact lattice counterpart on n nodes.
double circle_flux_lambda0(double a);
double circle_flux_lambda0_discrete(double a, int n);

}  // namespace magspec
