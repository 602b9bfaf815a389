#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "magspec/assembly.hpp"
#include "magspec/reduction.hpp"

namespace magspec {

// Abelian cover of the base torus, one fold count per axis: f >= 2 unrolls
// f copies (finite cyclic cover, characters are the f-th roots of unity),
// f = 1 keeps the base, f = 0 means the infinite cyclic cover (character
// circle sampled, then refined). Dirichlet axes must stay at 1.
struct CoverSpec {
  Eigen::VectorXi folds;
};

struct BandStructure {
  // per-band intervals over the character set, overlaps merged, sorted
  std::vector<std::pair<double, double>> bands;
  double lambda0 = 0.0;
  Eigen::VectorXd argmin_theta;
  // one row per character: theta_1..theta_d, then the k lowest eigenvalues
  Eigen::MatrixXd samples;
};

// Sweep the character set of the cover and collect the k lowest twisted
// eigenvalues per character.
BandStructure band_structure(const Grid& grid, const VectorPotential& alpha,
                             const ScalarPotential& v, const CoverSpec& cover,
                             int k_bands, int samples_per_axis = 64);

// Ground energy of the cover through characters only; infinite axes get a
// golden-section pass around the best sampled twist.
CoverGroundState cover_groundstate_via_characters(const Grid& grid,
                                                  const VectorPotential& alpha,
                                                  const ScalarPotential& v,
                                                  const CoverSpec& cover,
                                                  int samples_per_axis = 33);

// Assembles the finite cover literally (folds <= 4 per axis, flat torus
// only) by tiling the node fields, and returns its entire spectrum. The
// sorted concatenation of the twisted spectra over the fold characters must
// reproduce this multiset; keeping both paths exact is what pins the wrap
// phase convention.
std::vector<double> direct_cover_oracle(const Grid& grid, const VectorPotential& alpha,
                                        const ScalarPotential& v,
                                        const Eigen::VectorXi& folds);

}  // namespace magspec
