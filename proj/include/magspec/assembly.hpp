#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <complex>

#include "magspec/convention.hpp"
#include "magspec/geometry.hpp"

namespace magspec {

using SparseCd = Eigen::SparseMatrix<std::complex<double>>;

// Boundary character of an abelian cover: one angle per axis, applied as an
// extra phase e^{i theta_k} on the links that wrap around axis k. Angles on
// non-periodic axes are ignored. theta = 0 is the untwisted (periodic)
// operator.
struct Character {
  Eigen::VectorXd theta;

  static Character trivial(int dim) { return Character{Eigen::VectorXd::Zero(dim)}; }
};

// Reduce angles to (-pi, pi] so equal characters compare equal.
Character make_character(const Grid& grid, const Eigen::VectorXd& angles);

// Discrete magnetic Schrodinger operator in symmetric (flat L^2) form.
//
// The quadratic form behind it is
//   q(u) = 1/2 sum_links c_l |e^{i A_l} u(x+) - u(x)|^2 / h_k^2
//        + sum_x V(x) |u(x)|^2 mu(x),
// with link phase A_l = h_k alpha_k(x) evaluated at the base node of the
// link, link weight c_l the average of g^{kk} sqrt(det g) over the two
// endpoints times the cell volume, and node measure mu(x) = sqrt(det g(x))
// times the cell volume. Wrap links additionally pick up the character
// phase; missing links on Dirichlet walls contribute a one-sided
// |u(x)|^2 wall term (ghost node held at zero one spacing outside).
//
// matrix is D^{-1/2} Q D^{-1/2} with D = diag(mu), so its eigenproblem is
// the generalized one q(u) = lambda <u,u>_mu in disguise and stays Hermitian
// in the plain inner product.
struct AssembledOperator {
  SparseCd matrix;
  Eigen::VectorXd measure;
  Grid grid;
  Convention convention = Convention::Half;
  double min_potential = 0.0;

  Eigen::Index size() const { return matrix.rows(); }
};

AssembledOperator assemble(const Grid& grid, const VectorPotential& alpha,
                           const ScalarPotential& v, const Character& chi);

AssembledOperator assemble(const Grid& grid, const VectorPotential& alpha,
                           const ScalarPotential& v);

// alpha + df with the link differential; the exact discrete gauge change.
// Conjugation by diag(e^{i f}) maps the assembled operator of alpha onto the
// one of gauge_shift(grid, alpha, f) with no discretization error.
VectorPotential gauge_shift(const Grid& grid, const VectorPotential& alpha,
                            const GaugeFunction& f);

// diag(e^{i f}) A diag(e^{-i f}); applied to the operator assembled from
// gauge_shift(grid, alpha, f) it reproduces the operator of alpha exactly.
SparseCd gauge_conjugate(const AssembledOperator& op, const GaugeFunction& f);

// Magnetic translation for the torus model field alpha_{2j} = lambda_j x_{2j-1}
// (see model_potential_torus). Shifts the wave function by an integer number
// of cells per axis and multiplies the compensating phase
//   f(x) = sum_j lambda_j shift_{2j-1} x_{2j},
// which restores commutation with the assembled operator on all links that
// do not wrap. shift is in chart length units and must be an integer
// multiple of the spacing on every axis (NonLatticeShift otherwise).
Eigen::VectorXcd apply_magnetic_translation(const Grid& grid,
                                            const Eigen::VectorXd& lambdas,
                                            const Eigen::VectorXd& shift,
                                            const Eigen::VectorXcd& u);

}  // namespace magspec
