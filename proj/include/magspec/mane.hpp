#pragma once

#include <Eigen/Core>
#include <string>

#include "magspec/geometry.hpp"

namespace magspec {

// Minimax critical value of the classical system (alpha, V) on the flat
// torus: inf over gauge functions f of max over nodes of
//   phi_x(f) = 1/2 sum_k (alpha + Df)_k(x)^2 + V(x),
// with the same link stencil D the assembler uses. The reported value is
// the exact node maximum at the final gauge, so it upper-bounds the true
// discrete minimax no matter how the optimizer did; lower_bound is the
// mean-energy bound ||alpha_cc||^2 / (2 vol) + mean(V), which is attained
// exactly when the optimal Hamiltonian is constant.
struct MCVResult {
  double value = 0.0;
  double lower_bound = 0.0;
  double gap = 0.0;  // value - lower_bound
  int iterations = 0;
  GaugeFunction f;
  VectorPotential shifted;  // alpha + Df at the optimum
};

struct MCVOptions {
  double tol = 1e-6;    // target resolution of the softened maximum
  int max_stages = 48;  // log-sum-exp sharpening stages
  int max_inner = 400;  // descent steps per stage
  bool hodge_warm_start = true;
};

MCVResult critical_value(const Grid& grid, const VectorPotential& alpha,
                         const ScalarPotential& v, const MCVOptions& opt = {});

// Strict value: additionally minimized over the harmonic (per-axis constant)
// shifts of alpha, i.e. over the cohomology class. Coordinate golden search
// outside, critical_value inside. With no periodic axes the outer search is
// empty and this equals critical_value.
MCVResult strict_critical_value(const Grid& grid, const VectorPotential& alpha,
                                const ScalarPotential& v, const MCVOptions& opt = {});

// Closed-form reference values c(B alpha) for the curved model geometries
// (uniform field of strength B, V = 0). "torus_exact" is 0, "torus_monopole"
// has no primitive and the value is infinite.
double mane_reference(const std::string& family, double b);

struct Lambda0CCheck {
  double lambda0 = 0.0;
  double c = 0.0;
  double slack = 0.0;  // c + tol - lambda0, nonnegative when the bound holds
};

// Computes both sides of lambda0 <= c on the flat torus and throws
// ViolationFound when the inequality fails beyond tol plus the eigenvalue
// residual.
Lambda0CCheck verify_lambda0_le_c(const Grid& grid, const VectorPotential& alpha,
                                  const ScalarPotential& v, double tol = 1e-6);

}  // namespace magspec
