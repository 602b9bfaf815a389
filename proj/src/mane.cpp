#include "magspec/mane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "magspec/assembly.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/errors.hpp"

namespace magspec {

namespace {

// node Hamiltonian values phi_x = 1/2 sum_k (alpha + Df)_k(x)^2 + V(x)
Eigen::VectorXd node_energies(const Grid& grid, const VectorPotential& alpha,
                              const ScalarPotential& v, const GaugeFunction& f) {
  VectorPotential shifted = gauge_shift(grid, alpha, f);
  Eigen::VectorXd phi = 0.5 * shifted.a.rowwise().squaredNorm();
  if (v.v.size() > 0) phi += v.v;
  return phi;
}

double softmax(const Eigen::VectorXd& phi, double beta) {
  const double m = phi.maxCoeff();
  return m + std::log(((phi.array() - m) * beta).exp().sum()) / beta;
}

// d softmax / d f through the link stencil
Eigen::VectorXd softmax_gradient(const Grid& grid, const VectorPotential& alpha,
                                 const GaugeFunction& f, const Eigen::VectorXd& phi,
                                 double beta) {
  const double m = phi.maxCoeff();
  Eigen::VectorXd p = ((phi.array() - m) * beta).exp();
  p /= p.sum();
  VectorPotential shifted = gauge_shift(grid, alpha, f);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(grid.size());
  for (long i = 0; i < grid.size(); ++i) {
    for (int k = 0; k < grid.dim(); ++k) {
      bool wrapped = false;
      const long j = grid.neighbor(i, k, wrapped);
      if (j < 0) continue;
      const double g = p[i] * shifted.a(i, k) / grid.h[k];
      grad[j] += g;
      grad[i] -= g;
    }
  }
  return grad;
}

}  // namespace

MCVResult critical_value(const Grid& grid, const VectorPotential& alpha,
                         const ScalarPotential& v, const MCVOptions& opt) {
  if (grid.geom.kind != GeomKind::TorusFlat)
    throw NotTorus("critical value optimization runs on the flat torus");
  const long n = grid.size();
  const double vol = grid.cell_volume() * double(n);

  MCVResult out;
  HodgeSplit hodge = hodge_decompose_torus(grid, alpha);
  out.lower_bound = (form_norm2(grid, hodge.harmonic_in_kernel) +
                     form_norm2(grid, hodge.harmonic_perp) +
                     form_norm2(grid, hodge.coexact)) /
                    (2.0 * vol);
  if (v.v.size() > 0) out.lower_bound += v.v.mean();

  // start at the gauge cancelling the exact part of alpha
  GaugeFunction f = opt.hodge_warm_start ? GaugeFunction(-hodge.potential)
                                         : GaugeFunction(GaugeFunction::Zero(n));

  Eigen::VectorXd phi = node_energies(grid, alpha, v, f);
  double beta = 8.0 / std::max(1.0, phi.maxCoeff() - phi.minCoeff());
  const double beta_stop = 4.0 * std::log(double(n) + 1.0) / std::max(opt.tol, 1e-12);
  double step = 1.0;  // Armijo backtracking retunes it across stages
  int iters = 0;

  for (int stage = 0; stage < opt.max_stages; ++stage) {
    double s = softmax(phi, beta);
    for (int it = 0; it < opt.max_inner; ++it) {
      Eigen::VectorXd grad = softmax_gradient(grid, alpha, f, phi, beta);
      const double g2 = grad.squaredNorm();
      if (g2 == 0.0) break;
      bool moved = false;
      for (int half = 0; half < 30; ++half) {
        Eigen::VectorXd f_try = f - step * grad;
        Eigen::VectorXd phi_try = node_energies(grid, alpha, v, f_try);
        const double s_try = softmax(phi_try, beta);
        if (s_try <= s - 0.25 * step * g2) {
          f = std::move(f_try);
          phi = std::move(phi_try);
          const double drop = s - s_try;
          s = s_try;
          moved = true;
          ++iters;
          step *= 1.6;
          if (drop < opt.tol * 1e-2) it = opt.max_inner;  // stage converged
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (beta >= beta_stop) break;
    beta = std::min(beta * 3.0, beta_stop);
  }

  f.array() -= f.mean();  // fix the constant gauge freedom
  out.f = f;
  out.shifted = gauge_shift(grid, alpha, f);
  phi = node_energies(grid, alpha, v, f);
  out.value = phi.maxCoeff();  // exact maximum: always a sound upper bound
  out.gap = out.value - out.lower_bound;
  out.iterations = iters;
  return out;
}

MCVResult strict_critical_value(const Grid& grid, const VectorPotential& alpha,
                                const ScalarPotential& v, const MCVOptions& opt) {
  const int d = grid.dim();
  std::vector<int> axes;
  for (int k = 0; k < d; ++k)
    if (grid.periodic(k)) axes.push_back(k);
  if (axes.empty()) return critical_value(grid, alpha, v, opt);

  MCVOptions inner = opt;
  inner.tol = std::max(opt.tol, 1e-8);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(d);
  // spend the outer budget on the harmonic (constant-form) coefficients
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](const Eigen::VectorXd& s) {
    VectorPotential a2;
    a2.a = alpha.a;
    for (int k = 0; k < d; ++k) a2.a.col(k).array() -= s[k];
    return critical_value(grid, a2, v, inner).value;
  };

  for (int k : axes) shift[k] = alpha.a.col(k).mean();
  double best = eval(shift);
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (int k : axes) {
      const double radius = alpha.a.col(k).cwiseAbs().maxCoeff() + 1.0;
      double a = shift[k] - radius, b = shift[k] + radius;
      Eigen::VectorXd s = shift;
      double c = b - gr * (b - a), e = a + gr * (b - a);
      s[k] = c;
      double fc = eval(s);
      s[k] = e;
      double fe = eval(s);
      for (int i = 0; i < 40; ++i) {
        if (fc <= fe) {
          b = e;
          e = c;
          fe = fc;
          c = b - gr * (b - a);
          s[k] = c;
          fc = eval(s);
        } else {
          a = c;
          c = e;
          fc = fe;
          e = a + gr * (b - a);
          s[k] = e;
          fe = eval(s);
        }
      }
      const double xb = fc <= fe ? c : e;
      const double fb = std::min(fc, fe);
      if (fb < best) {
        best = fb;
        shift[k] = xb;
      }
    }
  }

  VectorPotential a2;
  a2.a = alpha.a;
  for (int k = 0; k < d; ++k) a2.a.col(k).array() -= shift[k];
  return critical_value(grid, a2, v, opt);
}

double mane_reference(const std::string& family, double b) {
  if (family == "hyperbolic" || family == "maass") return 0.5 * b * b;
  if (family == "sphere_bundle_h") return 0.5 * b * b;
  if (family == "sl2_universal") return 0.25 * b * b;
  if (family == "nil") return 0.5 * b * b;
  if (family == "sol") return 0.5 * b * b;
  if (family == "torus_exact") return 0.0;
  if (family == "torus_monopole") return std::numeric_limits<double>::infinity();
  throw UnknownGeometry("no critical-value reference for " + family);
}

Lambda0CCheck verify_lambda0_le_c(const Grid& grid, const VectorPotential& alpha,
                                  const ScalarPotential& v, double tol) {
  AssembledOperator op = assemble(grid, alpha, v);
  SpectrumResult sp = dense_spectrum(op, 1, true);
  MCVResult mcv = critical_value(grid, alpha, v);
  Lambda0CCheck out;
  out.lambda0 = sp.eigenvalues[0];
  out.c = mcv.value;
  out.slack = out.c + tol + sp.residuals[0] - out.lambda0;
  if (out.slack < 0.0)
    throw ViolationFound("ground energy exceeds the critical value", out.lambda0,
                         out.c);
  return out;
}

}  // namespace magspec
