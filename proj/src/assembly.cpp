#include "magspec/assembly.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "magspec/errors.hpp"

namespace magspec {

namespace {

using cd = std::complex<double>;

double wrap_angle(double t) {
  // reduce to (-pi, pi]
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(t, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

}  // namespace

Character make_character(const Grid& grid, const Eigen::VectorXd& angles) {
  if (angles.size() != grid.dim())
    throw ShapeMismatch("character needs one angle per axis");
  Character chi;
  chi.theta = Eigen::VectorXd::Zero(grid.dim());
  for (int k = 0; k < grid.dim(); ++k)
    if (grid.periodic(k)) chi.theta[k] = wrap_angle(angles[k]);
  return chi;
}

AssembledOperator assemble(const Grid& grid, const VectorPotential& alpha,
                           const ScalarPotential& v, const Character& chi) {
  const Eigen::Index n = grid.size();
  const int d = grid.dim();
  if (alpha.a.rows() != n || alpha.a.cols() != d)
    throw ShapeMismatch("vector potential has wrong node x axis shape");
  const bool has_v = v.v.size() > 0;
  if (has_v && v.v.size() != n)
    throw ShapeMismatch("scalar potential has wrong node count");
  if (chi.theta.size() != d)
    throw ShapeMismatch("character has wrong axis count");

  const double cell = grid.cell_volume();

  // per-node volume density and diagonal inverse metric
  Eigen::VectorXd dens(n);
  Eigen::MatrixXd ginv_diag(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = grid.node(i);
    const Eigen::MatrixXd ginv = grid.geom.metric_inverse(x);
    const double scale = std::max(1.0, ginv.cwiseAbs().maxCoeff());
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        if (r != c && std::abs(ginv(r, c)) > 1e-12 * scale)
          throw ShapeMismatch(
              "assemble needs a diagonal chart metric; reduce the geometry "
              "to a fibered family first");
    dens[i] = grid.geom.volume_density(x);
    ginv_diag.row(i) = ginv.diagonal().transpose();
  }

  AssembledOperator out;
  out.grid = grid;
  out.measure = dens * cell;
  out.min_potential = has_v ? v.v.minCoeff() : 0.0;

  // mu^{-1/2}, for the symmetric similarity transform of the form matrix
  Eigen::VectorXd inv_sqrt_mu = out.measure.cwiseSqrt().cwiseInverse();

  std::vector<Eigen::Triplet<cd>> trips;
  trips.reserve(static_cast<size_t>(n) * (2 * d + 1));
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXi mi = grid.unindex(i);
    for (int k = 0; k < d; ++k) {
      const double inv_h2 = 1.0 / (grid.h[k] * grid.h[k]);
      const double ci = ginv_diag(i, k) * dens[i];
      bool wrapped = false;
      const Eigen::Index j = grid.neighbor(i, k, wrapped);
      if (j >= 0) {
        const double w = 0.5 * (ci + ginv_diag(j, k) * dens[j]) * cell;
        const double wt = 0.5 * w * inv_h2;  // half convention
        double phase = grid.h[k] * alpha.a(i, k);
        if (wrapped) phase += chi.theta[k];
        const cd hop = -wt * std::exp(cd(0.0, phase));
        // q contributes wt(|u_j|^2 + |u_i|^2) - 2 wt Re(e^{i phase} u_j conj(u_i))
        diag[i] += wt;
        diag[j] += wt;
        trips.emplace_back(i, j, hop * inv_sqrt_mu[i] * inv_sqrt_mu[j]);
        trips.emplace_back(j, i, std::conj(hop) * inv_sqrt_mu[i] * inv_sqrt_mu[j]);
      } else {
        // wall on the + side: ghost node held at zero one spacing out
        diag[i] += 0.5 * ci * cell * inv_h2;
      }
      if (!grid.periodic(k) && mi[k] == 0) {
        // wall on the - side of the first node
        diag[i] += 0.5 * ci * cell * inv_h2;
      }
    }
  }

  // diagonal emitted only after every link deposited its two endpoint
  // weights; wrap links reach back to the first node of their axis line
  for (Eigen::Index i = 0; i < n; ++i) {
    if (has_v) diag[i] += v.v[i] * out.measure[i];
    trips.emplace_back(i, i, cd(diag[i] * inv_sqrt_mu[i] * inv_sqrt_mu[i], 0.0));
  }

  out.matrix.resize(n, n);
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  out.matrix.makeCompressed();

  // paranoia: the triplets above are conjugate-symmetric by construction,
  // so any asymmetry means a broken metric or potential evaluator
  SparseCd adj = SparseCd(out.matrix.adjoint());
  double asym = 0.0;
  for (Eigen::Index c = 0; c < out.matrix.outerSize(); ++c)
    for (SparseCd::InnerIterator it(out.matrix, c), jt(adj, c); it; ++it, ++jt)
      asym = std::max(asym, std::abs(it.value() - jt.value()));
  if (asym > 1e-12 * std::max(1.0, out.matrix.coeffs().cwiseAbs().maxCoeff()))
    throw NonHermitianAssembly("assembled matrix is not Hermitian, max asymmetry " +
                               std::to_string(asym));

  return out;
}

AssembledOperator assemble(const Grid& grid, const VectorPotential& alpha,
                           const ScalarPotential& v) {
  return assemble(grid, alpha, v, Character::trivial(grid.dim()));
}

VectorPotential gauge_shift(const Grid& grid, const VectorPotential& alpha,
                            const GaugeFunction& f) {
  if (alpha.a.rows() != grid.size() || alpha.a.cols() != grid.dim())
    throw ShapeMismatch("vector potential has wrong node x axis shape");
  VectorPotential df = link_differential(grid, f);
  VectorPotential out;
  out.a = alpha.a + df.a;
  return out;
}

SparseCd gauge_conjugate(const AssembledOperator& op, const GaugeFunction& f) {
  if (f.size() != op.size()) throw ShapeMismatch("gauge function has wrong node count");
  // diag(e^{i f}) A diag(e^{-i f}): undoes the phase picked up by gauge_shift
  Eigen::VectorXcd left(op.size()), right(op.size());
  for (Eigen::Index i = 0; i < op.size(); ++i) {
    left[i] = std::exp(cd(0.0, f[i]));
    right[i] = std::conj(left[i]);
  }
  return left.asDiagonal() * op.matrix * right.asDiagonal();
}

Eigen::VectorXcd apply_magnetic_translation(const Grid& grid,
                                            const Eigen::VectorXd& lambdas,
                                            const Eigen::VectorXd& shift,
                                            const Eigen::VectorXcd& u) {
  const int d = grid.dim();
  if (2 * lambdas.size() != d)
    throw OddDimensionPairing("magnetic translation pairs axes (2j-1, 2j)");
  if (shift.size() != d) throw ShapeMismatch("shift has wrong axis count");
  if (u.size() != grid.size()) throw ShapeMismatch("state has wrong node count");

  Eigen::VectorXi cells(d);
  for (int k = 0; k < d; ++k) {
    const double s = shift[k] / grid.h[k];
    const double r = std::round(s);
    if (std::abs(s - r) > 1e-9)
      throw NonLatticeShift("shift must be an integer number of cells per axis");
    cells[k] = static_cast<int>(r);
  }

  Eigen::VectorXcd out(u.size());
  Eigen::VectorXi tm(d);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXi mi = grid.unindex(i);
    bool off = false;
    for (int k = 0; k < d; ++k) {
      int t = mi[k] + cells[k];
      if (grid.periodic(k)) {
        t %= grid.n[k];
        if (t < 0) t += grid.n[k];
      } else if (t < 0 || t >= grid.n[k]) {
        off = true;
        break;
      }
      tm[k] = t;
    }
    if (off) {
      out[i] = cd(0.0, 0.0);
      continue;
    }
    // f(x) = sum_j lambda_j shift_{2j-1} x_{2j}, matching the model field
    // alpha_{2j} = lambda_j x_{2j-1}
    double f = 0.0;
    for (Eigen::Index j = 0; j < lambdas.size(); ++j)
      f += lambdas[j] * shift[2 * j] * grid.coordinate(2 * j + 1, mi[2 * j + 1]);
    out[i] = std::exp(cd(0.0, f)) * u[grid.index(tm)];
  }
  return out;
}

}  // namespace magspec
