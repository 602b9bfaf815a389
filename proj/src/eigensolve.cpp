#include "magspec/eigensolve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace magspec {

namespace {

using cd = std::complex<double>;

// eigenvalue count of the symmetric tridiagonal (a, b) strictly below x,
// by the standard LDL^T pivot recurrence
int sturm_count(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double x,
                double pivmin) {
  int count = 0;
  double d = a[0] - x;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0) ++count;
  for (Eigen::Index i = 1; i < a.size(); ++i) {
    d = a[i] - x - b[i - 1] * b[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
  }
  return count;
}

// one solve of (T - sigma) y = rhs with partial pivoting, dgtsv style
void shifted_tridiag_solve(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                           double sigma, Eigen::VectorXd& y) {
  const Eigen::Index n = a.size();
  Eigen::VectorXd dl = b, d = a.array() - sigma, du = b, du2 = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = 1e-300;
      const double m = dl[i] / d[i];
      d[i + 1] -= m * du[i];
      y[i + 1] -= m * y[i];
      dl[i] = 0.0;
    } else {
      const double m = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - m * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -m * du[i + 1];
      }
      du[i] = tmp;
      std::swap(y[i], y[i + 1]);
      y[i + 1] -= m * y[i];
      dl[i] = m;  // unused afterwards, kept for clarity
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  y[n - 1] /= d[n - 1];
  if (n >= 2) y[n - 2] = (y[n - 2] - du[n - 2] * y[n - 1]) / d[n - 2];
  for (Eigen::Index i = n - 3; i >= 0; --i)
    y[i] = (y[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / d[i];
}

Eigen::VectorXd tridiag_apply(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& x) {
  const Eigen::Index n = a.size();
  Eigen::VectorXd y = a.cwiseProduct(x);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    y[i] += b[i] * x[i + 1];
    y[i + 1] += b[i] * x[i];
  }
  return y;
}

Eigen::VectorXd tridiag_eigenvector(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                    double lambda,
                                    const std::vector<Eigen::VectorXd>& lower) {
  const Eigen::Index n = a.size();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  for (int it = 0; it < 5; ++it) {
    shifted_tridiag_solve(a, b, lambda, x);
    for (const auto& u : lower) x -= u.dot(x) * u;
    const double nrm = x.norm();
    if (nrm == 0.0) {
      x.setOnes();
      continue;
    }
    x /= nrm;
    const double res = (tridiag_apply(a, b, x) - lambda * x).norm();
    if (res < 1e-11 * std::max(1.0, std::abs(lambda))) break;
  }
  return x;
}

struct Tridiag1D {
  Eigen::VectorXd a, b;
};

Tridiag1D discretize(const Effective1D& prob, int n) {
  Tridiag1D t;
  if (prob.left_bc == Bc1D::FriedrichsKepler) {
    // substitute u = sqrt(r) w; the centrifugal -1/(8 r^2) cancels and the
    // radial flux r w' vanishes exactly at the r = 0 face of a cell-centered
    // grid, which is the Friedrichs extension. Faces at j h, nodes at
    // (j - 1/2) h, matrix written back in the u variables.
    if (prob.lo != 0.0)
      throw ConfigError("friedrichs kepler scheme starts at r = 0");
    if (prob.mass_prefactor != 0.5)
      throw ConfigError("friedrichs kepler scheme assumes mass prefactor 1/2");
    const double h = prob.hi / n;
    const double kin = 0.5 / (h * h);
    t.a.resize(n);
    t.b.resize(n - 1);
    for (int j = 1; j <= n; ++j) {
      const double r = (j - 0.5) * h;
      t.a[j - 1] = 2.0 * kin + prob.potential(r) + 1.0 / (8.0 * r * r);
      if (j < n) t.b[j - 1] = -kin * j / std::sqrt((j - 0.5) * (j + 0.5));
    }
    return t;
  }
  const double h = (prob.hi - prob.lo) / (n + 1);
  const double kin = prob.mass_prefactor / (h * h);
  t.a.resize(n);
  t.b = Eigen::VectorXd::Constant(n - 1, -kin);
  for (int j = 0; j < n; ++j) t.a[j] = 2.0 * kin + prob.potential(prob.lo + (j + 1) * h);
  return t;
}

SpectrumResult solve_tridiag(const Tridiag1D& t, int k, bool vectors) {
  SpectrumResult out;
  out.method = "fd1d";
  out.eigenvalues = symmetric_tridiagonal_lowest(t.a, t.b, k);
  out.residuals.resize(k);
  out.eigenvectors.resize(vectors ? t.a.size() : 0, vectors ? k : 0);
  std::vector<Eigen::VectorXd> cluster;
  const double scale = t.a.cwiseAbs().maxCoeff() + 2.0 * t.b.cwiseAbs().maxCoeff();
  for (int j = 0; j < k; ++j) {
    if (j > 0 && out.eigenvalues[j] - out.eigenvalues[j - 1] > 1e-7 * scale)
      cluster.clear();
    Eigen::VectorXd x = tridiag_eigenvector(t.a, t.b, out.eigenvalues[j], cluster);
    cluster.push_back(x);
    out.residuals[j] = (tridiag_apply(t.a, t.b, x) - out.eigenvalues[j] * x).norm();
    if (vectors) out.eigenvectors.col(j) = x.cast<cd>();
  }
  return out;
}

}  // namespace

Eigen::VectorXd symmetric_tridiagonal_lowest(const Eigen::VectorXd& diag,
                                             const Eigen::VectorXd& off, int k) {
  const Eigen::Index n = diag.size();
  if (off.size() != n - 1) throw ShapeMismatch("tridiagonal off-diagonal size");
  if (k < 1 || k > n) throw ConfigError("tridiagonal eigenvalue count out of range");
  double lo = diag[0], hi = diag[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i < n - 1) r += std::abs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double pivmin = 1e-280 * scale;
  Eigen::VectorXd out(k);
  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    // stop relative to the eigenvalue itself, not the Gershgorin span:
    // exponential walls can push the span 20+ orders above the low levels
    for (int it = 0; it < 2000; ++it) {
      const double width = 4e-16 * std::max(std::abs(a), std::abs(b)) + 1e-300;
      if (b - a <= width) break;
      const double mid = 0.5 * (a + b);
      if (sturm_count(diag, off, mid, pivmin) >= j + 1)
        b = mid;
      else
        a = mid;
    }
    out[j] = 0.5 * (a + b);
  }
  return out;
}

SpectrumResult dense_spectrum(const Eigen::MatrixXcd& a, int k, bool want_vectors) {
  if (a.rows() != a.cols()) throw ShapeMismatch("dense solve needs a square matrix");
  if (a.rows() > 4096) throw TooLarge("dense solve capped at 4096 nodes; use lanczos");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      a, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  const int total = static_cast<int>(a.rows());
  const int kk = (k < 0 || k > total) ? total : k;
  SpectrumResult out;
  out.method = "dense";
  out.eigenvalues = es.eigenvalues().head(kk);
  out.residuals = Eigen::VectorXd::Zero(kk);
  if (want_vectors) {
    out.eigenvectors = es.eigenvectors().leftCols(kk);
    for (int i = 0; i < kk; ++i)
      out.residuals[i] =
          (a * out.eigenvectors.col(i) - cd(out.eigenvalues[i]) * out.eigenvectors.col(i))
              .norm();
  }
  return out;
}

SpectrumResult dense_spectrum(const AssembledOperator& op, int k, bool want_vectors) {
  if (op.size() > 4096) throw TooLarge("dense solve capped at 4096 nodes; use lanczos");
  SpectrumResult out = dense_spectrum(Eigen::MatrixXcd(op.matrix), k, want_vectors);
  return out;
}

Eigen::VectorXd Effective1D::nodes() const {
  Eigen::VectorXd x(n);
  const double h = spacing();
  for (int j = 0; j < n; ++j) x[j] = lo + (j + 1) * h;
  return x;
}

Eigen::VectorXd Effective1D::effective_potential() const {
  Eigen::VectorXd x = nodes();
  for (int j = 0; j < n; ++j) x[j] = potential(x[j]);
  return x;
}

SpectrumResult solve_effective_1d(const Effective1D& prob, int k, bool want_vectors) {
  if (!(prob.hi > prob.lo)) throw DegenerateChart("1D problem needs hi > lo");
  if (prob.n < 8) throw TooCoarse("1D problem needs at least 8 nodes");
  if (!prob.potential) throw ConfigError("1D problem needs a potential");
  if (prob.right_bc == Bc1D::FriedrichsKepler)
    throw ConfigError("friedrichs wall only supported at the left endpoint");

  const bool cell_centered = prob.left_bc == Bc1D::FriedrichsKepler;
  const bool richardson = prob.richardson || cell_centered;
  const bool need_vectors =
      want_vectors || prob.left_bc == Bc1D::Decay || prob.right_bc == Bc1D::Decay;

  // 2n+1 interior nodes (2n cells when cell-centered) halve the spacing exactly
  const int fine_n = !richardson ? prob.n : cell_centered ? 2 * prob.n : 2 * prob.n + 1;
  SpectrumResult fine = solve_tridiag(discretize(prob, fine_n),
                                      k, need_vectors);
  if (richardson) {
    SpectrumResult coarse = solve_tridiag(discretize(prob, prob.n), k, false);
    fine.eigenvalues = (4.0 * fine.eigenvalues - coarse.eigenvalues) / 3.0;
    fine.method = "fd1d+richardson";
  }

  for (int j = 0; j < k && need_vectors; ++j) {
    const Eigen::VectorXd u = fine.eigenvectors.col(j).real();
    const double peak = u.cwiseAbs().maxCoeff();
    if (prob.left_bc == Bc1D::Decay && std::abs(u[0]) > prob.decay_tol * peak)
      throw BoundaryAmplitudeTooLarge("eigenfunction has not decayed at the left wall",
                                      std::abs(u[0]) / peak);
    if (prob.right_bc == Bc1D::Decay && std::abs(u[u.size() - 1]) > prob.decay_tol * peak)
      throw BoundaryAmplitudeTooLarge("eigenfunction has not decayed at the right wall",
                                      std::abs(u[u.size() - 1]) / peak);
  }
  if (!want_vectors) fine.eigenvectors.resize(0, 0);
  return fine;
}

SpectrumResult lanczos_lowest(const AssembledOperator& op, LanczosOptions opt) {
  const SparseCd& a = op.matrix;
  ThickRestartLanczos<cd>::MatMul apply = [&a](const Eigen::VectorXcd& x,
                                               Eigen::VectorXcd& y) {
    y.noalias() = a * x;
  };
  return ThickRestartLanczos<cd>(op.size(), apply).set_options(opt).run();
}

}  // namespace magspec
