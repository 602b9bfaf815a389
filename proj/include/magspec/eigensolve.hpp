#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "magspec/assembly.hpp"
#include "magspec/errors.hpp"

namespace magspec {

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // one column per eigenvalue, empty unless requested
  Eigen::VectorXd residuals;     // ||A x - lambda x|| / ||x||
  bool converged = true;
  std::string method;
};

// Full dense solve; guards against runaway problem sizes.
SpectrumResult dense_spectrum(const AssembledOperator& op, int k = -1,
                              bool want_vectors = false);
SpectrumResult dense_spectrum(const Eigen::MatrixXcd& a, int k = -1,
                              bool want_vectors = false);

// Lowest k eigenvalues of a symmetric tridiagonal matrix by Sturm-count
// bisection. off has size n-1.
Eigen::VectorXd symmetric_tridiagonal_lowest(const Eigen::VectorXd& diag,
                                             const Eigen::VectorXd& off, int k);

// --- 1D effective problems (fiber operators of the reductions) ---

// mass_prefactor * (-d^2/dx^2) + potential on (lo, hi), discretized on the
// n interior nodes lo + (j+1) h, h = (hi-lo)/(n+1), walls exactly at lo, hi.
enum class Bc1D {
  Dirichlet,        // hard wall
  FriedrichsKepler, // wall at a coordinate singularity; Richardson in h
  Decay             // wall far in a classically forbidden region; certified
};

struct Effective1D {
  double lo = 0.0;
  double hi = 1.0;
  int n = 1000;
  std::function<double(double)> potential;
  double mass_prefactor = 0.5;
  Bc1D left_bc = Bc1D::Dirichlet;
  Bc1D right_bc = Bc1D::Dirichlet;
  double decay_tol = 1e-8; // max boundary amplitude relative to the peak
  // eliminate the h^2 error from levels via n and 2n+1 interior nodes
  // (always on for the cell-centered FriedrichsKepler scheme, with 2n cells)
  bool richardson = false;

  double spacing() const { return (hi - lo) / (n + 1); }
  Eigen::VectorXd nodes() const;
  Eigen::VectorXd effective_potential() const; // potential on the nodes
};

// Lowest k eigenpairs by bisection plus shifted inverse iteration. A side
// marked Decay gets its eigenvector amplitude at the wall checked against
// decay_tol (BoundaryAmplitudeTooLarge when the box was too small). A left
// FriedrichsKepler wall switches to the cell-centered flux scheme (nodes at
// (j-1/2) h, flux through the r = 0 face exactly zero) and always runs the
// h, h/2 Richardson pass.
SpectrumResult solve_effective_1d(const Effective1D& prob, int k = 1,
                                  bool want_vectors = false);

// --- thick-restart Lanczos ---

struct LanczosOptions {
  int k = 1;
  int max_basis = 80;
  int max_restarts = 400;
  double tol = 1e-9;       // residual tolerance, relative to the Ritz scale
  unsigned seed = 12345;
  bool want_vectors = false;
};

// Hermitian thick-restart Lanczos with full reorthogonalization inside the
// active basis. Restart keeps the lowest Ritz vectors plus the residual
// direction; the projected matrix is re-assembled from actual inner
// products, so the arrowhead fill-in after a restart needs no bookkeeping.
template <class Scalar>
class ThickRestartLanczos {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using MatMul = std::function<void(const Vector&, Vector&)>;

  ThickRestartLanczos(Eigen::Index n, MatMul apply) : n_(n), apply_(std::move(apply)) {}

  ThickRestartLanczos& set_options(const LanczosOptions& o) { opt_ = o; return *this; }

  SpectrumResult run() {
    const int m = static_cast<int>(std::min<Eigen::Index>(opt_.max_basis, n_));
    const int k = std::min<int>(opt_.k, m - 1);
    Matrix v(n_, m + 1);
    Matrix t = Matrix::Zero(m + 1, m + 1);
    std::mt19937 rng(opt_.seed);
    std::normal_distribution<Real> gauss(Real(0), Real(1));
    for (Eigen::Index i = 0; i < n_; ++i) v(i, 0) = random_scalar(gauss, rng);
    v.col(0) /= v.col(0).norm();

    int s = 0;           // columns already in the basis beyond the active one
    Real scale = Real(1);
    Eigen::VectorXd ritz;
    Eigen::VectorXd res_est;
    Matrix ritz_vecs;

    for (int cycle = 0; cycle <= opt_.max_restarts; ++cycle) {
      // expand until the basis is full
      while (s < m) {
        Vector w(n_);
        apply_(v.col(s), w);
        // two projection sweeps; coefficients of the first are the T column
        Vector c = v.leftCols(s + 1).adjoint() * w;
        w.noalias() -= v.leftCols(s + 1) * c;
        Vector c2 = v.leftCols(s + 1).adjoint() * w;
        w.noalias() -= v.leftCols(s + 1) * c2;
        c += c2;
        const Real beta = w.norm();
        t.col(s).head(s + 1) = c;
        t.row(s).head(s + 1) = c.adjoint();
        t(s + 1, s) = Scalar(beta);
        t(s, s + 1) = Scalar(beta);
        scale = std::max(scale, c.cwiseAbs().maxCoeff());
        if (beta <= Real(1e-14) * scale) {
          // invariant subspace; restart the residual direction at random
          for (Eigen::Index i = 0; i < n_; ++i) w(i) = random_scalar(gauss, rng);
          w -= v.leftCols(s + 1) * (v.leftCols(s + 1).adjoint() * w).eval();
          w /= w.norm();
          v.col(s + 1) = w;
        } else {
          v.col(s + 1) = w / beta;
        }
        ++s;
      }

      Eigen::SelfAdjointEigenSolver<Matrix> es(t.topLeftCorner(s, s));
      const Real beta = std::abs(t(s, s - 1));
      ritz = es.eigenvalues().template cast<double>();
      ritz_vecs = es.eigenvectors();
      res_est.resize(s);
      for (int i = 0; i < s; ++i)
        res_est[i] = static_cast<double>(beta * std::abs(ritz_vecs(s - 1, i)));

      int good = 0;
      while (good < k && res_est[good] <= opt_.tol * std::max<double>(1.0, scale)) ++good;
      if (good >= k || cycle == opt_.max_restarts) {
        if (good < k)
          throw NotConverged("lanczos: residual above tolerance after restart budget",
                             std::vector<double>(ritz.data(), ritz.data() + k),
                             res_est.head(k).maxCoeff());
        return finish(v, ritz, ritz_vecs, k, s);
      }

      // thick restart: lowest Ritz vectors plus the residual direction
      const int keep = std::min(s - 1, std::max(2 * k, k + 8));
      Matrix kept = v.leftCols(s) * ritz_vecs.leftCols(keep);
      v.leftCols(keep) = kept;
      v.col(keep) = v.col(s);
      t.setZero();
      for (int i = 0; i < keep; ++i) t(i, i) = Scalar(ritz[i]);
      s = keep;
    }
    throw NotConverged("lanczos: restart loop exited unexpectedly", {}, 0.0);
  }

 private:
  static Scalar random_scalar(std::normal_distribution<Real>& g, std::mt19937& rng) {
    if constexpr (Eigen::NumTraits<Scalar>::IsComplex)
      return Scalar(g(rng), g(rng));
    else
      return Scalar(g(rng));
  }

  SpectrumResult finish(const Matrix& v, const Eigen::VectorXd& ritz,
                        const Matrix& ritz_vecs, int k, int s) {
    SpectrumResult out;
    out.method = "lanczos";
    out.eigenvalues = ritz.head(k);
    out.residuals.resize(k);
    Matrix x = v.leftCols(s) * ritz_vecs.leftCols(k);
    for (int i = 0; i < k; ++i) {
      Vector ax(n_);
      apply_(x.col(i), ax);
      out.residuals[i] = static_cast<double>(
          (ax - Scalar(ritz[i]) * x.col(i)).norm() / x.col(i).norm());
    }
    if (opt_.want_vectors) out.eigenvectors = x.template cast<std::complex<double>>();
    return out;
  }

  Eigen::Index n_;
  MatMul apply_;
  LanczosOptions opt_{};
};

SpectrumResult lanczos_lowest(const AssembledOperator& op, LanczosOptions opt = {});

}  // namespace magspec
