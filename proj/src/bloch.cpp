#include "magspec/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magspec/eigensolve.hpp"
#include "magspec/errors.hpp"

namespace magspec {

namespace {

using std::numbers::pi;

// character angles per axis: fold-th roots of unity, or a sampled circle
// for the infinite cover
std::vector<std::vector<double>> character_angles(const Grid& grid,
                                                  const CoverSpec& cover,
                                                  int samples_per_axis) {
  const int d = grid.dim();
  if (cover.folds.size() != d) throw ShapeMismatch("cover needs one fold per axis");
  std::vector<std::vector<double>> angles(d);
  for (int k = 0; k < d; ++k) {
    const int f = cover.folds[k];
    if (f < 0) throw ConfigError("cover folds must be >= 0");
    if (!grid.periodic(k)) {
      if (f > 1) throw ConfigError("cover folds need a periodic axis");
      angles[k] = {0.0};
      continue;
    }
    if (f == 1) {
      angles[k] = {0.0};
    } else if (f == 0) {
      angles[k].resize(samples_per_axis);
      for (int j = 0; j < samples_per_axis; ++j)
        angles[k][j] = 2.0 * pi * j / samples_per_axis;
    } else {
      angles[k].resize(f);
      for (int j = 0; j < f; ++j) angles[k][j] = 2.0 * pi * j / f;
    }
  }
  return angles;
}

double lambda0_at(const Grid& grid, const VectorPotential& alpha,
                  const ScalarPotential& v, const Eigen::VectorXd& theta) {
  AssembledOperator op = assemble(grid, alpha, v, make_character(grid, theta));
  return dense_spectrum(op, 1).eigenvalues[0];
}

}  // namespace

BandStructure band_structure(const Grid& grid, const VectorPotential& alpha,
                             const ScalarPotential& v, const CoverSpec& cover,
                             int k_bands, int samples_per_axis) {
  const int d = grid.dim();
  const auto angles = character_angles(grid, cover, samples_per_axis);
  long total = 1;
  for (int k = 0; k < d; ++k) total *= static_cast<long>(angles[k].size());
  if (total > 20000) throw TooLarge("character sweep too large");
  if (k_bands < 1 || k_bands > grid.size())
    throw ConfigError("band count out of range");

  BandStructure out;
  out.samples.resize(total, d + k_bands);
  Eigen::MatrixXd per_band(total, k_bands);
  Eigen::VectorXd theta(d);
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_theta = Eigen::VectorXd::Zero(d);

  for (long t = 0; t < total; ++t) {
    long rem = t;
    for (int k = d - 1; k >= 0; --k) {
      theta[k] = angles[k][rem % angles[k].size()];
      rem /= static_cast<long>(angles[k].size());
    }
    AssembledOperator op = assemble(grid, alpha, v, make_character(grid, theta));
    SpectrumResult sp = dense_spectrum(op, k_bands);
    out.samples.row(t).head(d) = theta;
    out.samples.row(t).tail(k_bands) = sp.eigenvalues;
    per_band.row(t) = sp.eigenvalues;
    if (sp.eigenvalues[0] < best) {
      best = sp.eigenvalues[0];
      best_theta = theta;
    }
  }

  // golden refinement on continuously twisted axes
  bool any_infinite = false;
  for (int k = 0; k < d; ++k) any_infinite = any_infinite || cover.folds[k] == 0;
  if (any_infinite) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int sweep = 0; sweep < 2; ++sweep)
      for (int k = 0; k < d; ++k) {
        if (cover.folds[k] != 0) continue;
        double a = best_theta[k] - 2.0 * pi / samples_per_axis;
        double b = best_theta[k] + 2.0 * pi / samples_per_axis;
        Eigen::VectorXd th = best_theta;
        double c = b - gr * (b - a), e = a + gr * (b - a);
        th[k] = c;
        double fc = lambda0_at(grid, alpha, v, th);
        th[k] = e;
        double fe = lambda0_at(grid, alpha, v, th);
        for (int i = 0; i < 40; ++i) {
          if (fc <= fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - gr * (b - a);
            th[k] = c;
            fc = lambda0_at(grid, alpha, v, th);
          } else {
            a = c;
            c = e;
            fc = fe;
            e = a + gr * (b - a);
            th[k] = e;
            fe = lambda0_at(grid, alpha, v, th);
          }
        }
        const double xb = fc <= fe ? c : e;
        const double fb = std::min(fc, fe);
        if (fb < best) {
          best = fb;
          best_theta[k] = xb;
        }
      }
  }

  out.lambda0 = best;
  out.argmin_theta = best_theta;

  // band hulls over the sampled characters, merged where they touch
  std::vector<std::pair<double, double>> hull(k_bands);
  for (int b = 0; b < k_bands; ++b)
    hull[b] = {per_band.col(b).minCoeff(), per_band.col(b).maxCoeff()};
  std::sort(hull.begin(), hull.end());
  const double scale = std::max(1.0, std::abs(hull.back().second));
  for (const auto& iv : hull) {
    if (!out.bands.empty() && iv.first <= out.bands.back().second + 1e-12 * scale)
      out.bands.back().second = std::max(out.bands.back().second, iv.second);
    else
      out.bands.push_back(iv);
  }
  return out;
}

CoverGroundState cover_groundstate_via_characters(const Grid& grid,
                                                  const VectorPotential& alpha,
                                                  const ScalarPotential& v,
                                                  const CoverSpec& cover,
                                                  int samples_per_axis) {
  BandStructure bs = band_structure(grid, alpha, v, cover, 1, samples_per_axis);
  CoverGroundState out;
  out.value = bs.lambda0;
  out.argmin = bs.argmin_theta;
  return out;
}

std::vector<double> direct_cover_oracle(const Grid& grid, const VectorPotential& alpha,
                                        const ScalarPotential& v,
                                        const Eigen::VectorXi& folds) {
  const int d = grid.dim();
  if (grid.geom.kind != GeomKind::TorusFlat)
    throw NotTorus("direct cover unrolling is defined on the flat torus");
  if (folds.size() != d) throw ShapeMismatch("cover needs one fold per axis");
  std::vector<double> lengths(d);
  Eigen::VectorXi cover_n(d);
  for (int k = 0; k < d; ++k) {
    if (folds[k] < 1 || folds[k] > 4)
      throw TooLarge("direct cover oracle supports 1 to 4 folds per axis");
    lengths[k] = grid.geom.period(k) * folds[k];
    cover_n[k] = grid.n[k] * folds[k];
  }
  Grid cg = make_grid(torus_geometry(lengths), cover_n);

  // tile fields by base index, so both spectra share every floating-point
  // input exactly
  VectorPotential ca;
  ca.a.resize(cg.size(), d);
  ScalarPotential cv;
  const bool has_v = v.v.size() > 0;
  if (has_v) cv.v.resize(cg.size());
  Eigen::VectorXi base(d);
  for (long i = 0; i < cg.size(); ++i) {
    const Eigen::VectorXi mi = cg.unindex(i);
    for (int k = 0; k < d; ++k) base[k] = mi[k] % grid.n[k];
    const long bi = grid.index(base);
    ca.a.row(i) = alpha.a.row(bi);
    if (has_v) cv.v[i] = v.v[bi];
  }

  SpectrumResult sp = dense_spectrum(assemble(cg, ca, cv), -1);
  return std::vector<double>(sp.eigenvalues.data(),
                             sp.eigenvalues.data() + sp.eigenvalues.size());
}

}  // namespace magspec
