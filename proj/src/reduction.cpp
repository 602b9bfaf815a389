#include "magspec/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magspec/closedform.hpp"
#include "magspec/errors.hpp"
#include "magspec/geometry.hpp"

namespace magspec {

namespace {

using std::numbers::pi;

double need(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigError("family parameter missing: " + key);
  return it->second;
}

double get_or(const std::map<std::string, double>& params, const std::string& key,
              double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// hyperbolic-type fiber box: deep left tail for decay room, moderate right
// arm where the exponential wall takes over
Effective1D maass_type_fiber(std::function<double(double)> v) {
  Effective1D p;
  p.lo = -44.0;
  p.hi = 8.0;
  p.n = 2600;
  p.mass_prefactor = 0.5;
  p.potential = std::move(v);
  return p;
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  int iters, double& xbest) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-13 * std::max(1.0, std::abs(a) + std::abs(b));
       ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  if (fc <= fd) {
    xbest = c;
    return fc;
  }
  xbest = d;
  return fd;
}

}  // namespace

ReducedFamily build_family(const std::string& name,
                           const std::map<std::string, double>& params) {
  ReducedFamily fam;
  fam.name = name;
  fam.params = params;
  fam.to_lambda0 = [](double v) { return v; };
  fam.normalization = "fiber value is an eigenvalue of the half-convention operator";

  if (name == "torus_landau") {
    const double lam = std::abs(need(params, "lambda"));
    fam.n_momenta = 0;
    fam.closed_level = [lam](const Eigen::VectorXd&, int k) {
      return 0.5 * lam * (2 * k + 1);
    };
    return fam;
  }

  if (name == "maass") {
    const double b = need(params, "B");
    fam.n_momenta = 1;
    fam.scan_lo = Eigen::VectorXd::Constant(1, -3.0);
    fam.scan_hi = Eigen::VectorXd::Constant(1, 3.0);
    fam.effective = [b](const Eigen::VectorXd& xi) {
      const double x = xi[0];
      return maass_type_fiber([x, b](double z) {
        const double w = x * std::exp(z) + b;
        return 0.5 * w * w + 0.125;
      });
    };
    return fam;
  }

  if (name == "sphere_bundle_h") {
    const double b = need(params, "B");
    const double m = need(params, "m");
    if (m != std::round(m)) throw InvalidQuantumNumber("fiber index m must be an integer");
    fam.n_momenta = 1;
    fam.scan_lo = Eigen::VectorXd::Constant(1, -3.0);
    fam.scan_hi = Eigen::VectorXd::Constant(1, 3.0);
    // fiber m carries the Maass operator of field -m plus the exact shift
    // (B+m)^2/2 from the circle direction
    const double shift = 0.5 * (b + m) * (b + m);
    fam.effective = [m, shift](const Eigen::VectorXd& xi) {
      const double x = xi[0];
      return maass_type_fiber([x, m, shift](double z) {
        const double w = x * std::exp(z) - m;
        return 0.5 * w * w + 0.125 + shift;
      });
    };
    return fam;
  }

  if (name == "sl2_universal") {
    const double b = need(params, "B");
    fam.n_momenta = 2;
    fam.scan_lo.resize(2);
    fam.scan_hi.resize(2);
    fam.scan_lo << -(std::abs(b) + 2.0), -3.0;
    fam.scan_hi << std::abs(b) + 2.0, 3.0;
    fam.effective = [b](const Eigen::VectorXd& xi) {
      const double phi = xi[0], x = xi[1];
      const double shift = 0.5 * (phi + b) * (phi + b);
      return maass_type_fiber([x, phi, shift](double z) {
        const double w = x * std::exp(z) - phi;
        return 0.5 * w * w + 0.125 + shift;
      });
    };
    return fam;
  }

  if (name == "nil") {
    const double b = need(params, "B");
    fam.n_momenta = 1;
    const double r = (std::abs(b) + 2.0) / (2.0 * pi);
    fam.scan_lo = Eigen::VectorXd::Constant(1, -r);
    fam.scan_hi = Eigen::VectorXd::Constant(1, r);
    fam.closed_level = [b](const Eigen::VectorXd& xi, int k) {
      return nil_family_value(b, xi[0], k);
    };
    return fam;
  }

  if (name == "sol") {
    const double bx = need(params, "Bx");
    const double by = need(params, "By");
    fam.n_momenta = 2;
    fam.scan_lo = Eigen::VectorXd::Constant(2, -2.5);
    fam.scan_hi = Eigen::VectorXd::Constant(2, 2.5);
    // family value is v = 2H - B^2 per fiber; the exponential arms decouple
    fam.effective = [bx, by](const Eigen::VectorXd& xi) {
      const double xx = xi[0], xy = xi[1];
      Effective1D p;
      p.lo = -30.0;
      p.hi = 30.0;
      p.n = 3000;
      p.mass_prefactor = 1.0;
      p.potential = [xx, xy, bx, by](double z) {
        const double ep = std::exp(z), em = std::exp(-z);
        return xx * xx * ep * ep + 2.0 * bx * xx * ep + xy * xy * em * em +
               2.0 * by * xy * em;
      };
      return p;
    };
    const double b2 = bx * bx + by * by;
    fam.to_lambda0 = [b2](double v) { return 0.5 * (v + b2); };
    fam.normalization = "fiber value v is 2H - B^2; lambda0 units are (v + B^2)/2";
    return fam;
  }

  if (name == "kepler_radial") {
    const double m = need(params, "m");
    const double b = get_or(params, "B", 0.0);
    if (m != std::round(m) || m < 0)
      throw InvalidQuantumNumber("angular momentum m must be an integer >= 0");
    fam.n_momenta = 0;
    const double r_max = get_or(params, "r_max", 60.0);
    const int n = static_cast<int>(get_or(params, "n", 5999));
    fam.effective = [m, b, r_max, n](const Eigen::VectorXd&) {
      Effective1D p;
      p.lo = 0.0;
      p.hi = r_max;
      p.n = n;
      p.mass_prefactor = 0.5;
      p.left_bc = m == 0.0 ? Bc1D::FriedrichsKepler : Bc1D::Dirichlet;
      p.richardson = true;
      p.potential = [m, b](double r) {
        return (m * m - 0.25) / (2.0 * r * r) - 1.0 / r + b * m;
      };
      return p;
    };
    return fam;
  }

  if (name == "sol_monopole") {
    const double b = need(params, "B");
    fam.n_momenta = 1;
    fam.scan_lo = Eigen::VectorXd::Constant(1, -2.0);
    fam.scan_hi = Eigen::VectorXd::Constant(1, 2.0);
    fam.effective_2d = [b](const Eigen::VectorXd& xi) {
      return sol_monopole_fiber(b, xi[0], 40, 60, 7.0, -4.0, 6.0);
    };
    return fam;
  }

  throw UnknownFamily("no reduced family named " + name);
}

double family_value(const ReducedFamily& fam, const Eigen::VectorXd& xi, int k) {
  if (xi.size() != fam.n_momenta) throw ShapeMismatch("momentum has wrong dimension");
  if (fam.closed_level) return fam.closed_level(xi, k);
  if (fam.effective) return solve_effective_1d(fam.effective(xi), k + 1).eigenvalues[k];
  if (fam.effective_2d) {
    AssembledOperator op = fam.effective_2d(xi);
    LanczosOptions opt;
    opt.k = k + 1;
    opt.tol = 1e-8;
    return lanczos_lowest(op, opt).eigenvalues[k];
  }
  throw UnknownFamily("family " + fam.name + " has no evaluator");
}

double family_lambda0_at(const ReducedFamily& fam, const Eigen::VectorXd& xi, int k) {
  return fam.to_lambda0(family_value(fam, xi, k));
}

CoverGroundState minimize_over_momenta(const ReducedFamily& fam,
                                       const MomentumScan& scan) {
  CoverGroundState out;
  if (fam.n_momenta == 0) {
    out.argmin.resize(0);
    out.value = fam.to_lambda0(family_value(fam, out.argmin, scan.rung));
    return out;
  }
  const int d = fam.n_momenta;
  if (fam.scan_lo.size() != d || fam.scan_hi.size() != d)
    throw ConfigError("family lacks a momentum window");

  // coarse cartesian scan
  const int nc = std::max(5, scan.coarse);
  Eigen::VectorXd step(d);
  for (int a = 0; a < d; ++a) step[a] = (fam.scan_hi[a] - fam.scan_lo[a]) / (nc - 1);
  long total = 1;
  for (int a = 0; a < d; ++a) total *= nc;

  std::vector<double> values(total);
  const Eigen::VectorXd center = 0.5 * (fam.scan_lo + fam.scan_hi);
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
  Eigen::VectorXd xi(d);
  double vmin = std::numeric_limits<double>::infinity();
  for (long t = 0; t < total; ++t) {
    long rem = t;
    for (int a = d - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % nc);
      rem /= nc;
    }
    for (int a = 0; a < d; ++a) xi[a] = fam.scan_lo[a] + idx[a] * step[a];
    values[t] = family_value(fam, xi, scan.rung);
    vmin = std::min(vmin, values[t]);
  }

  // among near-minimal samples prefer the one closest to the window center:
  // flat branches (fiber values independent of the momentum) should not be
  // mistaken for minima escaping the window
  const double tie = 1e-7 * std::max(1.0, std::abs(vmin)) + 1e-10;
  long best_t = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  bool interior_candidate = false;
  for (long t = 0; t < total; ++t) {
    if (values[t] > vmin + tie) continue;
    long rem = t;
    bool edge = false;
    double dist = 0.0;
    for (int a = d - 1; a >= 0; --a) {
      const int ia = static_cast<int>(rem % nc);
      rem /= nc;
      if (ia == 0 || ia == nc - 1) edge = true;
      const double x = fam.scan_lo[a] + ia * step[a];
      dist += (x - center[a]) * (x - center[a]);
    }
    interior_candidate = interior_candidate || !edge;
    if (dist < best_dist) {
      best_dist = dist;
      best_t = t;
    }
  }
  if (!interior_candidate)
    throw ScanRangeExhausted("family minimum sits on the momentum window edge; widen the scan");

  Eigen::VectorXd best_xi(d);
  {
    long rem = best_t;
    for (int a = d - 1; a >= 0; --a) {
      best_xi[a] = fam.scan_lo[a] + double(rem % nc) * step[a];
      rem /= nc;
    }
  }
  double best_v = values[best_t];

  // cyclic golden refinement, one coarse cell around the current point
  for (int sweep = 0; sweep < scan.sweeps; ++sweep) {
    for (int a = 0; a < d; ++a) {
      const double lo = std::max(fam.scan_lo[a], best_xi[a] - step[a]);
      const double hi = std::min(fam.scan_hi[a], best_xi[a] + step[a]);
      Eigen::VectorXd probe = best_xi;
      double xb = best_xi[a];
      const double vb = golden_min(
          [&](double x) {
            probe[a] = x;
            return family_value(fam, probe, scan.rung);
          },
          lo, hi, scan.golden_iters, xb);
      if (vb < best_v) {
        best_v = vb;
        best_xi[a] = xb;
      }
    }
  }

  out.value = fam.to_lambda0(best_v);
  out.argmin = best_xi;
  return out;
}

CoverGroundState abelian_cover_groundstate(const std::string& name, double b) {
  CoverGroundState out;
  out.argmin = Eigen::VectorXd::Zero(1);

  if (name == "nil") {
    for (int mmax = std::max(5, static_cast<int>(std::ceil(std::abs(b))) + 3);
         mmax < (1 << 16); mmax *= 2) {
      double best = 0.5 * b * b;  // m = 0 continuum bottom
      double arg = 0.0;
      for (int m = -mmax; m <= mmax; ++m) {
        if (m == 0) continue;
        const double v = nil_family_value(b, double(m), 0);
        if (v < best) {
          best = v;
          arg = m;
        }
      }
      // every branch beyond the window dominates both the oscillator floor
      // pi|m| and the envelope (2 pi m - |b|)^2 / 2
      const double q = 2.0 * pi * (mmax + 1) - std::abs(b);
      const double tail = std::max(pi * (mmax + 1), 0.5 * q * q);
      if (tail > best) {
        out.value = best;
        out.argmin[0] = arg;
        out.tail_margin = tail - best;
        return out;
      }
    }
    throw ScanRangeExhausted("nil branch enumeration window would not certify");
  }

  if (name == "sphere_bundle_h") {
    for (int mmax = std::max(5, static_cast<int>(std::ceil(std::abs(b))) + 3);
         mmax < (1 << 16); mmax *= 2) {
      double best = 0.5 * (b * b + 0.25);  // m = 0 fiber threshold
      double arg = 0.0;
      for (int m = -mmax; m <= mmax; ++m) {
        if (m == 0) continue;
        const double am = std::abs(m);
        const double point = 0.5 * ((b + m) * (b + m) + am);
        const double thr = 0.5 * ((b + m) * (b + m) + am * am + 0.25);
        const double v = std::min(point, thr);
        if (v < best) {
          best = v;
          arg = m;
        }
      }
      const double tail = 0.5 * (mmax + 1);  // point and threshold both exceed |m|/2
      if (tail > best) {
        out.value = best;
        out.argmin[0] = arg;
        out.tail_margin = tail - best;
        return out;
      }
    }
    throw ScanRangeExhausted("fiber enumeration window would not certify");
  }

  throw UnknownFamily("no integer-momentum ladder for family " + name);
}

AssembledOperator sol_monopole_fiber(double b, double xi_t, int nx, int nz,
                                     double x_half, double z_lo, double z_hi) {
  Geometry g;
  g.kind = GeomKind::SolCover;
  g.dim = 2;
  g.lo.resize(2);
  g.hi.resize(2);
  g.lo << -x_half, z_lo;
  g.hi << x_half, z_hi;
  g.boundary = {Boundary::Dirichlet, Boundary::Dirichlet};
  g.metric_inverse = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = std::exp(2.0 * x[1]);
    m(1, 1) = 1.0;
    return m;
  };
  g.volume_density = [](const Eigen::VectorXd&) { return 1.0; };
  g.chart_note = "sol monopole fiber slab (x, z), flat measure";

  Eigen::VectorXi n(2);
  n << nx, nz;
  Grid grid = make_grid(g, n);
  ScalarPotential v = sample_scalar_potential(grid, [b, xi_t](const Eigen::VectorXd& x) {
    const double w = xi_t + b * x[0];
    return 0.5 * std::exp(-2.0 * x[1]) * w * w;
  });
  return assemble(grid, zero_potential(grid), v);
}

AssembledOperator sol_monopole_halfplane(double b, int nx, int nz, double x_half,
                                         double z_lo, double z_hi) {
  Geometry g;
  g.kind = GeomKind::HalfPlaneHyperbolic;
  g.dim = 2;
  g.lo.resize(2);
  g.hi.resize(2);
  g.lo << -x_half, z_lo;
  g.hi << x_half, z_hi;
  g.boundary = {Boundary::Dirichlet, Boundary::Dirichlet};
  g.metric_inverse = [](const Eigen::VectorXd& x) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = std::exp(2.0 * x[1]);
    m(1, 1) = 1.0;
    return m;
  };
  g.volume_density = [](const Eigen::VectorXd& x) { return std::exp(-x[1]); };
  g.chart_note = "half plane, z = log y, x truncated";

  Eigen::VectorXi n(2);
  n << nx, nz;
  Grid grid = make_grid(g, n);
  // (b x / y)^2 / 2 in the z chart
  ScalarPotential v = sample_scalar_potential(grid, [b](const Eigen::VectorXd& x) {
    const double w = b * x[0];
    return 0.5 * std::exp(-2.0 * x[1]) * w * w;
  });
  return assemble(grid, zero_potential(grid), v);
}

}  // namespace magspec
