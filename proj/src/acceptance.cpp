#include "magspec/acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "magspec/assembly.hpp"
#include "magspec/bloch.hpp"
#include "magspec/closedform.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/errors.hpp"
#include "magspec/geometry.hpp"
#include "magspec/mane.hpp"
#include "magspec/reduction.hpp"

namespace magspec {

namespace {

using Eigen::VectorXd;
using std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Headline errors share the criterion's printed bound; side checks carry
// their own tolerance and only report through pass/detail.
struct Scorecard {
  double worst = 0.0;
  std::vector<std::string> fails;

  double headline(double err) {
    worst = std::max(worst, std::abs(err));
    return err;
  }
  void side(double err, double bound, const std::string& what) {
    if (!(std::abs(err) <= bound))
      fails.push_back(what + " = " + fmt(err) + ", want |.| <= " + fmt(bound));
  }
  void require(bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
  }
  void seal(CriterionResult& r) const {
    r.measured = worst;
    r.pass = fails.empty() && worst <= r.bound;
    std::string d;
    for (const auto& f : fails) {
      if (!d.empty()) d += "; ";
      d += f;
    }
    r.detail = d;
  }
};

// random smooth periodic data: short cosine series with integer wavenumbers
struct TrigSeries {
  std::vector<VectorXd> freq;
  std::vector<double> c, phi;

  double operator()(const VectorXd& x) const {
    double s = 0.0;
    for (size_t t = 0; t < c.size(); ++t) s += c[t] * std::cos(freq[t].dot(x) + phi[t]);
    return s;
  }
};

TrigSeries random_series(const Grid& grid, std::mt19937& rng, double amp, int terms) {
  std::uniform_int_distribution<int> mode(-2, 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigSeries s;
  const int d = grid.dim();
  for (int t = 0; t < terms; ++t) {
    VectorXd f(d);
    for (int k = 0; k < d; ++k) f[k] = 2.0 * pi * mode(rng) / grid.geom.period(k);
    s.freq.push_back(f);
    s.c.push_back(amp * u(rng));
    s.phi.push_back(pi * u(rng));
  }
  return s;
}

VectorPotential random_alpha(const Grid& grid, std::mt19937& rng, double amp) {
  const int d = grid.dim();
  std::vector<TrigSeries> comp;
  for (int k = 0; k < d; ++k) comp.push_back(random_series(grid, rng, amp, 3));
  return sample_vector_potential(grid, [comp, d](const VectorXd& x) {
    VectorXd a(d);
    for (int k = 0; k < d; ++k) a[k] = comp[k](x);
    return a;
  });
}

ScalarPotential random_potential(const Grid& grid, std::mt19937& rng, double amp) {
  TrigSeries s = random_series(grid, rng, amp, 4);
  ScalarPotential v = sample_scalar_potential(grid, [s](const VectorXd& x) { return s(x); });
  v.min_value = v.v.minCoeff();
  return v;
}

GaugeFunction random_gauge(const Grid& grid, std::mt19937& rng, double amp) {
  TrigSeries s = random_series(grid, rng, amp, 4);
  GaugeFunction f(grid.size());
  for (long i = 0; i < grid.size(); ++i) f[i] = s(grid.node(i));
  return f;
}

// C01: uniform field lambda = 1 on the truncated plane, ground level 1/2
CriterionResult c01(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 0.02;
  Scorecard sc;

  Grid grid = make_grid(plane_box_geometry(Eigen::Vector2d(-8.0, -8.0),
                                           Eigen::Vector2d(8.0, 8.0)),
                        Eigen::Vector2i(256, 256));
  VectorPotential alpha =
      sample_vector_potential(grid, [](const VectorXd& x) {
        return Eigen::Vector2d(0.0, x[0]);
      });
  AssembledOperator op = assemble(grid, alpha, zero_scalar(grid));
  LanczosOptions lopt;
  lopt.k = 3;
  lopt.max_basis = 90;
  lopt.max_restarts = 300;
  lopt.tol = 2e-6;
  SpectrumResult s = lanczos_lowest(op, lopt);
  sc.headline((s.eigenvalues[0] - 0.5) / 0.5);
  sc.seal(r);
  return r;
}

// C02: circle with constant form, flux law and period-1 gauge periodicity
CriterionResult c02(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 1e-3;
  Scorecard sc;

  Grid grid = make_grid(torus_geometry({1.0}), 256);
  auto lam0 = [&grid](double a) {
    VectorPotential alpha =
        sample_vector_potential(grid, [a](const VectorXd&) {
          return VectorXd::Constant(1, 2.0 * pi * a).eval();
        });
    return dense_spectrum(assemble(grid, alpha, zero_scalar(grid)), 1).eigenvalues[0];
  };
  for (double a : {0.0, 0.2, 0.5, 0.8, 1.3}) {
    const double lam = lam0(a);
    sc.headline(lam - circle_flux_lambda0(a));
    sc.side(lam0(a + 1.0) - lam, 1e-9, "periodicity under a -> a+1 at a = " + fmt(a));
  }
  sc.seal(r);
  return r;
}

// C03: hyperbolic strip family minima plus the assembled 2D cross-check
CriterionResult c03(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 5e-3;
  Scorecard sc;

  for (double b : {0.3, 1.0, 2.0}) {
    ReducedFamily fam = build_family("maass", {{"B", b}});
    const double target = maass_spectrum(b).lambda0;
    sc.headline(minimize_over_momenta(fam).value - target);
  }

  // re-solve the B = 1 well with certified decay walls
  {
    ReducedFamily fam = build_family("maass", {{"B", 1.0}});
    Effective1D p = fam.effective(VectorXd::Constant(1, -1.0));
    p.left_bc = Bc1D::Decay;
    p.right_bc = Bc1D::Decay;
    SpectrumResult cert = solve_effective_1d(p, 1, false);
    sc.side(cert.eigenvalues[0] - 0.5, 5e-3, "decay-certified fiber ground at B = 1");
  }

  // strip of circumference 1 at B = 2, assembled without the reduction
  {
    Grid sg = make_grid(half_plane_geometry(1.0, -4.0, 1.5), Eigen::Vector2i(64, 110));
    VectorPotential alpha =
        sample_vector_potential(sg, [](const VectorXd& x) {
          return Eigen::Vector2d(2.0 * std::exp(-x[1]), 0.0);
        });
    LanczosOptions lopt;
    lopt.tol = 1e-8;
    SpectrumResult s = lanczos_lowest(assemble(sg, alpha, zero_scalar(sg)), lopt);
    sc.headline(s.eigenvalues[0] - 1.0);
  }
  sc.seal(r);
  return r;
}

// C04: cosphere-bundle sweep; the field enters each integer fiber only as
// the additive shift (B+m)^2/2, so six cached fiber bases give the curve
CriterionResult c04(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 5e-3;
  Scorecard sc;

  double base[6];
  for (int m = -4; m <= 1; ++m) {
    ReducedFamily fam =
        build_family("sphere_bundle_h", {{"B", 0.0}, {"m", double(m)}});
    base[m + 4] = minimize_over_momenta(fam).value - 0.5 * m * m;
  }

  const int steps = 193;  // B = 0 .. 3 in steps of 1/64
  VectorXd curve(steps);
  for (int i = 0; i < steps; ++i) {
    const double b = i / 64.0;
    double v = std::numeric_limits<double>::infinity();
    for (int m = -4; m <= 1; ++m)
      v = std::min(v, base[m + 4] + 0.5 * (b + m) * (b + m));
    curve[i] = v;
    sc.headline(v - sphere_bundle_h_lambda0(b));
  }

  // the branch crossing shows up as an interior slope-sign change
  bool found = false;
  for (int i = 1; i + 1 < steps; ++i) {
    const double s1 = curve[i] - curve[i - 1];
    const double s2 = curve[i + 1] - curve[i];
    if (s1 == 0.0 || s2 == 0.0 || (s1 > 0.0) == (s2 > 0.0)) continue;
    if (std::abs(i / 64.0 - 0.875) <= 1.0 / 64.0 + 1e-12 &&
        std::abs(curve[i] - 65.0 / 128.0) <= 5e-3)
      found = true;
  }
  sc.require(found, "no curve extremum at B = 7/8 with value 65/128");
  sc.seal(r);
  return r;
}

// C05: heisenberg ground values over continuous and integer momenta
CriterionResult c05(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 1e-6;
  Scorecard sc;

  for (double b : {0.2, 0.5, 1.0, 3.0}) {
    ReducedFamily fam = build_family("nil", {{"B", b}});
    sc.headline(minimize_over_momenta(fam).value - nil_universal_lambda0(b));

    CoverGroundState ab = abelian_cover_groundstate("nil", b);
    double brute = 0.5 * b * b;  // the m = 0 branch is the continuum edge
    for (int m = 1; m <= 5; ++m)
      brute = std::min({brute, nil_family_value(b, m, 0), nil_family_value(b, -m, 0)});
    sc.side(ab.value - brute, 1e-12, "integer-branch arithmetic at B = " + fmt(b));
    sc.require(ab.tail_margin >= 0.0, "tail certificate at B = " + fmt(b));
  }
  sc.seal(r);
  return r;
}

// C06: sol fields: certified well at (1,0), floor and membership at
// (0.6,0.8), shallow case (0.4,0.3)
CriterionResult c06(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 5e-3;
  Scorecard sc;

  {
    ReducedFamily fam = build_family("sol", {{"Bx", 1.0}, {"By", 0.0}});
    sc.headline(minimize_over_momenta(fam).value - 0.375);

    // one-arm fiber at momentum -1 in a wide box with certified walls;
    // fiber value v maps to lambda0 = (v + B^2) / 2
    Effective1D p;
    p.lo = -44.0;
    p.hi = 10.0;
    p.n = 2699;
    p.mass_prefactor = 1.0;
    p.left_bc = Bc1D::Decay;
    p.right_bc = Bc1D::Decay;
    p.potential = [](double z) {
      const double w = 1.0 - std::exp(z);
      return w * w - 1.0;
    };
    SpectrumResult cert = solve_effective_1d(p, 1, false);
    sc.side(0.5 * (cert.eigenvalues[0] + 1.0) - 0.375, 5e-3,
            "decay-certified well value at (1,0)");
  }

  {
    ReducedFamily fam = build_family("sol", {{"Bx", 0.6}, {"By", 0.8}});
    CoverGroundState g = minimize_over_momenta(fam);
    sc.require(g.value >= 0.375 - 5e-3,
               "lambda0(0.6,0.8) = " + fmt(g.value) + " under the one-arm floor 0.375");
    double best = std::numeric_limits<double>::infinity();
    VectorXd xi = VectorXd::Zero(2);
    for (int j = 0; j <= 200; ++j) {
      xi[0] = -2.5 + 5.0 * j / 200.0;
      best = std::min(best, std::abs(family_lambda0_at(fam, xi) - 0.495));
    }
    sc.side(best, 5e-3, "membership of 0.495 among x-arm fiber samples");
  }

  {
    ReducedFamily fam = build_family("sol", {{"Bx", 0.4}, {"By", 0.3}});
    sc.headline(minimize_over_momenta(fam).value - 0.125);
  }
  sc.seal(r);
  return r;
}

// C07: radial coulomb levels with the linear field term, the soft-wall
// ground level, and the wall-condition sensitivity split
CriterionResult c07(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 1e-3;
  Scorecard sc;

  // the n = 2, m = 3 orbit reaches 2 (m + n + 1/2)^2 = 60.5, so the level
  // table needs a wall well past the default 60
  for (int m : {1, 2, 3})
    for (double b : {0.0, 0.1}) {
      ReducedFamily fam = build_family(
          "kepler_radial",
          {{"m", double(m)}, {"B", b}, {"r_max", 150.0}, {"n", 14999.0}});
      SpectrumResult s = solve_effective_1d(fam.effective(VectorXd()), 3, false);
      for (int n = 0; n < 3; ++n) {
        const double exact = kepler_level(m, n, b);
        sc.headline((s.eigenvalues[n] - exact) / std::abs(exact));
      }
    }

  {
    ReducedFamily fam = build_family("kepler_radial", {{"m", 0.0}, {"B", 0.0}});
    const double ground = solve_effective_1d(fam.effective(VectorXd()), 1).eigenvalues[0];
    sc.side(ground - bohr_level(0), 1e-2, "soft-wall ground level");
  }

  // the m = 0 level must feel the wall condition at the origin; m >= 1 not
  auto with_bc = [](int m, Bc1D left) {
    ReducedFamily fam = build_family(
        "kepler_radial", {{"m", double(m)}, {"B", 0.0}, {"n", 11999.0}});
    Effective1D p = fam.effective(VectorXd());
    p.left_bc = left;
    return solve_effective_1d(p, 1).eigenvalues[0];
  };
  const double s0 =
      std::abs(with_bc(0, Bc1D::FriedrichsKepler) - with_bc(0, Bc1D::Dirichlet));
  sc.require(s0 > 1e-3, "m = 0 wall sensitivity " + fmt(s0) + " not above 1e-3");
  for (int m : {1, 2, 3})
    sc.side(with_bc(m, Bc1D::FriedrichsKepler) - with_bc(m, Bc1D::Dirichlet), 1e-6,
            "wall sensitivity at m = " + std::to_string(m));
  sc.seal(r);
  return r;
}

// C08: torus critical value: pinned value and gap, strict value over the
// cohomology class, finite covers, quadratic field scaling
CriterionResult c08(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 1e-3;
  Scorecard sc;

  auto alpha_at = [](const Grid& g, double scale) {
    return sample_vector_potential(g, [scale](const VectorXd& x) {
      return VectorXd::Constant(1, scale * (0.7 + std::sin(2.0 * pi * x[0]))).eval();
    });
  };
  Grid grid = make_grid(torus_geometry({1.0}), 256);

  MCVResult base = critical_value(grid, alpha_at(grid, 1.0), zero_scalar(grid));
  sc.headline(base.value - 0.245);
  sc.require(base.gap <= 1e-3, "duality gap " + fmt(base.gap) + " above 1e-3");

  MCVResult strict = strict_critical_value(grid, alpha_at(grid, 1.0), zero_scalar(grid));
  sc.side(strict.value, 1e-3, "strict value over the cohomology class");

  for (int f : {2, 3}) {
    Grid cg = make_grid(torus_geometry({double(f)}), 256 * f);
    MCVResult cv = critical_value(cg, alpha_at(cg, 1.0), zero_scalar(cg));
    sc.side(cv.value - base.value, 2e-3, "fold-" + std::to_string(f) + " cover value");
  }

  for (double b : {0.5, 2.0}) {
    MCVResult sv = critical_value(grid, alpha_at(grid, b), zero_scalar(grid));
    sc.side(sv.value - b * b * 0.245, 1e-3 * (1.0 + b * b),
            "field scaling at B = " + fmt(b));
  }
  sc.seal(r);
  return r;
}

// C09: ground level below the critical value on random smooth torus data
CriterionResult c09(unsigned seed) {
  CriterionResult r;
  r.bound = 1e-6;
  Scorecard sc;

  Grid grid = make_grid(torus_geometry({1.0, 1.0}), Eigen::Vector2i(24, 24));
  for (unsigned run = 1; run <= 10; ++run) {
    std::mt19937 rng(seed + run);
    VectorPotential alpha = random_alpha(grid, rng, 0.8);
    ScalarPotential v = random_potential(grid, rng, 0.5);
    Lambda0CCheck chk = verify_lambda0_le_c(grid, alpha, v);  // throws on violation
    sc.headline(std::max(0.0, chk.lambda0 - chk.c));
    sc.require(chk.slack >= 0.0, "negative slack at run " + std::to_string(run));
  }
  sc.seal(r);
  return r;
}

// C10: second B-derivative of the ground level against the coclosed energy
CriterionResult c10(unsigned seed) {
  (void)seed;
  CriterionResult r;
  r.bound = 2e-2;
  Scorecard sc;

  Grid grid = make_grid(torus_geometry({1.0}), 256);
  auto alpha_at = [&grid](double scale) {
    return sample_vector_potential(grid, [scale](const VectorXd& x) {
      return VectorXd::Constant(1, scale * (0.7 + std::sin(2.0 * pi * x[0]))).eval();
    });
  };

  HodgeSplit hs = hodge_decompose_torus(grid, alpha_at(1.0));
  const double vol = double(grid.size()) * grid.cell_volume();
  const double target = (form_norm2(grid, hs.harmonic_in_kernel) +
                         form_norm2(grid, hs.harmonic_perp) +
                         form_norm2(grid, hs.coexact)) /
                        vol;

  auto lam = [&](double b) {
    return dense_spectrum(assemble(grid, alpha_at(b), zero_scalar(grid)), 1)
        .eigenvalues[0];
  };
  const double hb = 0.05;
  const double d2 = (lam(hb) - 2.0 * lam(0.0) + lam(-hb)) / (hb * hb);
  sc.headline((d2 - target) / target);
  sc.seal(r);
  return r;
}

// C11: property suites; headline is the worst error relative to each
// property's own tolerance, so the printed bound is 1
CriterionResult c11(unsigned seed) {
  CriterionResult r;
  r.bound = 1.0;
  Scorecard sc;

  for (unsigned run = 1; run <= 5; ++run) {
    std::mt19937 rng(seed + run);
    Grid grid = make_grid(torus_geometry({1.0, 1.0 + 0.1 * run}), Eigen::Vector2i(10, 8));
    VectorPotential alpha = random_alpha(grid, rng, 0.8);
    ScalarPotential v = random_potential(grid, rng, 0.6);

    // hermiticity (1e-12), flat twisted and curved charts
    {
      std::uniform_real_distribution<double> ang(-pi, pi);
      VectorXd th(2);
      th << ang(rng), ang(rng);
      Eigen::MatrixXcd m = assemble(grid, alpha, v, make_character(grid, th)).matrix;
      sc.headline((m - m.adjoint()).cwiseAbs().maxCoeff() / m.cwiseAbs().maxCoeff() /
                  1e-12);
      Grid hg = make_grid(half_plane_geometry(1.0, -2.0, 1.5), Eigen::Vector2i(12, 10));
      Eigen::MatrixXcd hm =
          assemble(hg, random_alpha(hg, rng, 0.8), random_potential(hg, rng, 0.6)).matrix;
      sc.headline((hm - hm.adjoint()).cwiseAbs().maxCoeff() /
                  hm.cwiseAbs().maxCoeff() / 1e-12);
    }

    // gauge invariance of spectra (1e-8)
    {
      GaugeFunction f = random_gauge(grid, rng, 0.7);
      VectorXd s1 = dense_spectrum(assemble(grid, alpha, v)).eigenvalues;
      VectorXd s2 =
          dense_spectrum(assemble(grid, gauge_shift(grid, alpha, f), v)).eigenvalues;
      const double scale = std::max(1.0, s1.cwiseAbs().maxCoeff());
      sc.headline((s1 - s2).cwiseAbs().maxCoeff() / scale / 1e-8);
    }

    // diamagnetic inequality (1e-9 slack)
    {
      const double with_form = dense_spectrum(assemble(grid, alpha, v), 1).eigenvalues[0];
      const double without =
          dense_spectrum(assemble(grid, zero_potential(grid), v), 1).eigenvalues[0];
      sc.headline(std::max(0.0, without - with_form) / 1e-9);
    }

    // midpoint concavity (1e-8) of mu(B) = lambda0(B w) - B^2 |w|^2 / 2
    // along a constant form, where every character branch is concave
    {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      VectorXd w(2);
      w << u(rng), u(rng);
      const double w2 = w.squaredNorm();
      auto mu = [&](double b) {
        VectorPotential ca = sample_vector_potential(
            grid, [&w, b](const VectorXd&) { return (b * w).eval(); });
        return dense_spectrum(assemble(grid, ca, zero_scalar(grid)), 1).eigenvalues[0] -
               0.5 * b * b * w2;
      };
      const double b1 = 2.0 * u(rng), b2 = 2.0 * u(rng);
      const double hollow = 0.5 * (mu(b1) + mu(b2)) - mu(0.5 * (b1 + b2));
      sc.headline(std::max(0.0, hollow) / 1e-8);
    }

    // direct-integral multiset (1e-9): character union against the tiled cover
    {
      const int p = 2 + int(run % 2);
      Eigen::VectorXi folds(2);
      folds << p, 1;
      std::vector<double> oracle = direct_cover_oracle(grid, alpha, v, folds);
      std::vector<double> mine;
      for (int j = 0; j < p; ++j) {
        VectorXd th(2);
        th << 2.0 * pi * j / p, 0.0;
        VectorXd ev =
            dense_spectrum(assemble(grid, alpha, v, make_character(grid, th))).eigenvalues;
        mine.insert(mine.end(), ev.data(), ev.data() + ev.size());
      }
      std::sort(mine.begin(), mine.end());
      sc.require(mine.size() == oracle.size(), "cover multiset sizes differ");
      double worst = 0.0;
      for (size_t i = 0; i < mine.size() && i < oracle.size(); ++i)
        worst = std::max(worst, std::abs(mine[i] - oracle[i]));
      sc.headline(worst / 1e-9);
    }

    // hodge projection identities (1e-10)
    {
      HodgeSplit hs = hodge_decompose_torus(grid, alpha);
      Eigen::MatrixXd sum = hs.harmonic_in_kernel.a + hs.harmonic_perp.a +
                            hs.exact.a + hs.coexact.a;
      sc.headline((sum - alpha.a).cwiseAbs().maxCoeff() / 1e-10);
      const double n2 = std::max(1.0, form_norm2(grid, alpha));
      const VectorPotential* parts[4] = {&hs.harmonic_in_kernel, &hs.harmonic_perp,
                                         &hs.exact, &hs.coexact};
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          sc.headline(std::abs(form_inner(grid, *parts[i], *parts[j])) / n2 / 1e-10);
      sc.headline(
          (hs.exact.a - link_differential(grid, hs.potential).a).cwiseAbs().maxCoeff() /
          1e-10);
      HodgeSplit again = hodge_decompose_torus(grid, hs.coexact);
      sc.headline(again.exact.a.cwiseAbs().maxCoeff() / 1e-10);
      sc.headline(again.harmonic_mean.cwiseAbs().maxCoeff() / 1e-10);
    }
  }
  sc.seal(r);
  return r;
}

struct Entry {
  const char* id;
  const char* what;
  CriterionResult (*fn)(unsigned);
};

const Entry kCriteria[] = {
    {"C01", "uniform-field plane box: ground level 1/2 by restarted lanczos", c01},
    {"C02", "circle constant form: flux law and gauge periodicity", c02},
    {"C03", "hyperbolic strip: family minima and assembled 2d cross-check", c03},
    {"C04", "cosphere bundle sweep: piecewise curve and kink at B = 7/8", c04},
    {"C05", "heisenberg covers: continuous and integer momentum grounds", c05},
    {"C06", "sol fields: certified well, membership, shallow case", c06},
    {"C07", "radial coulomb: level table, soft wall, wall sensitivity", c07},
    {"C08", "torus critical value: pinned, strict, covers, scaling", c08},
    {"C09", "ground level below critical value on random data", c09},
    {"C10", "second field derivative of the ground level", c10},
    {"C11", "operator property suites over five seeds", c11},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& selector, unsigned seed) {
  std::string sel = selector.empty() ? "all" : selector;
  for (char& ch : sel) ch = char(std::toupper(static_cast<unsigned char>(ch)));

  std::vector<CriterionResult> out;
  for (int i = 0; i < int(std::size(kCriteria)); ++i) {
    const Entry& e = kCriteria[i];
    const bool wanted = sel == "ALL" || (sel == "CLOSEDFORM" && i < 7) ||
                        (sel == "PROPERTIES" && i >= 7) || sel == e.id;
    if (!wanted) continue;

    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = e.fn(seed);
    } catch (const std::exception& ex) {
      r.pass = false;
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.detail = std::string("aborted: ") + ex.what();
    }
    r.id = e.id;
    r.description = e.what;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  }
  if (out.empty()) throw ConfigError("unknown acceptance selector: " + selector);
  return out;
}

int report_acceptance(const std::vector<CriterionResult>& rows, std::ostream& out) {
  int fails = 0;
  for (const CriterionResult& r : rows) {
    char line[192];
    std::snprintf(line, sizeof line, "%-4s %-4s %8.1fs  measured %10.3e  bound %9.3e  %s",
                  r.id.c_str(), r.pass ? "pass" : "FAIL", r.seconds, r.measured, r.bound,
                  r.description.c_str());
    out << line;
    if (!r.pass && !r.detail.empty()) out << "  [" << r.detail << "]";
    out << "\n";
    if (!r.pass) ++fails;
  }
  out << (rows.size() - fails) << " of " << rows.size() << " criteria passed\n";
  return fails;
}

}  // namespace magspec
