#include "magspec/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magspec/errors.hpp"

namespace magspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sort_dedup(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > 1e-12 * std::max(1.0, std::abs(x)))
      out.push_back(x);
  return out;
}

void landau_points_rec(const Eigen::VectorXd& lam, int j, double base, double cap,
                       std::vector<double>& out) {
  if (j == lam.size()) {
    out.push_back(base);
    return;
  }
  // ladder lambda_j (2k+1) on top of what the earlier oscillators already cost
  for (int k = 0;; ++k) {
    const double e = base + lam[j] * (2 * k + 1);
    if (e > cap) break;
    landau_points_rec(lam, j + 1, e, cap, out);
    if (lam[j] == 0.0) break;  // defensive; zero modes belong to zero_dim
  }
}

double frac_dist_to_int(double a) {
  return std::abs(a - std::round(a));
}

}  // namespace

std::vector<double> ClosedFormSpectrum::points(double cap) const {
  if (!generate_points) return {};
  return sort_dedup(generate_points(cap));
}

ClosedFormSpectrum landau_spectrum(const Eigen::VectorXd& lambdas, int zero_dim,
                                   Convention conv) {
  for (Eigen::Index j = 0; j < lambdas.size(); ++j)
    if (lambdas[j] < 0) throw ConfigError("landau spectrum wants lambda_j >= 0");
  ClosedFormSpectrum s;
  s.family = "landau";
  s.convention = Convention::Double;
  const double ground = lambdas.sum();
  if (zero_dim > 0) {
    s.threshold = ground;
    s.lambda0 = ground;
    s.generate_points = [](double) { return std::vector<double>{}; };
  } else {
    s.lambda0 = ground;
    Eigen::VectorXd lam = lambdas;
    s.generate_points = [lam](double cap) {
      std::vector<double> out;
      if (lam.size() == 0) {
        if (0.0 <= cap) out.push_back(0.0);
        return out;
      }
      landau_points_rec(lam, 0, 0.0, cap, out);
      return out;
    };
  }
  if (conv != s.convention) {
    const Convention from = s.convention;
    s.convention = conv;
    s.threshold = std::isinf(s.threshold) ? kInf : convert(s.threshold, from, conv);
    s.lambda0 = convert(s.lambda0, from, conv);
    auto gen = s.generate_points;
    s.generate_points = [gen, from, conv](double cap) {
      std::vector<double> pts = gen(convert(cap, conv, from));
      for (double& p : pts) p = convert(p, from, conv);
      return pts;
    };
  }
  return s;
}

ClosedFormSpectrum maass_spectrum(double b) {
  ClosedFormSpectrum s;
  s.family = "maass";
  s.threshold = 0.5 * (b * b + 0.25);
  const double ab = std::abs(b);
  s.lambda0 = ab <= 0.5 ? s.threshold : 0.5 * ab;
  s.generate_points = [ab](double cap) {
    std::vector<double> out;
    for (int k = 0; k < ab - 0.5; ++k) {
      const double p = 0.5 * ((2 * k + 1) * ab - k * (k + 1));
      if (p <= cap) out.push_back(p);
    }
    return out;
  };
  return s;
}

double sphere_bundle_h_lambda0(double b) {
  const double ab = std::abs(b);
  if (ab <= 0.875) return 0.5 * (ab * ab + 0.25);
  if (ab <= 1.0) return 0.5 * (1.0 + (1.0 - ab) * (1.0 - ab));
  const double fl = std::floor(ab);
  const double fr = ab - fl;
  return 0.5 * (fl + fr * fr);
}

ClosedFormSpectrum sphere_bundle_h_spectrum(double b) {
  ClosedFormSpectrum s;
  s.family = "sphere_bundle_h";
  // continuum bottom over all fiber thresholds ((b+m)^2 + m^2 + 1/4)/2
  double thr = b * b + 0.25;
  const int m0 = static_cast<int>(std::round(-0.5 * b));
  for (int m = m0 - 2; m <= m0 + 2; ++m)
    thr = std::min(thr, (b + m) * (b + m) + double(m) * m + 0.25);
  s.threshold = 0.5 * thr;
  s.lambda0 = sphere_bundle_h_lambda0(b);
  s.generate_points = [b](double cap) {
    std::vector<double> out;
    const int mmax = static_cast<int>(std::ceil(2.0 * std::max(cap, 0.0) + std::abs(b))) + 2;
    for (int m = -mmax; m <= mmax; ++m) {
      if (m == 0) continue;
      const double am = std::abs(m);
      for (int k = 0; k < am; ++k) {
        const double p = 0.5 * ((b + m) * (b + m) + (2 * k + 1) * am - double(k) * (k + 1));
        if (p <= cap) out.push_back(p);
      }
    }
    return out;
  };
  return s;
}

ClosedFormSpectrum nil_abelian_spectrum(double b) {
  using std::numbers::pi;
  ClosedFormSpectrum s;
  s.family = "nil_abelian";
  s.threshold = 0.5 * b * b;
  double best = s.threshold;
  const int mmax = static_cast<int>(std::ceil(std::abs(b))) + 3;
  for (int m = -mmax; m <= mmax; ++m)
    if (m != 0) best = std::min(best, nil_family_value(b, double(m), 0));
  s.lambda0 = best;
  s.generate_points = [b](double cap) {
    std::vector<double> out;
    const int mb = static_cast<int>(std::ceil((std::sqrt(2.0 * std::max(cap, 0.0)) +
                                               std::abs(b)) / (2.0 * pi))) + 1;
    for (int m = -mb; m <= mb; ++m) {
      if (m == 0) continue;
      for (int k = 0;; ++k) {
        const double p = nil_family_value(b, double(m), k);
        if (p > cap) break;
        out.push_back(p);
      }
    }
    return out;
  };
  return s;
}

double nil_family_value(double b, double xi, int k) {
  using std::numbers::pi;
  if (k < 0) throw InvalidQuantumNumber("oscillator rung must be >= 0");
  const double p = b + 2.0 * pi * xi;
  return 0.5 * p * p + pi * (2 * k + 1) * std::abs(xi);
}

double nil_universal_lambda0(double b) {
  const double ab = std::abs(b);
  if (ab <= 0.5) return 0.5 * b * b;
  return 0.5 * (ab - 0.25);
}

double sl2_universal_lambda0(double b) {
  const double ab = std::abs(b);
  if (ab <= 1.0) return 0.5 * (0.5 * b * b + 0.25);
  return 0.5 * (ab - 0.25);
}

double sol_axis_ground(double b) {
  const double ab = std::abs(b);
  if (ab <= 0.5) return 0.0;
  return ab - 0.25 - b * b;
}

double sol_axis_lambda0(double bx) {
  return 0.5 * (bx * bx + std::min(0.0, sol_axis_ground(bx)));
}

double kepler_level(int m, int n, double b) {
  if (m < 1) throw InvalidQuantumNumber("radial Coulomb ladder needs m >= 1");
  if (n < 0) throw InvalidQuantumNumber("radial quantum number must be >= 0");
  const double denom = n + m + 0.5;
  return -0.5 / (denom * denom) + b * m;
}

double bohr_level(int n) {
  if (n < 0) throw InvalidQuantumNumber("radial quantum number must be >= 0");
  const double denom = n + 0.5;
  return -0.5 / (denom * denom);
}

double circle_flux_lambda0(double a) {
  const double d = frac_dist_to_int(a);
  return 2.0 * std::numbers::pi * std::numbers::pi * d * d;
}

double circle_flux_lambda0_discrete(double a, int n) {
  const double d = frac_dist_to_int(a);
  const double h = 1.0 / n;
  const double s = std::sin(std::numbers::pi * h * d);
  return 2.0 / (h * h) * s * s;
}

}  // namespace magspec
