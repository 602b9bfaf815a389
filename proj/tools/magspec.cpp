#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "magspec/acceptance.hpp"
#include "magspec/assembly.hpp"
#include "magspec/bloch.hpp"
#include "magspec/closedform.hpp"
#include "magspec/convention.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/errors.hpp"
#include "magspec/geometry.hpp"
#include "magspec/io.hpp"
#include "magspec/mane.hpp"
#include "magspec/reduction.hpp"

namespace ms = magspec;
using nlohmann::json;
using std::numbers::pi;

namespace {

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stod(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

const char* conv_name(ms::Convention c) {
  return c == ms::Convention::Half ? "half" : "double";
}

ms::Grid torus_grid(const std::string& lengths, int n) {
  return make_grid(ms::torus_geometry(split_doubles(lengths)), n);
}

// form specs: zero | const:v[,v..] | linear:l[,l..] | flux:a | c+sin
ms::VectorPotential parse_alpha(const ms::Grid& grid, const std::string& spec) {
  const int d = grid.dim();
  if (spec.empty() || spec == "zero") return ms::zero_potential(grid);
  if (spec.rfind("const:", 0) == 0) {
    std::vector<double> c = split_doubles(spec.substr(6));
    if (c.size() == 1 && d > 1) c.assign(size_t(d), c[0]);
    if (int(c.size()) != d)
      throw ms::ConfigError("const form needs one value per axis");
    Eigen::VectorXd cv = Eigen::Map<Eigen::VectorXd>(c.data(), d);
    return ms::sample_vector_potential(grid, [cv](const Eigen::VectorXd&) { return cv; });
  }
  if (spec.rfind("linear:", 0) == 0)
    return ms::model_potential_torus(grid, split_doubles(spec.substr(7)));
  if (spec.rfind("flux:", 0) == 0) {
    // holonomy parameter on axis 0: integral of the form over the circle is 2 pi a
    const double a = std::stod(spec.substr(5));
    const double c = 2.0 * pi * a / grid.geom.period(0);
    return ms::sample_vector_potential(grid, [c, d](const Eigen::VectorXd&) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
      v[0] = c;
      return v;
    });
  }
  const size_t plus = spec.find("+sin");
  if (plus != std::string::npos) {
    const double c = std::stod(spec.substr(0, plus));
    const double l = grid.geom.period(0);
    return ms::sample_vector_potential(grid, [c, l, d](const Eigen::VectorXd& x) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
      v[0] = c + std::sin(2.0 * pi * x[0] / l);
      return v;
    });
  }
  throw ms::ConfigError("form spec not recognized: " + spec +
                        " (use zero | const:v[,..] | linear:l[,..] | flux:a | c+sin)");
}

ms::ScalarPotential parse_potential(const ms::Grid& grid, const std::string& spec) {
  if (spec.empty() || spec == "zero") return ms::zero_scalar(grid);
  if (spec.rfind("const:", 0) == 0) {
    const double c = std::stod(spec.substr(6));
    ms::ScalarPotential v = ms::sample_scalar_potential(
        grid, [c](const Eigen::VectorXd&) { return c; });
    v.min_value = c;
    return v;
  }
  throw ms::ConfigError("potential spec not recognized: " + spec +
                        " (use zero | const:v)");
}

struct CommonArgs {
  std::string lengths = "1";
  std::string lo, hi;
  int n = 256;
  std::string alpha = "zero";
  std::string pot = "zero";
  std::string out, dump;
  double tol = 1e-8;
  int k = 5;
};

void dump_and_csv(const CommonArgs& a, const ms::AssembledOperator& op,
                  const ms::SpectrumResult& s) {
  if (!a.dump.empty()) ms::write_matrix_market(a.dump, op.matrix);
  if (!a.out.empty()) {
    Eigen::MatrixXd rows(s.eigenvalues.size(), 3);
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
      rows.row(i) << double(i), s.eigenvalues[i], s.residuals[i];
    ms::write_csv(a.out, {"index", "eigenvalue", "residual"}, rows);
  }
}

int cmd_spectrum(const std::string& geom, const CommonArgs& a, int m, double b,
                 double bx, double by) {
  json out;
  out["command"] = "spectrum";
  out["convention"] = "half";

  if (geom == "torus" || geom == "circle" || geom == "box") {
    if (geom == "box" && (a.lo.empty() || a.hi.empty()))
      throw ms::ConfigError("box needs --lo and --hi");
    ms::Grid grid =
        geom == "box"
            ? ms::make_grid(ms::plane_box_geometry(to_vec(split_doubles(a.lo)),
                                                   to_vec(split_doubles(a.hi))),
                            a.n)
            : torus_grid(a.lengths, a.n);
    if (geom == "circle" && grid.dim() != 1)
      throw ms::ConfigError("circle expects a single length");
    ms::VectorPotential alpha = parse_alpha(grid, a.alpha);
    ms::ScalarPotential v = parse_potential(grid, a.pot);
    ms::AssembledOperator op = assemble(grid, alpha, v);
    const int k = std::min<long>(a.k, grid.size());
    ms::SpectrumResult s;
    if (grid.size() <= 4096) {
      s = ms::dense_spectrum(op, k);
    } else {
      ms::LanczosOptions lopt;
      lopt.k = k;
      lopt.tol = a.tol;
      s = ms::lanczos_lowest(op, lopt);
    }
    out["geometry"] = ms::geometry_json(grid);
    out["spectrum"] = ms::spectrum_json(s);
    dump_and_csv(a, op, s);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (geom == "kepler") {
    ms::ReducedFamily fam = ms::build_family(
        "kepler_radial", {{"m", double(m)}, {"B", b}});
    ms::SpectrumResult s = ms::solve_effective_1d(fam.effective(Eigen::VectorXd()), a.k);
    json closed = json::array();
    for (int nn = 0; nn < a.k; ++nn)
      closed.push_back(m == 0 ? ms::bohr_level(nn) : ms::kepler_level(m, nn, b));
    out["family"] = "kepler_radial";
    out["params"] = {{"m", m}, {"B", b}};
    out["eigenvalues"] = vec_json(s.eigenvalues);
    out["closed_form"] = closed;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (geom == "sol") {
    ms::ReducedFamily fam = ms::build_family("sol", {{"Bx", bx}, {"By", by}});
    ms::CoverGroundState g = ms::minimize_over_momenta(fam);
    out["family"] = "sol";
    out["params"] = {{"Bx", bx}, {"By", by}};
    out["lambda0"] = g.value;
    out["argmin"] = vec_json(g.argmin);
    if (by == 0.0) out["closed_form"] = ms::sol_axis_lambda0(bx);
    if (bx == 0.0) out["closed_form"] = ms::sol_axis_lambda0(by);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (geom == "maass") {
    ms::ReducedFamily fam = ms::build_family("maass", {{"B", b}});
    ms::CoverGroundState g = ms::minimize_over_momenta(fam);
    ms::ClosedFormSpectrum ref = ms::maass_spectrum(b);
    out["family"] = "maass";
    out["params"] = {{"B", b}};
    out["lambda0"] = g.value;
    out["argmin"] = vec_json(g.argmin);
    out["closed_form"] = ref.lambda0;
    out["threshold"] = ref.threshold;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (geom == "nil") {
    ms::ReducedFamily fam = ms::build_family("nil", {{"B", b}});
    ms::CoverGroundState uni = ms::minimize_over_momenta(fam);
    ms::CoverGroundState ab = ms::abelian_cover_groundstate("nil", b);
    out["family"] = "nil";
    out["params"] = {{"B", b}};
    out["lambda0_universal"] = uni.value;
    out["lambda0_abelian"] = ab.value;
    out["closed_form_universal"] = ms::nil_universal_lambda0(b);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (geom == "sphere_bundle_h") {
    double best = std::numeric_limits<double>::infinity();
    int best_m = 0;
    for (int mm = -int(std::ceil(std::abs(b))) - 3; mm <= 1; ++mm) {
      ms::ReducedFamily fam = ms::build_family(
          "sphere_bundle_h", {{"B", b}, {"m", double(mm)}});
      const double v = ms::minimize_over_momenta(fam).value;
      if (v < best) {
        best = v;
        best_m = mm;
      }
    }
    out["family"] = "sphere_bundle_h";
    out["params"] = {{"B", b}};
    out["lambda0"] = best;
    out["fiber_m"] = best_m;
    out["closed_form"] = ms::sphere_bundle_h_lambda0(b);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  throw ms::ConfigError("unknown geometry: " + geom);
}

int cmd_bands(const CommonArgs& a, double flux_a, const std::string& cover_str,
              int samples) {
  ms::Grid grid = torus_grid(a.lengths, a.n);
  ms::VectorPotential alpha =
      std::isnan(flux_a) ? parse_alpha(grid, a.alpha)
                         : parse_alpha(grid, "flux:" + ms::format_double(flux_a));
  ms::ScalarPotential v = parse_potential(grid, a.pot);

  std::vector<double> folds_d = split_doubles(cover_str);
  if (folds_d.size() == 1 && grid.dim() > 1)
    folds_d.assign(size_t(grid.dim()), folds_d[0]);
  if (int(folds_d.size()) != grid.dim())
    throw ms::ConfigError("cover needs one fold count per axis");
  Eigen::VectorXi folds(grid.dim());
  for (int i = 0; i < grid.dim(); ++i) folds[i] = int(folds_d[size_t(i)]);

  ms::BandStructure bs =
      ms::band_structure(grid, alpha, v, ms::CoverSpec{folds}, a.k, samples);

  json out;
  out["command"] = "bands";
  out["lambda0"] = bs.lambda0;
  out["argmin_theta"] = vec_json(bs.argmin_theta);
  json bands = json::array();
  for (const auto& [lo, hi] : bs.bands) bands.push_back({lo, hi});
  out["bands"] = bands;
  out["characters_sampled"] = bs.samples.rows();

  if (!a.out.empty()) {
    std::vector<std::string> header;
    for (int i = 0; i < grid.dim(); ++i) header.push_back("theta_" + std::to_string(i));
    for (int i = 0; i < a.k; ++i) header.push_back("band_" + std::to_string(i));
    ms::write_csv(a.out, header, bs.samples);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

// per-family numeric and closed-form lambda0 over a field sweep
int cmd_curve(const std::string& family, double b0, double b1, double step,
              const std::string& out_csv, const std::string& out_svg) {
  if (!(step > 0.0) || !(b1 >= b0)) throw ms::ConfigError("curve needs b1 >= b0, step > 0");
  const int steps = int(std::floor((b1 - b0) / step + 0.5)) + 1;
  if (steps > 100000) throw ms::TooLarge("curve sweep too long");

  Eigen::VectorXd bs(steps), numeric(steps), closed(steps), thresh(steps);
  bool has_threshold = true;

  std::map<int, double> sbh_base;  // sphere_bundle_h fiber bases, cached at B = 0
  if (family == "sphere_bundle_h") {
    for (int m = -int(std::ceil(std::abs(b1) + std::abs(b0))) - 3; m <= 1; ++m) {
      ms::ReducedFamily fam =
          ms::build_family("sphere_bundle_h", {{"B", 0.0}, {"m", double(m)}});
      sbh_base[m] = ms::minimize_over_momenta(fam).value - 0.5 * m * m;
    }
  }

  for (int i = 0; i < steps; ++i) {
    const double b = b0 + i * step;
    bs[i] = b;
    if (family == "maass") {
      numeric[i] = ms::minimize_over_momenta(ms::build_family("maass", {{"B", b}})).value;
      ms::ClosedFormSpectrum ref = ms::maass_spectrum(b);
      closed[i] = ref.lambda0;
      thresh[i] = ref.threshold;
    } else if (family == "sphere_bundle_h") {
      double v = std::numeric_limits<double>::infinity();
      for (const auto& [m, base] : sbh_base) v = std::min(v, base + 0.5 * (b + m) * (b + m));
      numeric[i] = v;
      closed[i] = ms::sphere_bundle_h_lambda0(b);
      thresh[i] = ms::sphere_bundle_h_spectrum(b).threshold;
    } else if (family == "nil_abelian") {
      numeric[i] = ms::abelian_cover_groundstate("nil", b).value;
      ms::ClosedFormSpectrum ref = ms::nil_abelian_spectrum(b);
      closed[i] = ref.lambda0;
      thresh[i] = ref.threshold;
    } else if (family == "nil_universal") {
      numeric[i] = ms::minimize_over_momenta(ms::build_family("nil", {{"B", b}})).value;
      closed[i] = ms::nil_universal_lambda0(b);
      has_threshold = false;
    } else {
      throw ms::ConfigError(
          "unknown curve family: " + family +
          " (use maass | sphere_bundle_h | nil_abelian | nil_universal)");
    }
  }

  double max_err = 0.0;
  for (int i = 0; i < steps; ++i) max_err = std::max(max_err, std::abs(numeric[i] - closed[i]));

  if (!out_csv.empty()) {
    Eigen::MatrixXd rows(steps, 4);
    rows.col(0) = bs;
    rows.col(1) = numeric;
    rows.col(2) = closed;
    rows.col(3) = (numeric - closed).cwiseAbs();
    ms::write_csv(out_csv, {"B", "lambda0_numeric", "lambda0_closed_form", "abs_error"},
                  rows);
  }
  if (!out_svg.empty()) {
    std::vector<ms::CurveSeries> series;
    series.push_back({"numeric", bs, numeric});
    series.push_back({"closed form", bs, closed});
    ms::SvgOptions sopt;
    sopt.title = family + " ground level";
    sopt.x_label = "B";
    sopt.y_label = "lambda0";
    if (has_threshold) {
      series.push_back({"continuum edge", bs, thresh});
      sopt.continuum_from = thresh.minCoeff();
    }
    ms::write_svg_curves(out_svg, series, sopt);
  }

  json out;
  out["command"] = "curve";
  out["family"] = family;
  out["samples"] = steps;
  out["max_abs_error"] = max_err;
  if (!out_csv.empty()) out["csv"] = out_csv;
  if (!out_svg.empty()) out["svg"] = out_svg;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_mane(const CommonArgs& a, bool strict) {
  ms::Grid grid = torus_grid(a.lengths, a.n);
  ms::VectorPotential alpha = parse_alpha(grid, a.alpha);
  ms::ScalarPotential v = parse_potential(grid, a.pot);
  ms::MCVOptions opt;
  opt.tol = a.tol;
  ms::MCVResult res = ms::critical_value(grid, alpha, v, opt);

  json out;
  out["command"] = "mane";
  out["value"] = res.value;
  out["lower_bound"] = res.lower_bound;
  out["gap"] = res.gap;
  out["iterations"] = res.iterations;
  if (strict) {
    ms::MCVResult s = ms::strict_critical_value(grid, alpha, v, opt);
    out["strict_value"] = s.value;
    out["strict_gap"] = s.gap;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

json closed_spectrum_json(const ms::ClosedFormSpectrum& s, double cap) {
  json out;
  out["family"] = s.family;
  out["convention"] = conv_name(s.convention);
  out["lambda0"] = s.lambda0;
  if (std::isfinite(s.threshold)) out["threshold"] = s.threshold;
  const double c = std::isfinite(cap)
                       ? cap
                       : (std::isfinite(s.threshold) ? s.threshold : s.lambda0 + 10.0);
  json pts = json::array();
  for (double p : s.points(c)) pts.push_back(p);
  out["points"] = pts;
  return out;
}

int cmd_reference(const std::string& family, double b, double a_flux,
                  const std::string& lambdas, int zero_dim, int m, double cap) {
  json out;
  if (family == "maass") {
    out = closed_spectrum_json(ms::maass_spectrum(b), cap);
  } else if (family == "sphere_bundle_h") {
    out = closed_spectrum_json(ms::sphere_bundle_h_spectrum(b), cap);
  } else if (family == "nil_abelian") {
    out = closed_spectrum_json(ms::nil_abelian_spectrum(b), cap);
  } else if (family == "landau") {
    std::vector<double> l = split_doubles(lambdas);
    Eigen::VectorXd lv = Eigen::Map<Eigen::VectorXd>(l.data(), Eigen::Index(l.size()));
    out = closed_spectrum_json(ms::landau_spectrum(lv, zero_dim), cap);
  } else if (family == "nil_universal") {
    out["family"] = family;
    out["convention"] = "half";
    out["lambda0"] = ms::nil_universal_lambda0(b);
  } else if (family == "sl2_universal") {
    out["family"] = family;
    out["convention"] = "half";
    out["lambda0"] = ms::sl2_universal_lambda0(b);
  } else if (family == "sol_axis") {
    out["family"] = family;
    out["convention"] = "half";
    out["lambda0"] = ms::sol_axis_lambda0(b);
    out["threshold"] = 0.5 * b * b;
  } else if (family == "kepler") {
    out["family"] = family;
    out["convention"] = "half";
    json pts = json::array();
    for (int nn = 0; nn < 6; ++nn)
      pts.push_back(m == 0 ? ms::bohr_level(nn) : ms::kepler_level(m, nn, b));
    out["points"] = pts;
    out["threshold"] = b * m;
  } else if (family == "circle") {
    out["family"] = family;
    out["convention"] = "half";
    out["lambda0"] = ms::circle_flux_lambda0(a_flux);
  } else {
    throw ms::ConfigError("unknown reference family: " + family);
  }

  // classical critical value of the same uniform field, when defined
  static const std::map<std::string, std::string> mane_name = {
      {"maass", "maass"},         {"sphere_bundle_h", "sphere_bundle_h"},
      {"nil_abelian", "nil"},     {"nil_universal", "nil"},
      {"sl2_universal", "sl2_universal"}, {"sol_axis", "sol"}};
  auto it = mane_name.find(family);
  if (it != mane_name.end()) out["critical_value"] = ms::mane_reference(it->second, b);

  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, unsigned seed) {
  std::vector<ms::CriterionResult> rows = ms::run_acceptance(suite, seed);
  json arr = json::array();
  for (const ms::CriterionResult& r : rows) {
    json j;
    j["id"] = r.id;
    j["target"] = r.description;
    j["measured"] = std::isfinite(r.measured) ? json(r.measured) : json();
    j["tolerance"] = r.bound;
    j["pass"] = r.pass;
    j["seconds"] = r.seconds;
    if (!r.detail.empty()) j["detail"] = r.detail;
    arr.push_back(j);
  }
  std::cout << arr.dump(2) << "\n";
  const int fails = ms::report_acceptance(rows, std::cerr);
  return fails > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale spectra of magnetic operators on model geometries"};
  app.require_subcommand(1);

  CommonArgs sa;
  std::string s_geom = "torus";
  int s_m = 0;
  double s_b = 0.0, s_bx = 0.0, s_by = 0.0;
  CLI::App* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues of one model");
  spectrum->add_option("--geom", s_geom,
                       "torus|circle|box|kepler|sol|maass|nil|sphere_bundle_h");
  spectrum->add_option("--L", sa.lengths, "torus lengths, comma separated");
  spectrum->add_option("--lo", sa.lo, "box lower corner, comma separated");
  spectrum->add_option("--hi", sa.hi, "box upper corner, comma separated");
  spectrum->add_option("--n", sa.n, "nodes per axis");
  spectrum->add_option("--alpha", sa.alpha, "magnetic form spec");
  spectrum->add_option("--V", sa.pot, "scalar potential spec");
  spectrum->add_option("--k", sa.k, "number of eigenvalues");
  spectrum->add_option("--tol", sa.tol, "iterative solver tolerance");
  spectrum->add_option("--m", s_m, "angular / fiber quantum number");
  spectrum->add_option("--B", s_b, "field strength");
  spectrum->add_option("--Bx", s_bx, "sol field, x component");
  spectrum->add_option("--By", s_by, "sol field, y component");
  spectrum->add_option("--out", sa.out, "CSV output path");
  spectrum->add_option("--dump-matrix", sa.dump, "matrix-market dump path");

  CommonArgs ba;
  double b_a = std::numeric_limits<double>::quiet_NaN();
  std::string b_cover = "1";
  int b_samples = 64;
  ba.k = 3;
  CLI::App* bands = app.add_subcommand("bands", "twisted spectra over a cover's characters");
  bands->add_option("--geom", s_geom, "torus|circle (assembled torus models)");
  bands->add_option("--L", ba.lengths, "torus lengths, comma separated");
  bands->add_option("--n", ba.n, "nodes per axis");
  bands->add_option("--a", b_a, "circle holonomy parameter (form 2 pi a dx / L)");
  bands->add_option("--alpha", ba.alpha, "magnetic form spec (overridden by --a)");
  bands->add_option("--V", ba.pot, "scalar potential spec");
  bands->add_option("--cover", b_cover, "folds per axis (0 = infinite cyclic)");
  bands->add_option("--k", ba.k, "bands per character");
  bands->add_option("--samples", b_samples, "character samples per infinite axis");
  bands->add_option("--out", ba.out, "CSV output path");

  std::string c_family = "sphere_bundle_h";
  double c_b0 = 0.0, c_b1 = 3.0, c_step = 1.0 / 64.0;
  std::string c_csv, c_svg;
  CLI::App* curve = app.add_subcommand("curve", "lambda0 sweep against the closed form");
  curve->add_option("--family", c_family, "maass|sphere_bundle_h|nil_abelian|nil_universal");
  curve->add_option("--b0", c_b0, "sweep start");
  curve->add_option("--b1", c_b1, "sweep end");
  curve->add_option("--step", c_step, "sweep step");
  curve->add_option("--out", c_csv, "CSV output path");
  curve->add_option("--svg", c_svg, "SVG output path");

  CommonArgs ma;
  ma.alpha = "0.7+sin";
  ma.tol = 1e-6;
  bool m_strict = false;
  CLI::App* mane = app.add_subcommand("mane", "minimax critical value on the torus");
  mane->add_option("--geom", s_geom, "torus|circle");
  mane->add_option("--L", ma.lengths, "torus lengths, comma separated");
  mane->add_option("--n", ma.n, "nodes per axis");
  mane->add_option("--alpha", ma.alpha, "magnetic form spec");
  mane->add_option("--V", ma.pot, "scalar potential spec");
  mane->add_option("--tol", ma.tol, "target optimality resolution");
  mane->add_flag("--strict", m_strict, "also minimize over the cohomology class");

  std::string r_family = "maass", r_lambdas = "1";
  double r_b = 0.0, r_a = 0.0, r_cap = std::numeric_limits<double>::quiet_NaN();
  int r_zero = 0, r_m = 1;
  CLI::App* reference = app.add_subcommand("reference", "closed-form spectra");
  reference->add_option("--family", r_family,
                        "maass|sphere_bundle_h|nil_abelian|nil_universal|sl2_universal|"
                        "sol_axis|landau|kepler|circle");
  reference->add_option("--B", r_b, "field strength");
  reference->add_option("--a", r_a, "circle holonomy parameter");
  reference->add_option("--lambda", r_lambdas, "landau skew eigenvalues, comma separated");
  reference->add_option("--zero-dim", r_zero, "landau field-free directions");
  reference->add_option("--m", r_m, "kepler angular momentum");
  reference->add_option("--cap", r_cap, "list points up to this value");

  std::string v_suite = "all";
  unsigned v_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--suite", v_suite, "all|closedform|properties|C01..C11");
  verify->add_option("--seed", v_seed, "seed offset for the randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(s_geom, sa, s_m, s_b, s_bx, s_by);
    if (bands->parsed()) return cmd_bands(ba, b_a, b_cover, b_samples);
    if (curve->parsed()) return cmd_curve(c_family, c_b0, c_b1, c_step, c_csv, c_svg);
    if (mane->parsed()) return cmd_mane(ma, m_strict);
    if (reference->parsed())
      return cmd_reference(r_family, r_b, r_a, r_lambdas, r_zero, r_m, r_cap);
    if (verify->parsed()) return cmd_verify(v_suite, v_seed);
  } catch (const ms::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ms::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
