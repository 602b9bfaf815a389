#include "magspec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "magspec/errors.hpp"

namespace magspec {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path);
  return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows) {
  if (rows.size() > 0 && long(header.size()) != rows.cols())
    throw ConfigError("csv header width does not match the data");
  std::ofstream out = open_out(path);
  for (size_t j = 0; j < header.size(); ++j)
    out << (j ? "," : "") << header[j];
  out << "\n";
  for (long i = 0; i < rows.rows(); ++i) {
    for (long j = 0; j < rows.cols(); ++j)
      out << (j ? "," : "") << format_double(rows(i, j));
    out << "\n";
  }
}

namespace {

struct AxisMap {
  double lo, hi;
  double p0, p1;  // pixel range
  double at(double v) const {
    const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    return p0 + t * (p1 - p0);
  }
};

// round tick spacing to 1/2/5 times a power of ten
double tick_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  if (r < 1.5) return mag;
  if (r < 3.5) return 2.0 * mag;
  if (r < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

std::string trim_label(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

}  // namespace

void write_svg_curves(const std::string& path,
                      const std::vector<CurveSeries>& series,
                      const SvgOptions& opt) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const auto& s : series) {
    for (long i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (!std::isfinite(xlo)) {
    xlo = 0; xhi = 1; ylo = 0; yhi = 1;
  }
  if (std::isfinite(opt.continuum_from)) {
    ylo = std::min(ylo, opt.continuum_from);
    yhi = std::max(yhi, opt.continuum_from);
  }
  if (xhi <= xlo) xhi = xlo + 1;
  if (yhi <= ylo) yhi = ylo + 1;
  const double ypad = 0.06 * (yhi - ylo);
  ylo -= ypad;
  yhi += ypad;

  const double ml = 64, mr = 16, mt = opt.title.empty() ? 16 : 36, mb = 44;
  AxisMap X{xlo, xhi, ml, double(opt.width) - mr};
  AxisMap Y{ylo, yhi, double(opt.height) - mb, mt};  // svg y grows downward

  static const char* palette[] = {"#1f6fb2", "#c4461f", "#3a8f3a",
                                  "#7d4fa8", "#b08a0e", "#3b7f8c"};
  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width
      << " " << opt.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (std::isfinite(opt.continuum_from)) {
    const double y = Y.at(opt.continuum_from);
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
        << (opt.width - ml - mr) << "\" height=\"" << std::max(0.0, y - mt)
        << "\" fill=\"#d8dfe8\" opacity=\"0.7\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\""
        << (opt.width - mr) << "\" y2=\"" << y
        << "\" stroke=\"#7a8aa0\" stroke-dasharray=\"5 4\"/>\n";
  }

  // frame and ticks
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
      << (opt.width - ml - mr) << "\" height=\"" << (opt.height - mt - mb)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  const double dx = tick_step(xhi - xlo);
  for (double t = std::ceil(xlo / dx) * dx; t <= xhi + 1e-12 * dx; t += dx) {
    const double px = X.at(t);
    out << "<line x1=\"" << px << "\" y1=\"" << (opt.height - mb) << "\" x2=\""
        << px << "\" y2=\"" << (opt.height - mb + 5) << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << (opt.height - mb + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << trim_label(t)
        << "</text>\n";
  }
  const double dy = tick_step(yhi - ylo);
  for (double t = std::ceil(ylo / dy) * dy; t <= yhi + 1e-12 * dy; t += dy) {
    const double py = Y.at(t);
    out << "<line x1=\"" << (ml - 5) << "\" y1=\"" << py << "\" x2=\"" << ml
        << "\" y2=\"" << py << "\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << (ml - 8) << "\" y=\"" << (py + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << trim_label(t)
        << "</text>\n";
  }

  int ci = 0;
  double legend_y = mt + 14;
  for (const auto& s : series) {
    const char* color = palette[ci % 6];
    ++ci;
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (long i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << X.at(s.x[i]) << "," << Y.at(s.y[i]) << " ";
    }
    out << "\"/>\n";
    if (!s.label.empty()) {
      out << "<line x1=\"" << (ml + 10) << "\" y1=\"" << legend_y << "\" x2=\""
          << (ml + 34) << "\" y2=\"" << legend_y << "\" stroke=\"" << color
          << "\" stroke-width=\"1.6\"/>\n";
      out << "<text x=\"" << (ml + 40) << "\" y=\"" << (legend_y + 4)
          << "\" font-size=\"12\">" << s.label << "</text>\n";
      legend_y += 16;
    }
  }

  if (!opt.title.empty())
    out << "<text x=\"" << (opt.width / 2) << "\" y=\"22\" font-size=\"15\" "
        << "text-anchor=\"middle\">" << opt.title << "</text>\n";
  if (!opt.x_label.empty())
    out << "<text x=\"" << (ml + (opt.width - ml - mr) / 2) << "\" y=\""
        << (opt.height - 8) << "\" font-size=\"12\" text-anchor=\"middle\">"
        << opt.x_label << "</text>\n";
  if (!opt.y_label.empty())
    out << "<text x=\"14\" y=\"" << (mt + (opt.height - mt - mb) / 2)
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << (mt + (opt.height - mt - mb) / 2) << ")\">" << opt.y_label
        << "</text>\n";
  out << "</svg>\n";
}

void write_matrix_market(const std::string& path, const SparseCd& m) {
  std::ofstream out = open_out(path);
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseCd::InnerIterator it(m, k); it; ++it)
      out << (it.row() + 1) << " " << (it.col() + 1) << " "
          << format_double(it.value().real()) << " "
          << format_double(it.value().imag()) << "\n";
}

nlohmann::json geometry_json(const Grid& grid) {
  nlohmann::json j;
  j["kind"] = geom_kind_name(grid.geom.kind);
  j["dim"] = grid.dim();
  j["nodes"] = grid.size();
  j["chart"] = grid.geom.chart_note;
  for (int k = 0; k < grid.dim(); ++k) {
    j["lo"].push_back(grid.geom.lo[k]);
    j["hi"].push_back(grid.geom.hi[k]);
    j["n"].push_back(grid.n[k]);
    j["h"].push_back(grid.h[k]);
    j["boundary"].push_back(grid.periodic(k) ? "periodic" : "dirichlet");
  }
  return j;
}

nlohmann::json spectrum_json(const SpectrumResult& sp) {
  nlohmann::json j;
  j["eigenvalues"] = std::vector<double>(
      sp.eigenvalues.data(), sp.eigenvalues.data() + sp.eigenvalues.size());
  j["residuals"] = std::vector<double>(
      sp.residuals.data(), sp.residuals.data() + sp.residuals.size());
  j["converged"] = sp.converged;
  j["method"] = sp.method;
  return j;
}

}  // namespace magspec
