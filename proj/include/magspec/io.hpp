#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "magspec/assembly.hpp"
#include "magspec/eigensolve.hpp"
#include "magspec/geometry.hpp"

namespace magspec {

// Shortest round-trip decimal form, locale-independent ('.' always).
std::string format_double(double x);

// header.size() columns, one CSV row per matrix row. Values printed with
// format_double so reruns are byte-identical.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows);

struct CurveSeries {
  std::string label;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

struct SvgOptions {
  int width = 760;
  int height = 480;
  std::string title;
  std::string x_label;
  std::string y_label;
  // shade the half-plane y >= continuum_from (essential spectrum); NaN = off
  double continuum_from = std::numeric_limits<double>::quiet_NaN();
};

void write_svg_curves(const std::string& path,
                      const std::vector<CurveSeries>& series,
                      const SvgOptions& opt = {});

// MatrixMarket coordinate format, complex hermitian entries written fully.
void write_matrix_market(const std::string& path, const SparseCd& m);

nlohmann::json geometry_json(const Grid& grid);
nlohmann::json spectrum_json(const SpectrumResult& sp);

}  // namespace magspec
