#pragma once

#include <string>

namespace magspec {

// Normalization of the kinetic term. Half is the canonical choice
// H = (1/2) d* d + V used by every assembled operator; Double is the
// unit-coefficient form (d* d + V = 2 H) in which the flat Landau spectrum
// is usually stated. Closed-form spectra are stored in their source
// normalization and converted explicitly at comparison sites.
enum class Convention { Half, Double };

inline const char* convention_name(Convention c) {
  return c == Convention::Half ? "half" : "double";
}

inline double convert(double value, Convention from, Convention to) {
  if (from == to) return value;
  return from == Convention::Double ? 0.5 * value : 2.0 * value;
}

}  // namespace magspec
