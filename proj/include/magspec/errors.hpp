#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace magspec {

// Precondition / configuration failures. The CLI maps these to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateChart : ConfigError { using ConfigError::ConfigError; };
struct TooCoarse : ConfigError { using ConfigError::ConfigError; };
struct OddDimensionPairing : ConfigError { using ConfigError::ConfigError; };
struct NotSkew : ConfigError { using ConfigError::ConfigError; };
struct NotTorus : ConfigError { using ConfigError::ConfigError; };
struct ShapeMismatch : ConfigError { using ConfigError::ConfigError; };
struct NonLatticeShift : ConfigError { using ConfigError::ConfigError; };
struct UnknownFamily : ConfigError { using ConfigError::ConfigError; };
struct UnknownGeometry : ConfigError { using ConfigError::ConfigError; };
struct InvalidQuantumNumber : ConfigError { using ConfigError::ConfigError; };
struct TooLarge : ConfigError { using ConfigError::ConfigError; };

// Numerical failures. The CLI maps these to exit code 3.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianAssembly : SolverError { using SolverError::SolverError; };

struct NotConverged : SolverError {
  NotConverged(const std::string& what, std::vector<double> best_so_far,
               double gap_)
      : SolverError(what), best(std::move(best_so_far)), gap(gap_) {}
  std::vector<double> best;  // best eigenvalue (or objective) estimates
  double gap;                // residual / optimality gap at abort
};

struct BoundaryAmplitudeTooLarge : SolverError {
  BoundaryAmplitudeTooLarge(const std::string& what, double amplitude_)
      : SolverError(what), amplitude(amplitude_) {}
  double amplitude;  // relative eigenfunction amplitude at the cut
};

struct ScanRangeExhausted : SolverError { using SolverError::SolverError; };

struct ViolationFound : SolverError {
  ViolationFound(const std::string& what, double lambda0_, double c_)
      : SolverError(what), lambda0(lambda0_), c(c_) {}
  double lambda0;
  double c;
};

}  // namespace magspec
