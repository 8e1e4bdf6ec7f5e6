#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace l2density {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// All thresholds are relative unless a caller's quantity is dimensionless;
// every comparison site states which scale it normalizes by.
struct Tolerances {
  double psd_eps = 1e-10;       // eigenvalue floor for positivity checks
  double rank_eps = 1e-10;      // singular-value cutoff, relative to the largest
  double residual_eps = 1e-9;   // operator-identity residual bound
  double cluster_eps = 1e-8;    // eigenvalue/atom clustering radius

  bool valid() const {
    return psd_eps >= 0 && rank_eps >= 0 && residual_eps >= 0 && cluster_eps >= 0;
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch between arguments.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Duplicate or coincident atoms in a measure.
class DegenerateAtomError : public Error {
 public:
  using Error::Error;
};

// Positivity required but violated beyond tolerance.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// Requested window exceeds the available data.
class WindowError : public Error {
 public:
  using Error::Error;
};

// Operators that must commute do not, beyond tolerance.
class CommutationError : public Error {
 public:
  using Error::Error;
};

// Structural failure of a spectral model (non-cyclic family, rank mismatch).
class ModelError : public Error {
 public:
  using Error::Error;
};

// Malformed external input (JSON, CLI arguments).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace l2density
