#pragma once

#include <vector>

#include "l2density/core.hpp"

namespace l2density {

// Wraps into [-pi, pi), half-open.
double wrap_angle(double phi);

// Distance on the circle.
double angular_distance(double a, double b);

// Point of R^r x T^l: r real coordinates, l angles in [-pi, pi).
struct JointPoint {
  RealVector x;
  RealVector phi;
};

// Sup metric; angular coordinates compared with wraparound.
double point_distance(const JointPoint& a, const JointPoint& b);

// Lexicographic on (x..., phi...).
bool point_less(const JointPoint& a, const JointPoint& b);

struct MatrixAtom {
  double t = 0.0;
  Matrix w;
};

// Finitely atomic measure on R with PSD matrix weights.
class MatrixAtomicMeasure {
 public:
  MatrixAtomicMeasure(Index dim, std::vector<MatrixAtom> atoms, const Tolerances& tol = {});

  Index dim() const { return dim_; }
  Index atom_count() const { return static_cast<Index>(atoms_.size()); }
  const std::vector<MatrixAtom>& atoms() const { return atoms_; }

 private:
  Index dim_;
  std::vector<MatrixAtom> atoms_;  // strictly increasing positions
};

struct StripAtom {
  double x = 0.0;
  double phi = 0.0;  // in [-pi, pi)
  double w = 0.0;
};

// Finitely atomic nonnegative scalar measure on the strip R x [-pi, pi).
class StripAtomicMeasure {
 public:
  explicit StripAtomicMeasure(std::vector<StripAtom> atoms, const Tolerances& tol = {});

  Index atom_count() const { return static_cast<Index>(atoms_.size()); }
  const std::vector<StripAtom>& atoms() const { return atoms_; }

 private:
  std::vector<StripAtom> atoms_;  // sorted by (x, phi), pairwise distinct
};

struct ScalarAtom {
  double t = 0.0;
  double mass = 0.0;
};

struct ScalarAtomicMeasure {
  std::vector<ScalarAtom> atoms;
};

struct JointAtom {
  JointPoint u;
  Matrix w;
};

// Matrix-weighted atomic measure on R^r x T^l; the line case is (r,l) = (1,0),
// the strip case is (r,l) = (1,1) with scalar weights, and spectral measures
// extracted from commuting families land here for general (r,l).
class JointAtomicMeasure {
 public:
  JointAtomicMeasure(Index dim, Index order_r, Index order_l, std::vector<JointAtom> atoms,
                     const Tolerances& tol = {});

  Index dim() const { return dim_; }
  Index order_r() const { return order_r_; }
  Index order_l() const { return order_l_; }
  Index atom_count() const { return static_cast<Index>(atoms_.size()); }
  const std::vector<JointAtom>& atoms() const { return atoms_; }

 private:
  Index dim_;
  Index order_r_;
  Index order_l_;
  std::vector<JointAtom> atoms_;  // lexicographically sorted, pairwise distinct
};

JointAtomicMeasure to_joint(const MatrixAtomicMeasure& m);
JointAtomicMeasure to_joint(const StripAtomicMeasure& s);

// Requires order (1,0).
MatrixAtomicMeasure to_matrix_measure(const JointAtomicMeasure& m, const Tolerances& tol = {});

ScalarAtomicMeasure trace_measure(const MatrixAtomicMeasure& m);

// W_j / trace(W_j); PSD with unit trace.
Matrix radon_nikodym(const MatrixAtomicMeasure& m, Index j);

// Sum of weight ranks = dimension of the concrete L^2 model.
int l2_dimension(const MatrixAtomicMeasure& m, const Tolerances& tol = {});
int l2_dimension(const StripAtomicMeasure& s);
int l2_dimension(const JointAtomicMeasure& m, const Tolerances& tol = {});

}  // namespace l2density
