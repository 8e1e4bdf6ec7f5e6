#pragma once

#include <vector>

#include "l2density/core.hpp"
#include "l2density/l2space.hpp"
#include "l2density/moments.hpp"

namespace l2density {

enum class GnsKind { raw, hamburger, strip };

// Hilbert space realized from a Hermitian PSD Gram matrix: embedded coordinate
// vectors e_a in C^D (columns of vectors()) with <e_a, e_b> = gram(a, b).
// Dependent indices are kept as dependent vectors, not dropped.
class GnsSpace {
 public:
  explicit GnsSpace(Matrix gram, const Tolerances& tol = {});

  Index size() const { return gram_.rows(); }  // number of indexed vectors
  Index rank() const { return vectors_.rows(); }  // D
  const Matrix& gram() const { return gram_; }
  const Matrix& vectors() const { return vectors_; }  // D x size
  Vector vec(Index a) const { return vectors_.col(a); }
  double gram_residual() const { return gram_residual_; }

  GnsKind kind = GnsKind::raw;

  // Case A layout: flat index k*N+s over degrees 0..degree_window.
  Index block_dim = 0;
  Index degree_window = -1;
  Index flat(Index degree, Index component) const;

  // Case B layout: pairs (m, n), 0 <= m <= m_cap, |n| <= n_cap, lexicographic.
  Index m_cap = -1;
  Index n_cap = -1;
  Index strip_index(Index m, Index n) const;

 private:
  Matrix gram_;
  Matrix vectors_;
  double gram_residual_ = 0.0;
};

GnsSpace build_gns_hamburger(const MatrixMomentSequence& s, Index n, const Tolerances& tol = {});

// Matrix action on the embedded space, defined by least squares on the span of
// the domain vectors; residuals certify the extraction.
struct PartialOperator {
  std::vector<Index> domain;  // indices a whose image is prescribed
  std::vector<Index> image;   // target index for each domain entry
  Matrix matrix;              // D x D; antilinear ops act as v -> matrix * conj(v)
  bool antilinear = false;
  double consistency_residual = 0.0;   // max |matrix * e_dom - e_img|
  double symmetry_residual = -1.0;     // <Au,v> vs <u,Av> on the domain; -1 if unchecked
  double isometry_residual = -1.0;     // | ||Be|| - ||e|| | over the domain; -1 if unchecked
  double conjugation_residual = -1.0;  // <Ju,Jv> vs conj<u,v>; -1 if unchecked
};

// x_k -> x_{k+N}.
PartialOperator shift_operator_a(const GnsSpace& g, Index block_dim, const Tolerances& tol = {});

struct StripGns {
  GnsSpace space;
  PartialOperator a0;  // x_{m,n} -> x_{m+1,n}, symmetric
  PartialOperator b0;  // x_{m,n} -> x_{m,n+1}, isometric
  PartialOperator j0;  // x_{m,n} -> x_{m,-n}, antilinear
  double commutation_residual = 0.0;  // A0 B0 vs B0 A0 on the common domain
};

StripGns build_gns_strip(const StripMomentTable& s, Index m_cap, Index n_cap,
                         const Tolerances& tol = {});

// Linear map from the GNS embedding onto the L2 model coordinates, matched on
// the monomial family; Gram agreement certifies well-definedness, the isometry
// and onto residuals certify unitarity (onto fails when the window does not
// saturate the model).
struct GnsL2Map {
  Matrix u;  // total_dim x rank
  double gram_mismatch = 0.0;
  double isometry_residual = 0.0;
  double onto_residual = 0.0;
};

GnsL2Map gns_l2_map(const GnsSpace& g, const L2Model& model, const Tolerances& tol = {});

}  // namespace l2density
