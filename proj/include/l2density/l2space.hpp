#pragma once

#include <vector>

#include "l2density/core.hpp"
#include "l2density/measures.hpp"
#include "l2density/polynomials.hpp"

namespace l2density {

// Concrete coordinate model of L^2 of an atomic measure: per atom j a factor
// C_j (N x r_j) with W_j = C_j C_j^*, total dimension D = sum r_j, and the
// embedding f -> ((f(u_j) C_j)^T)_j stacked. The embedding is an isometry onto C^D.
class L2Model {
 public:
  explicit L2Model(JointAtomicMeasure measure, const Tolerances& tol = {});

  const JointAtomicMeasure& measure() const { return measure_; }
  const std::vector<Matrix>& factors() const { return factors_; }
  Index total_dim() const { return total_dim_; }
  Index block_offset(Index j) const { return offsets_[static_cast<std::size_t>(j)]; }
  Index block_rank(Index j) const {
    return factors_[static_cast<std::size_t>(j)].cols();
  }

  // Coordinates of the function with row-vector value values[j] at atom j.
  Vector embed_values(const std::vector<RowVector>& values) const;
  // Requires order (1,0).
  Vector embed(const VectorPolynomial& f) const;
  // Requires order (1,1) and scalar weights.
  Vector embed(const PowerTrigPolynomial& p) const;
  // Constant polynomial e_s.
  Vector embed_unit(Index s) const;

 private:
  JointAtomicMeasure measure_;
  std::vector<Matrix> factors_;
  std::vector<Index> offsets_;
  Index total_dim_ = 0;
};

L2Model build_l2_model(const MatrixAtomicMeasure& m, const Tolerances& tol = {});
L2Model build_l2_model(const StripAtomicMeasure& s, const Tolerances& tol = {});

// Multiplication by real coordinate `coord`: block-diagonal x_j(coord) * I_{r_j}.
Matrix multiplication_matrix_x(const L2Model& model, Index coord = 0);
// Multiplication by e^{i phi_coord}: block-diagonal e^{i phi_j(coord)} * I_{r_j}.
Matrix multiplication_matrix_w(const L2Model& model, Index coord = 0);

Complex inner_product_vector(const VectorPolynomial& f, const VectorPolynomial& g,
                             const MatrixAtomicMeasure& m);
Complex inner_product_strip(const PowerTrigPolynomial& p, const PowerTrigPolynomial& q,
                            const StripAtomicMeasure& sigma);

// G_{pq} = <family_p, family_q>; Hermitian PSD.
Matrix gram_matrix(const std::vector<VectorPolynomial>& family, const MatrixAtomicMeasure& m);
Matrix gram_matrix(const std::vector<PowerTrigPolynomial>& family, const StripAtomicMeasure& sigma);

struct DensityReport {
  int space_dim = 0;
  int span_dim = 0;
  int saturation_degree = 0;  // smallest degree cap achieving span_dim
  bool dense = false;
};

// Rank of the monomial Gram, with the degree cap grown (start K-1, step K)
// until two consecutive caps agree; dense iff the span fills the model.
DensityReport density_test(const MatrixAtomicMeasure& m, const Tolerances& tol = {});
// Case B grows the m- and n-caps symmetrically.
DensityReport density_test(const StripAtomicMeasure& sigma, const Tolerances& tol = {});

}  // namespace l2density
