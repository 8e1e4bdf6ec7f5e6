#pragma once

#include <vector>

#include "l2density/core.hpp"
#include "l2density/measures.hpp"

namespace l2density {

// S_0 .. S_{max_index}, each Hermitian N x N.
class MatrixMomentSequence {
 public:
  MatrixMomentSequence(Index dim, std::vector<Matrix> s, const Tolerances& tol = {});

  Index dim() const { return dim_; }
  Index max_index() const { return static_cast<Index>(s_.size()) - 1; }
  const Matrix& at(Index n) const;
  const std::vector<Matrix>& all() const { return s_; }

 private:
  Index dim_;
  std::vector<Matrix> s_;
};

// s_{m,n} for 0 <= m <= m_max, |n| <= n_max, with s_{m,-n} = conj(s_{m,n}).
class StripMomentTable {
 public:
  // values is (m_max+1) x (2*n_max+1); column j holds n = j - n_max.
  StripMomentTable(Index m_max, Index n_max, Matrix values, const Tolerances& tol = {});

  Index m_max() const { return m_max_; }
  Index n_max() const { return n_max_; }
  Complex at(Index m, Index n) const;
  const Matrix& values() const { return values_; }

 private:
  Index m_max_;
  Index n_max_;
  Matrix values_;
};

// S_n = sum_j t_j^n W_j, ascending atom order.
MatrixMomentSequence matrix_moments(const MatrixAtomicMeasure& m, Index n_max,
                                    const Tolerances& tol = {});

// Gamma_n with block (k,l) = S_{k+l}; flat index (k,s) -> kN+s.
Matrix block_hankel(const MatrixMomentSequence& s, Index n);

// s_{m,n} = sum_j x_j^m e^{i n phi_j} w_j, ascending atom order.
StripMomentTable strip_moments(const StripAtomicMeasure& sigma, Index m_max, Index n_max,
                               const Tolerances& tol = {});

// Matrix over pairs (m,n), 0 <= m <= m_cap, |n| <= n_cap in lexicographic (m,n)
// order, entry ((m,n),(k,l)) = s_{m+k, n-l}.
Matrix devinatz_gram(const StripMomentTable& s, Index m_cap, Index n_cap);

}  // namespace l2density
