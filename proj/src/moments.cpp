#include "l2density/moments.hpp"

#include <cmath>

#include "l2density/matrix_kernel.hpp"

namespace l2density {

MatrixMomentSequence::MatrixMomentSequence(Index dim, std::vector<Matrix> s, const Tolerances& tol)
    : dim_(dim), s_(std::move(s)) {
  if (dim_ < 1) throw DimensionError("MatrixMomentSequence: dimension must be >= 1");
  if (s_.empty()) throw DomainError("MatrixMomentSequence: at least S_0 required");
  for (std::size_t n = 0; n < s_.size(); ++n) {
    if (s_[n].rows() != dim_ || s_[n].cols() != dim_)
      throw DimensionError("MatrixMomentSequence: moment " + std::to_string(n) +
                           " has wrong shape");
    if (!hermitian_check(s_[n], tol))
      throw DomainError("MatrixMomentSequence: moment " + std::to_string(n) +
                        " is not Hermitian");
  }
}

const Matrix& MatrixMomentSequence::at(Index n) const {
  if (n < 0 || n > max_index())
    throw WindowError("MatrixMomentSequence: moment index " + std::to_string(n) +
                      " outside window 0.." + std::to_string(max_index()));
  return s_[static_cast<std::size_t>(n)];
}

StripMomentTable::StripMomentTable(Index m_max, Index n_max, Matrix values, const Tolerances& tol)
    : m_max_(m_max), n_max_(n_max), values_(std::move(values)) {
  if (m_max_ < 0 || n_max_ < 0) throw WindowError("StripMomentTable: window bounds must be >= 0");
  if (values_.rows() != m_max_ + 1 || values_.cols() != 2 * n_max_ + 1)
    throw DimensionError("StripMomentTable: value grid does not match window");
  if (!values_.allFinite()) throw DomainError("StripMomentTable: entries must be finite");
  const double scale = std::max(1.0, max_abs(values_));
  for (Index m = 0; m <= m_max_; ++m) {
    for (Index n = 0; n <= n_max_; ++n) {
      const Complex a = values_(m, n_max_ + n);
      const Complex b = values_(m, n_max_ - n);
      if (std::abs(b - std::conj(a)) > tol.residual_eps * scale)
        throw DomainError("StripMomentTable: s_{m,-n} != conj(s_{m,n}) at m=" + std::to_string(m) +
                          ", n=" + std::to_string(n));
    }
  }
}

Complex StripMomentTable::at(Index m, Index n) const {
  if (m < 0 || m > m_max_ || n < -n_max_ || n > n_max_)
    throw WindowError("StripMomentTable: index (" + std::to_string(m) + "," + std::to_string(n) +
                      ") outside window");
  return values_(m, n_max_ + n);
}

MatrixMomentSequence matrix_moments(const MatrixAtomicMeasure& m, Index n_max,
                                    const Tolerances& tol) {
  if (n_max < 0) throw WindowError("matrix_moments: n_max must be >= 0");
  std::vector<Matrix> s(static_cast<std::size_t>(n_max) + 1, Matrix::Zero(m.dim(), m.dim()));
  std::vector<double> power(m.atoms().size(), 1.0);  // t_j^n, starting at n = 0
  for (Index n = 0; n <= n_max; ++n) {
    for (std::size_t j = 0; j < m.atoms().size(); ++j) {
      s[static_cast<std::size_t>(n)] += power[j] * m.atoms()[j].w;
      power[j] *= m.atoms()[j].t;
    }
  }
  return {m.dim(), std::move(s), tol};
}

Matrix block_hankel(const MatrixMomentSequence& s, Index n) {
  if (n < 0) throw WindowError("block_hankel: n must be >= 0");
  if (s.max_index() < 2 * n)
    throw WindowError("block_hankel: sequence covers index " + std::to_string(s.max_index()) +
                      ", need " + std::to_string(2 * n));
  const Index nn = s.dim();
  Matrix g = Matrix::Zero((n + 1) * nn, (n + 1) * nn);
  for (Index k = 0; k <= n; ++k)
    for (Index l = 0; l <= n; ++l) g.block(k * nn, l * nn, nn, nn) = s.at(k + l);
  return g;
}

StripMomentTable strip_moments(const StripAtomicMeasure& sigma, Index m_max, Index n_max,
                               const Tolerances& tol) {
  if (m_max < 0 || n_max < 0) throw WindowError("strip_moments: window bounds must be >= 0");
  Matrix values = Matrix::Zero(m_max + 1, 2 * n_max + 1);
  for (Index m = 0; m <= m_max; ++m) {
    for (Index n = -n_max; n <= n_max; ++n) {
      Complex acc{0.0, 0.0};
      for (const StripAtom& a : sigma.atoms()) {
        double xp = 1.0;
        for (Index i = 0; i < m; ++i) xp *= a.x;
        acc += xp * std::polar(a.w, static_cast<double>(n) * a.phi);
      }
      values(m, n_max + n) = acc;
    }
  }
  return {m_max, n_max, std::move(values), tol};
}

Matrix devinatz_gram(const StripMomentTable& s, Index m_cap, Index n_cap) {
  if (m_cap < 0 || n_cap < 0) throw WindowError("devinatz_gram: caps must be >= 0");
  if (s.m_max() < 2 * m_cap || s.n_max() < 2 * n_cap)
    throw WindowError("devinatz_gram: table window (" + std::to_string(s.m_max()) + "," +
                      std::to_string(s.n_max()) + ") too small for caps (" +
                      std::to_string(m_cap) + "," + std::to_string(n_cap) + ")");
  const Index cols = 2 * n_cap + 1;
  const Index size = (m_cap + 1) * cols;
  Matrix g(size, size);
  for (Index m = 0; m <= m_cap; ++m) {
    for (Index n = -n_cap; n <= n_cap; ++n) {
      const Index row = m * cols + (n + n_cap);
      for (Index k = 0; k <= m_cap; ++k) {
        for (Index l = -n_cap; l <= n_cap; ++l) {
          g(row, k * cols + (l + n_cap)) = s.at(m + k, n - l);
        }
      }
    }
  }
  return g;
}

}  // namespace l2density
