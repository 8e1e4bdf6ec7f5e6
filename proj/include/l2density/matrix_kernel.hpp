#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "l2density/core.hpp"

namespace l2density {

// Largest entry magnitude; 0 for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  return a.derived().cwiseAbs().maxCoeff();
}

// <a, b>, linear in the first argument.
inline Complex inner(const Vector& a, const Vector& b) { return b.dot(a); }

// Matrix of pairwise inner products of the columns of e: entry (a, b) = <e_a, e_b>.
inline Matrix gram_of_columns(const Matrix& e) {
  return (e.adjoint() * e).transpose();
}

template <typename Derived>
bool hermitian_check(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  if (a.rows() != a.cols()) throw DimensionError("hermitian_check: matrix must be square");
  const Matrix m = a.derived();
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= tol.residual_eps * scale;
}

struct PsdResult {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

// min eigenvalue >= -psd_eps * max(1, max eigenvalue). Requires Hermitian input.
template <typename Derived>
PsdResult psd_check(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  if (!hermitian_check(a, tol)) throw DomainError("psd_check: matrix must be Hermitian");
  if (a.rows() == 0) return {true, 0.0};
  const Matrix m = 0.5 * (a.derived() + a.derived().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  return {lo >= -tol.psd_eps * std::max(1.0, hi), lo};
}

// Count of singular values above rank_eps * (largest singular value).
template <typename Derived>
int numerical_rank(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a.derived());
  const RealVector& sigma = svd.singularValues();
  const double smax = sigma(0);
  if (!(smax > 0.0)) return 0;
  int r = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tol.rank_eps * smax) ++r;
  return r;
}

struct HermitianEigensystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns are orthonormal eigenvectors
};

template <typename Derived>
HermitianEigensystem hermitian_eigensystem(const Eigen::MatrixBase<Derived>& a,
                                           const Tolerances& tol = {}) {
  if (!hermitian_check(a, tol)) throw DomainError("hermitian_eigensystem: matrix must be Hermitian");
  const Matrix m = 0.5 * (a.derived() + a.derived().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  return {es.eigenvalues(), es.eigenvectors()};
}

// C with W = C C^H, C of full column rank r = rank of the clamped spectrum,
// columns in ascending eigenvalue order (so a diagonal W with ascending
// diagonal factors into a diagonal C). Eigenvalues in [-psd_eps*scale, 0) are
// clamped to zero; anything lower is rejected.
template <typename Derived>
Matrix psd_factor(const Eigen::MatrixBase<Derived>& w, const Tolerances& tol = {}) {
  const PsdResult p = psd_check(w, tol);
  if (!p.is_psd)
    throw DomainError("psd_factor: matrix must be positive semidefinite (min eigenvalue " +
                      std::to_string(p.min_eigenvalue) + ")");
  const HermitianEigensystem es = hermitian_eigensystem(w, tol);
  const Index n = es.values.size();
  const double lmax = n > 0 ? std::max(es.values(n - 1), 0.0) : 0.0;
  int r = 0;
  for (Index i = 0; i < n; ++i)
    if (std::max(es.values(i), 0.0) > tol.rank_eps * lmax) ++r;
  Matrix c(n, r);
  for (int k = 0; k < r; ++k) {
    const Index i = n - r + k;  // the kept eigenvalues are the trailing ones
    c.col(k) = es.vectors.col(i) * std::sqrt(es.values(i));
  }
  return c;
}

// Moore-Penrose inverse with singular values below rank_eps * sigma_max dropped.
inline Matrix pseudo_inverse(const Matrix& a, const Tolerances& tol = {}) {
  if (a.size() == 0) return Matrix::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  RealVector inv = RealVector::Zero(sigma.size());
  for (Index i = 0; i < sigma.size(); ++i)
    if (smax > 0.0 && sigma(i) > tol.rank_eps * smax) inv(i) = 1.0 / sigma(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// sigma_max / sigma_min; +inf when singular (or empty).
inline double condition_number(const Matrix& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& sigma = svd.singularValues();
  const double smin = sigma(sigma.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sigma(0) / smin;
}

}  // namespace l2density
