#include "l2density/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "l2density/matrix_kernel.hpp"

namespace l2density {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double phi) {
  const double w = phi - kTwoPi * std::floor((phi + std::numbers::pi) / kTwoPi);
  // floor rounding can land exactly on pi; pi itself maps to -pi (half-open).
  return w >= std::numbers::pi ? w - kTwoPi : w;
}

double angular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

double point_distance(const JointPoint& a, const JointPoint& b) {
  if (a.x.size() != b.x.size() || a.phi.size() != b.phi.size())
    throw DimensionError("point_distance: points live in different spaces");
  double d = 0.0;
  for (Index i = 0; i < a.x.size(); ++i) d = std::max(d, std::abs(a.x(i) - b.x(i)));
  for (Index i = 0; i < a.phi.size(); ++i) d = std::max(d, angular_distance(a.phi(i), b.phi(i)));
  return d;
}

bool point_less(const JointPoint& a, const JointPoint& b) {
  for (Index i = 0; i < a.x.size(); ++i) {
    if (a.x(i) != b.x(i)) return a.x(i) < b.x(i);
  }
  for (Index i = 0; i < a.phi.size(); ++i) {
    if (a.phi(i) != b.phi(i)) return a.phi(i) < b.phi(i);
  }
  return false;
}

MatrixAtomicMeasure::MatrixAtomicMeasure(Index dim, std::vector<MatrixAtom> atoms,
                                         const Tolerances& tol)
    : dim_(dim), atoms_(std::move(atoms)) {
  if (dim_ < 1) throw DimensionError("MatrixAtomicMeasure: dimension must be >= 1");
  if (atoms_.empty()) throw DomainError("MatrixAtomicMeasure: at least one atom required");
  for (const MatrixAtom& a : atoms_) {
    if (a.w.rows() != dim_ || a.w.cols() != dim_)
      throw DimensionError("MatrixAtomicMeasure: weight shape does not match dimension");
    if (!a.w.allFinite()) throw DomainError("MatrixAtomicMeasure: weight entries must be finite");
    if (!std::isfinite(a.t)) throw DomainError("MatrixAtomicMeasure: position must be finite");
  }
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const MatrixAtom& a, const MatrixAtom& b) { return a.t < b.t; });
  for (std::size_t j = 1; j < atoms_.size(); ++j) {
    if (!(atoms_[j].t > atoms_[j - 1].t))
      throw DegenerateAtomError("MatrixAtomicMeasure: positions must be strictly increasing");
  }
  bool any_nonzero = false;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const PsdResult p = psd_check(atoms_[j].w, tol);  // DomainError if non-Hermitian
    if (!p.is_psd)
      throw PositivityError("MatrixAtomicMeasure: weight at atom " + std::to_string(j) +
                            " is not PSD (min eigenvalue " + std::to_string(p.min_eigenvalue) + ")");
    if (max_abs(atoms_[j].w) > 0.0) any_nonzero = true;
  }
  if (!any_nonzero) throw DomainError("MatrixAtomicMeasure: all weights are zero");
}

StripAtomicMeasure::StripAtomicMeasure(std::vector<StripAtom> atoms, const Tolerances& tol)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("StripAtomicMeasure: at least one atom required");
  for (StripAtom& a : atoms_) {
    if (!std::isfinite(a.x) || !std::isfinite(a.phi) || !std::isfinite(a.w))
      throw DomainError("StripAtomicMeasure: atom fields must be finite");
    if (!(a.w > 0.0)) throw PositivityError("StripAtomicMeasure: masses must be positive");
    a.phi = wrap_angle(a.phi);
  }
  std::stable_sort(atoms_.begin(), atoms_.end(), [](const StripAtom& a, const StripAtom& b) {
    return a.x != b.x ? a.x < b.x : a.phi < b.phi;
  });
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    for (std::size_t k = j + 1; k < atoms_.size(); ++k) {
      const double d = std::max(std::abs(atoms_[j].x - atoms_[k].x),
                                angular_distance(atoms_[j].phi, atoms_[k].phi));
      if (d <= tol.cluster_eps)
        throw DegenerateAtomError("StripAtomicMeasure: atoms " + std::to_string(j) + " and " +
                                  std::to_string(k) + " coincide within cluster_eps");
    }
  }
}

JointAtomicMeasure::JointAtomicMeasure(Index dim, Index order_r, Index order_l,
                                       std::vector<JointAtom> atoms, const Tolerances& tol)
    : dim_(dim), order_r_(order_r), order_l_(order_l), atoms_(std::move(atoms)) {
  if (dim_ < 1) throw DimensionError("JointAtomicMeasure: dimension must be >= 1");
  if (order_r_ < 0 || order_l_ < 0)
    throw DomainError("JointAtomicMeasure: orders must be nonnegative");
  if (atoms_.empty()) throw DomainError("JointAtomicMeasure: at least one atom required");
  for (JointAtom& a : atoms_) {
    if (a.u.x.size() != order_r_ || a.u.phi.size() != order_l_)
      throw DimensionError("JointAtomicMeasure: point shape does not match order");
    if (a.w.rows() != dim_ || a.w.cols() != dim_)
      throw DimensionError("JointAtomicMeasure: weight shape does not match dimension");
    if (!a.w.allFinite() || !a.u.x.allFinite() || !a.u.phi.allFinite())
      throw DomainError("JointAtomicMeasure: atom entries must be finite");
    for (Index i = 0; i < a.u.phi.size(); ++i) a.u.phi(i) = wrap_angle(a.u.phi(i));
  }
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const JointAtom& a, const JointAtom& b) { return point_less(a.u, b.u); });
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    for (std::size_t k = j + 1; k < atoms_.size(); ++k) {
      if (point_distance(atoms_[j].u, atoms_[k].u) <= tol.cluster_eps)
        throw DegenerateAtomError("JointAtomicMeasure: atoms " + std::to_string(j) + " and " +
                                  std::to_string(k) + " coincide within cluster_eps");
    }
  }
  bool any_nonzero = false;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const PsdResult p = psd_check(atoms_[j].w, tol);
    if (!p.is_psd)
      throw PositivityError("JointAtomicMeasure: weight at atom " + std::to_string(j) +
                            " is not PSD");
    if (max_abs(atoms_[j].w) > 0.0) any_nonzero = true;
  }
  if (!any_nonzero) throw DomainError("JointAtomicMeasure: all weights are zero");
}

JointAtomicMeasure to_joint(const MatrixAtomicMeasure& m) {
  std::vector<JointAtom> atoms;
  atoms.reserve(m.atoms().size());
  for (const MatrixAtom& a : m.atoms()) {
    JointAtom j;
    j.u.x = RealVector::Constant(1, a.t);
    j.u.phi = RealVector(0);
    j.w = a.w;
    atoms.push_back(std::move(j));
  }
  return {m.dim(), 1, 0, std::move(atoms)};
}

JointAtomicMeasure to_joint(const StripAtomicMeasure& s) {
  std::vector<JointAtom> atoms;
  atoms.reserve(s.atoms().size());
  for (const StripAtom& a : s.atoms()) {
    JointAtom j;
    j.u.x = RealVector::Constant(1, a.x);
    j.u.phi = RealVector::Constant(1, a.phi);
    j.w = Matrix::Constant(1, 1, Complex(a.w, 0.0));
    atoms.push_back(std::move(j));
  }
  return {1, 1, 1, std::move(atoms)};
}

MatrixAtomicMeasure to_matrix_measure(const JointAtomicMeasure& m, const Tolerances& tol) {
  if (m.order_r() != 1 || m.order_l() != 0)
    throw DomainError("to_matrix_measure: measure must have order (1,0)");
  std::vector<MatrixAtom> atoms;
  atoms.reserve(m.atoms().size());
  for (const JointAtom& a : m.atoms()) atoms.push_back({a.u.x(0), a.w});
  return {m.dim(), std::move(atoms), tol};
}

ScalarAtomicMeasure trace_measure(const MatrixAtomicMeasure& m) {
  ScalarAtomicMeasure tau;
  tau.atoms.reserve(m.atoms().size());
  for (const MatrixAtom& a : m.atoms()) tau.atoms.push_back({a.t, a.w.trace().real()});
  return tau;
}

Matrix radon_nikodym(const MatrixAtomicMeasure& m, Index j) {
  if (j < 0 || j >= m.atom_count())
    throw DimensionError("radon_nikodym: atom index out of range");
  const double tr = m.atoms()[static_cast<std::size_t>(j)].w.trace().real();
  if (!(tr > 0.0)) throw DegenerateAtomError("radon_nikodym: atom has zero trace");
  return m.atoms()[static_cast<std::size_t>(j)].w / tr;
}

int l2_dimension(const MatrixAtomicMeasure& m, const Tolerances& tol) {
  int d = 0;
  for (const MatrixAtom& a : m.atoms()) d += numerical_rank(a.w, tol);
  return d;
}

int l2_dimension(const StripAtomicMeasure& s) {
  return static_cast<int>(s.atom_count());
}

int l2_dimension(const JointAtomicMeasure& m, const Tolerances& tol) {
  int d = 0;
  for (const JointAtom& a : m.atoms()) d += numerical_rank(a.w, tol);
  return d;
}

}  // namespace l2density
