#pragma once

#include <cstdint>
#include <vector>

#include "l2density/core.hpp"
#include "l2density/measures.hpp"

namespace l2density {

// Commuting family of r Hermitian and l unitary matrices on C^n.
class SUSet {
 public:
  SUSet(std::vector<Matrix> s_ops, std::vector<Matrix> u_ops, const Tolerances& tol = {});

  Index dim() const { return dim_; }
  Index order_r() const { return static_cast<Index>(s_ops_.size()); }
  Index order_l() const { return static_cast<Index>(u_ops_.size()); }
  const std::vector<Matrix>& s_ops() const { return s_ops_; }
  const std::vector<Matrix>& u_ops() const { return u_ops_; }

 private:
  Index dim_;
  std::vector<Matrix> s_ops_;
  std::vector<Matrix> u_ops_;
};

// Finite joint spectrum: points u_p with orthogonal projections summing to I.
struct JointSpectralMeasure {
  std::vector<JointPoint> points;      // sorted lexicographically
  std::vector<Matrix> projections;     // Hermitian idempotent, mutually orthogonal
};

struct CyclicFamily {
  std::vector<Vector> vectors;
};

// Simultaneous diagonalization by recursive eigenspace splitting; joint tuples
// within cluster_eps (angular wraparound) are merged and re-orthogonalized.
JointSpectralMeasure joint_spectral_decomposition(const SUSet& a, const Tolerances& tol = {});

// Maximal joint eigenspace dimension.
int spectral_multiplicity(const SUSet& a, const Tolerances& tol = {});

// True iff mixed operator powers of the family vectors span C^n. Exponents
// 0..n-1 per operator suffice (Cayley-Hamilton); realized as invariant-subspace
// closure, which reaches exactly that span.
bool cyclicity_check(const SUSet& a, const CyclicFamily& f, const Tolerances& tol = {});

// One atom per joint point with weight ((P_p x_i, x_j))_{i,j}; fails unless the
// family is cyclic (weight ranks must cover every eigenspace).
JointAtomicMeasure extract_matrix_measure(const JointSpectralMeasure& e, const CyclicFamily& f,
                                          const Tolerances& tol = {});

struct ModelUnitaryReport {
  Matrix v;  // n x D, D = n on success
  double gram_agreement = 0.0;   // well-definedness: V restricted to each block
  double unitary_left = 0.0;     // |V^H V - I|
  double unitary_right = 0.0;    // |V V^H - I|
  std::vector<double> s_residuals;  // |V^{-1} S_j V - X_j| per j
  std::vector<double> u_residuals;  // |V^{-1} U_k V - W_k| per k
  double basis_residual = 0.0;      // |V emb(e_s) - x_s| over s

  double max_residual() const;
};

// The model unitary intertwining the family with multiplication operators on
// the L2 model of the extracted measure; defined by chi_{u_p} e_s -> P_p x_s.
ModelUnitaryReport model_unitary(const SUSet& a, const CyclicFamily& f, const Tolerances& tol = {});

struct GeneratedSuSet {
  SUSet set;
  CyclicFamily family;  // size = spectral multiplicity
};

// Deterministic function of the seed: Haar-like eigenbasis, joint tuples
// separated by >= 0.35 in the sup metric, multiplicity = largest tuple repeat.
GeneratedSuSet random_su_set(Index n, Index order_r, Index order_l, std::uint64_t seed,
                             Index multiplicity = 1);

}  // namespace l2density
