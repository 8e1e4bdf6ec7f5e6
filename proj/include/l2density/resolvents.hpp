#pragma once

#include <string>
#include <vector>

#include "l2density/core.hpp"
#include "l2density/measures.hpp"

namespace l2density {

// Entry ((k,r),(l,s)) = sum_j t_j^{k+l} / (t_j - lambda) * W_j(r,s) over flat
// indices kN+r, 0 <= k,l <= window_n. Requires Im(lambda) > 0.
Matrix resolvent_entries_hamburger(const MatrixAtomicMeasure& m, Complex lambda, Index window_n);

// Entry ((m,n),(m',n')) = sum_j x_j^{m+m'} e^{i(n-n')phi_j} / (x_j - lambda) * w_j
// over the lexicographic (m,n) window. Requires Im(lambda) > 0.
Matrix resolvent_entries_strip(const StripAtomicMeasure& sigma, Complex lambda, Index m_cap,
                               Index n_cap);

// Residuals are absolute max-entry deviations; the inputs this library targets
// keep every compared quantity at unit scale.
struct CanonicalReport {
  bool canonical = false;
  double max_residual = 0.0;
  std::vector<Complex> lambda_set;
  std::vector<std::string> flags;

  double gram_mismatch = 0.0;        // GNS Gram vs L2 model Gram on monomials
  double map_unitarity = 0.0;        // the GNS -> L2 map, both directions
  double transport = 0.0;            // <D e_a, e_b> vs the direct integral entries
  double lambda_independence = 0.0;  // D^{-1} + lambda I across the lambda set
  double hermiticity = 0.0;          // of D^{-1} + lambda I
  double operator_match = 0.0;       // D^{-1} + lambda I vs transported multiplication
  double resolvent_identity = 0.0;   // first resolvent identity, all pairs
  double shift_identity = 0.0;       // A^r e_s = e_{rN+s} (resp. e_{m,n} -> e_{m+r,n})
  double max_condition = 0.0;        // largest cond(D_lambda)
  double b_commutation = -1.0;       // strip only: D_lambda vs transported e^{i phi}
};

// Builds the GNS space from the moments of m over the given degree window,
// transports each D_lambda onto it, and checks the canonicality identities:
// D^{-1} + lambda I is lambda-independent, Hermitian, and equals the
// multiplication operator; plus the first resolvent identity and the shift
// identity. Near-singular D_lambda (condition > 1e12) flags the report.
CanonicalReport verify_canonical_hamburger(const MatrixAtomicMeasure& m,
                                           const std::vector<Complex>& lambdas, Index window_n,
                                           const Tolerances& tol = {});

// Strip version over the (m_cap, n_cap) window; additionally checks that
// D_lambda commutes with the transported multiplication by e^{i phi}.
CanonicalReport verify_canonical_strip(const StripAtomicMeasure& sigma,
                                       const std::vector<Complex>& lambdas, Index m_cap,
                                       Index n_cap, const Tolerances& tol = {});

struct CayleyReport {
  double max_deviation = 0.0;    // <C^k e_{0,n}, e_{0,0}> vs the atom sum
  double inverse_residual = 0.0;  // |C C^{-1} - I|
  Index k_range = 0;
  Index n_range = 0;
};

// C = I + 2i D_i on the strip GNS embedding; compares <C^k x_{0,n}, x_{0,0}>
// with sum_j ((x_j+i)/(x_j-i))^k e^{i n phi_j} w_j for |k| <= k_range,
// |n| <= n_range. Caps < 0 choose a saturating window automatically.
CayleyReport cayley_power_check(const StripAtomicMeasure& sigma, Index k_range, Index n_range,
                                const Tolerances& tol = {}, Index m_cap = -1, Index n_cap = -1);

}  // namespace l2density
