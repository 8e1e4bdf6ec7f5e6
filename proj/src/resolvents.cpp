#include "l2density/resolvents.hpp"

#include <algorithm>
#include <cmath>

#include "l2density/gns.hpp"
#include "l2density/l2space.hpp"
#include "l2density/matrix_kernel.hpp"
#include "l2density/moments.hpp"
#include "l2density/polynomials.hpp"

namespace l2density {

namespace {

constexpr double kSingularCondition = 1e12;

void require_upper_half_plane(Complex lambda) {
  if (!(lambda.imag() > 0.0))
    throw DomainError("resolvent: lambda must lie in the open upper half-plane");
}

// Least-squares transport of prescribed entries <D e_a, e_b> = entries(a, b)
// onto the embedded space: D = (E^+)^H entries^T E^+.
Matrix transport_operator(const GnsSpace& g, const Matrix& entries, const Tolerances& tol,
                          double* transport_residual) {
  const Matrix pinv = pseudo_inverse(g.vectors(), tol);
  Matrix d = pinv.adjoint() * entries.transpose() * pinv;
  if (transport_residual != nullptr)
    *transport_residual =
        max_abs(Matrix(g.vectors().adjoint() * d * g.vectors() - entries.transpose()));
  return d;
}

// Transports every lambda's entry table; false when some D_lambda is
// numerically singular (flag recorded, identity checks must be skipped).
bool transport_resolvents(CanonicalReport& report, const GnsSpace& g,
                          const std::vector<Matrix>& entry_tables, const Tolerances& tol,
                          std::vector<Matrix>& resolvents) {
  bool invertible = true;
  for (const Matrix& entries : entry_tables) {
    double transport = 0.0;
    Matrix d = transport_operator(g, entries, tol, &transport);
    report.transport = std::max(report.transport, transport);
    const double condition = condition_number(d);
    report.max_condition = std::max(report.max_condition, condition);
    if (!(condition < kSingularCondition)) invertible = false;
    resolvents.push_back(std::move(d));
  }
  if (!invertible) report.flags.push_back("resolvent_near_singular");
  return invertible;
}

// lambda-independence, hermiticity, operator match, first resolvent identity.
void check_identities(CanonicalReport& report, const std::vector<Matrix>& resolvents,
                      const Matrix& a_hat) {
  const Index d = a_hat.rows();
  std::vector<Matrix> shifted;  // D_lambda^{-1} + lambda I
  for (std::size_t i = 0; i < resolvents.size(); ++i)
    shifted.push_back(resolvents[i].partialPivLu().inverse() +
                      report.lambda_set[i] * Matrix::Identity(d, d));
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    report.hermiticity =
        std::max(report.hermiticity, max_abs(Matrix(shifted[i] - shifted[i].adjoint())));
    report.operator_match = std::max(report.operator_match, max_abs(Matrix(shifted[i] - a_hat)));
    for (std::size_t j = i + 1; j < shifted.size(); ++j) {
      report.lambda_independence =
          std::max(report.lambda_independence, max_abs(Matrix(shifted[i] - shifted[j])));
      const Complex dl = report.lambda_set[i] - report.lambda_set[j];
      report.resolvent_identity = std::max(
          report.resolvent_identity,
          max_abs(Matrix(resolvents[i] - resolvents[j] - dl * resolvents[i] * resolvents[j])));
    }
  }
}

void finalize(CanonicalReport& report, const Tolerances& tol) {
  report.max_residual = std::max({report.gram_mismatch, report.map_unitarity, report.transport,
                                  report.lambda_independence, report.hermiticity,
                                  report.operator_match, report.resolvent_identity,
                                  report.shift_identity, std::max(report.b_commutation, 0.0)});
  report.canonical = report.flags.empty() && report.max_residual <= tol.residual_eps;
}

}  // namespace

Matrix resolvent_entries_hamburger(const MatrixAtomicMeasure& m, Complex lambda, Index window_n) {
  require_upper_half_plane(lambda);
  if (window_n < 0) throw WindowError("resolvent_entries_hamburger: window must be >= 0");
  const Index nn = m.dim();
  const Index size = (window_n + 1) * nn;
  Matrix out = Matrix::Zero(size, size);
  for (const MatrixAtom& atom : m.atoms()) {
    const Complex base = 1.0 / (atom.t - lambda);
    for (Index k = 0; k <= window_n; ++k) {
      for (Index l = 0; l <= window_n; ++l) {
        out.block(k * nn, l * nn, nn, nn) += base * real_power(atom.t, k + l) * atom.w;
      }
    }
  }
  return out;
}

Matrix resolvent_entries_strip(const StripAtomicMeasure& sigma, Complex lambda, Index m_cap,
                               Index n_cap) {
  require_upper_half_plane(lambda);
  if (m_cap < 0 || n_cap < 0) throw WindowError("resolvent_entries_strip: caps must be >= 0");
  const Index cols = 2 * n_cap + 1;
  const Index size = (m_cap + 1) * cols;
  Matrix out = Matrix::Zero(size, size);
  for (const StripAtom& atom : sigma.atoms()) {
    const Complex base = atom.w / (atom.x - lambda);
    for (Index m = 0; m <= m_cap; ++m) {
      for (Index n = -n_cap; n <= n_cap; ++n) {
        const Index row = m * cols + (n + n_cap);
        for (Index mp = 0; mp <= m_cap; ++mp) {
          for (Index np = -n_cap; np <= n_cap; ++np) {
            out(row, mp * cols + (np + n_cap)) +=
                base * real_power(atom.x, m + mp) *
                std::polar(1.0, static_cast<double>(n - np) * atom.phi);
          }
        }
      }
    }
  }
  return out;
}

CanonicalReport verify_canonical_hamburger(const MatrixAtomicMeasure& m,
                                           const std::vector<Complex>& lambdas, Index window_n,
                                           const Tolerances& tol) {
  if (lambdas.empty()) throw DomainError("verify_canonical_hamburger: lambda set is empty");
  for (const Complex lambda : lambdas) require_upper_half_plane(lambda);
  if (window_n < 1) throw WindowError("verify_canonical_hamburger: window must be >= 1");

  CanonicalReport report;
  report.lambda_set = lambdas;

  const MatrixMomentSequence moments = matrix_moments(m, 2 * window_n, tol);
  const GnsSpace g = build_gns_hamburger(moments, window_n, tol);
  const L2Model model = build_l2_model(m, tol);
  const GnsL2Map map = gns_l2_map(g, model, tol);
  report.gram_mismatch = map.gram_mismatch;
  report.map_unitarity = std::max(map.isometry_residual, map.onto_residual);
  if (map.onto_residual > tol.residual_eps) report.flags.push_back("window_not_saturating");

  const Matrix a_hat = map.u.adjoint() * multiplication_matrix_x(model, 0) * map.u;

  std::vector<Matrix> entry_tables;
  for (const Complex lambda : lambdas)
    entry_tables.push_back(resolvent_entries_hamburger(m, lambda, window_n));
  std::vector<Matrix> resolvents;
  if (transport_resolvents(report, g, entry_tables, tol, resolvents)) {
    check_identities(report, resolvents, a_hat);
    // A^r e_s = e_{rN+s} for the whole window.
    double shift = 0.0;
    for (Index s = 0; s < g.block_dim; ++s) {
      Vector cur = g.vec(g.flat(0, s));
      for (Index r = 1; r <= g.degree_window; ++r) {
        cur = a_hat * cur;
        shift = std::max(shift, max_abs(Vector(cur - g.vec(g.flat(r, s)))));
      }
    }
    report.shift_identity = shift;
  }
  finalize(report, tol);
  return report;
}

CanonicalReport verify_canonical_strip(const StripAtomicMeasure& sigma,
                                       const std::vector<Complex>& lambdas, Index m_cap,
                                       Index n_cap, const Tolerances& tol) {
  if (lambdas.empty()) throw DomainError("verify_canonical_strip: lambda set is empty");
  for (const Complex lambda : lambdas) require_upper_half_plane(lambda);
  if (m_cap < 1 || n_cap < 1)
    throw WindowError("verify_canonical_strip: caps must be >= 1");

  CanonicalReport report;
  report.lambda_set = lambdas;

  const StripMomentTable table = strip_moments(sigma, 2 * m_cap, 2 * n_cap, tol);
  GnsSpace g(devinatz_gram(table, m_cap, n_cap), tol);
  g.kind = GnsKind::strip;
  g.m_cap = m_cap;
  g.n_cap = n_cap;
  const L2Model model = build_l2_model(sigma, tol);
  const GnsL2Map map = gns_l2_map(g, model, tol);
  report.gram_mismatch = map.gram_mismatch;
  report.map_unitarity = std::max(map.isometry_residual, map.onto_residual);
  if (map.onto_residual > tol.residual_eps) report.flags.push_back("window_not_saturating");

  const Matrix a_hat = map.u.adjoint() * multiplication_matrix_x(model, 0) * map.u;
  const Matrix b_hat = map.u.adjoint() * multiplication_matrix_w(model, 0) * map.u;

  std::vector<Matrix> entry_tables;
  for (const Complex lambda : lambdas)
    entry_tables.push_back(resolvent_entries_strip(sigma, lambda, m_cap, n_cap));
  std::vector<Matrix> resolvents;
  if (transport_resolvents(report, g, entry_tables, tol, resolvents)) {
    check_identities(report, resolvents, a_hat);

    // D_lambda commutes with the image of multiplication by e^{i phi}.
    double comm = 0.0;
    for (const Matrix& d : resolvents)
      comm = std::max(comm, max_abs(Matrix(d * b_hat - b_hat * d)));
    report.b_commutation = comm;

    // A^r e_{m,n} = e_{m+r,n} across the window.
    double shift = 0.0;
    for (Index mm = 0; mm <= g.m_cap; ++mm) {
      for (Index nn = -g.n_cap; nn <= g.n_cap; ++nn) {
        Vector cur = g.vec(g.strip_index(mm, nn));
        for (Index r = 1; mm + r <= g.m_cap; ++r) {
          cur = a_hat * cur;
          shift = std::max(shift, max_abs(Vector(cur - g.vec(g.strip_index(mm + r, nn)))));
        }
      }
    }
    report.shift_identity = shift;
  }
  finalize(report, tol);
  return report;
}

CayleyReport cayley_power_check(const StripAtomicMeasure& sigma, Index k_range, Index n_range,
                                const Tolerances& tol, Index m_cap, Index n_cap) {
  if (k_range < 0 || n_range < 0)
    throw DomainError("cayley_power_check: ranges must be >= 0");
  if (m_cap < 0 || n_cap < 0) {
    const DensityReport density = density_test(sigma, tol);
    const Index sat = density.saturation_degree;
    if (m_cap < 0) m_cap = std::max<Index>(sat, 1);
    if (n_cap < 0) n_cap = std::max({sat, n_range, Index{1}});
  }
  if (n_cap < n_range)
    throw WindowError("cayley_power_check: n_cap " + std::to_string(n_cap) +
                      " cannot represent x_{0,n} for |n| <= " + std::to_string(n_range));

  const StripMomentTable table = strip_moments(sigma, 2 * m_cap, 2 * n_cap, tol);
  GnsSpace g(devinatz_gram(table, m_cap, n_cap), tol);
  g.kind = GnsKind::strip;
  g.m_cap = m_cap;
  g.n_cap = n_cap;

  const Matrix entries = resolvent_entries_strip(sigma, Complex{0.0, 1.0}, m_cap, n_cap);
  const Matrix d_i = transport_operator(g, entries, tol, nullptr);
  const Index d = g.rank();
  const Matrix c = Matrix::Identity(d, d) + Complex{0.0, 2.0} * d_i;
  const Matrix c_inv = c.partialPivLu().inverse();

  CayleyReport report;
  report.k_range = k_range;
  report.n_range = n_range;
  report.inverse_residual = max_abs(Matrix(c * c_inv - Matrix::Identity(d, d)));

  const Vector e00 = g.vec(g.strip_index(0, 0));
  for (Index n = -n_range; n <= n_range; ++n) {
    Vector pos = g.vec(g.strip_index(0, n));
    Vector neg = pos;
    for (Index k = 0; k <= k_range; ++k) {
      if (k > 0) {
        pos = c * pos;
        neg = c_inv * neg;
      }
      for (const int sign : {+1, -1}) {
        if (k == 0 && sign < 0) continue;
        const Vector& v = sign > 0 ? pos : neg;
        const Complex lhs = inner(v, e00);
        Complex rhs{0.0, 0.0};
        for (const StripAtom& atom : sigma.atoms()) {
          const Complex cayley = (atom.x + Complex{0.0, 1.0}) / (atom.x - Complex{0.0, 1.0});
          const Complex powered =
              sign > 0 ? complex_power(cayley, k) : complex_power(std::conj(cayley), k);
          rhs += powered * std::polar(atom.w, static_cast<double>(n) * atom.phi);
        }
        report.max_deviation = std::max(report.max_deviation, std::abs(lhs - rhs));
      }
    }
  }
  return report;
}

}  // namespace l2density
