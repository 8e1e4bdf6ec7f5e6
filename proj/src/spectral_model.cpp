#include "l2density/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "l2density/l2space.hpp"
#include "l2density/matrix_kernel.hpp"
#include "l2density/rng.hpp"

namespace l2density {

SUSet::SUSet(std::vector<Matrix> s_ops, std::vector<Matrix> u_ops, const Tolerances& tol)
    : s_ops_(std::move(s_ops)), u_ops_(std::move(u_ops)) {
  if (s_ops_.empty() && u_ops_.empty())
    throw DomainError("SUSet: order r+l must be >= 1");
  const Matrix& first = s_ops_.empty() ? u_ops_.front() : s_ops_.front();
  dim_ = first.rows();
  if (dim_ < 1) throw DimensionError("SUSet: operators must be at least 1x1");
  auto check_shape = [&](const Matrix& m, const char* what) {
    if (m.rows() != dim_ || m.cols() != dim_)
      throw DimensionError(std::string("SUSet: ") + what + " has inconsistent shape");
    if (!m.allFinite()) throw DomainError(std::string("SUSet: ") + what + " has non-finite entries");
  };
  for (std::size_t j = 0; j < s_ops_.size(); ++j) {
    check_shape(s_ops_[j], "Hermitian operator");
    if (!hermitian_check(s_ops_[j], tol))
      throw DomainError("SUSet: S_" + std::to_string(j) + " is not Hermitian");
  }
  for (std::size_t k = 0; k < u_ops_.size(); ++k) {
    check_shape(u_ops_[k], "unitary operator");
    const double dev = max_abs(Matrix(u_ops_[k].adjoint() * u_ops_[k] - Matrix::Identity(dim_, dim_)));
    if (dev > tol.residual_eps)
      throw DomainError("SUSet: U_" + std::to_string(k) + " is not unitary (deviation " +
                        std::to_string(dev) + ")");
  }
  std::vector<const Matrix*> all;
  for (const Matrix& m : s_ops_) all.push_back(&m);
  for (const Matrix& m : u_ops_) all.push_back(&m);
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      const double scale = std::max({1.0, max_abs(*all[a]), max_abs(*all[b])});
      const double dev = max_abs(Matrix(*all[a] * *all[b] - *all[b] * *all[a]));
      if (dev > tol.residual_eps * scale)
        throw CommutationError("SUSet: operators " + std::to_string(a) + " and " +
                               std::to_string(b) + " do not commute (residual " +
                               std::to_string(dev) + ")");
    }
  }
}

JointSpectralMeasure joint_spectral_decomposition(const SUSet& a, const Tolerances& tol) {
  const Index n = a.dim();
  // Hermitian generators whose joint eigenspaces are exactly the joint
  // eigenspaces of the family: S_j plus Re/Im parts of each U_k.
  std::vector<Matrix> generators;
  for (const Matrix& s : a.s_ops()) generators.push_back(0.5 * (s + s.adjoint()));
  for (const Matrix& u : a.u_ops()) {
    generators.push_back(0.5 * (u + u.adjoint()));
    generators.push_back(Complex(0.0, -0.5) * (u - u.adjoint()));
  }

  std::vector<Matrix> subspaces{Matrix::Identity(n, n)};
  for (const Matrix& h : generators) {
    std::vector<Matrix> refined;
    for (const Matrix& q : subspaces) {
      if (q.cols() == 1) {
        refined.push_back(q);
        continue;
      }
      const Matrix compressed = q.adjoint() * h * q;
      const HermitianEigensystem es =
          hermitian_eigensystem(0.5 * (compressed + compressed.adjoint()), tol);
      Index lo = 0;
      for (Index i = 1; i <= q.cols(); ++i) {
        if (i == q.cols() || es.values(i) - es.values(i - 1) > tol.cluster_eps) {
          refined.push_back(q * es.vectors.middleCols(lo, i - lo));
          lo = i;
        }
      }
    }
    subspaces = std::move(refined);
  }

  // Joint tuple of each subspace from compressed traces.
  const Index r = a.order_r();
  const Index l = a.order_l();
  std::vector<JointPoint> tuples(subspaces.size());
  for (std::size_t p = 0; p < subspaces.size(); ++p) {
    const Matrix& q = subspaces[p];
    const double d = static_cast<double>(q.cols());
    tuples[p].x = RealVector(r);
    tuples[p].phi = RealVector(l);
    for (Index j = 0; j < r; ++j)
      tuples[p].x(j) = Matrix(q.adjoint() * a.s_ops()[static_cast<std::size_t>(j)] * q)
                           .trace()
                           .real() /
                       d;
    for (Index k = 0; k < l; ++k) {
      const Complex z =
          Matrix(q.adjoint() * a.u_ops()[static_cast<std::size_t>(k)] * q).trace() / d;
      tuples[p].phi(k) = wrap_angle(std::arg(z));
    }
  }

  // Merge subspaces whose tuples coincide within cluster_eps.
  std::vector<std::size_t> group(subspaces.size());
  std::iota(group.begin(), group.end(), 0);
  auto root = [&](std::size_t i) {
    while (group[i] != i) i = group[i] = group[group[i]];
    return i;
  };
  for (std::size_t i = 0; i < subspaces.size(); ++i)
    for (std::size_t j = i + 1; j < subspaces.size(); ++j)
      if (point_distance(tuples[i], tuples[j]) <= tol.cluster_eps) group[root(i)] = root(j);

  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> cluster_of(subspaces.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    const std::size_t rt = root(i);
    if (cluster_of[rt] == static_cast<std::size_t>(-1)) {
      cluster_of[rt] = clusters.size();
      clusters.emplace_back();
    }
    clusters[cluster_of[rt]].push_back(i);
  }

  JointSpectralMeasure result;
  for (const auto& members : clusters) {
    Index total = 0;
    for (const std::size_t i : members) total += subspaces[i].cols();
    Matrix basis(n, total);
    Index off = 0;
    for (const std::size_t i : members) {
      basis.middleCols(off, subspaces[i].cols()) = subspaces[i];
      off += subspaces[i].cols();
    }
    // Members are mutually orthogonal up to rounding; re-orthonormalize anyway.
    Eigen::HouseholderQR<Matrix> qr(basis);
    const Matrix q = qr.householderQ() * Matrix::Identity(n, total);
    // Representative tuple: dimension-weighted mean over members (circular for angles).
    JointPoint u;
    u.x = RealVector::Zero(r);
    u.phi = RealVector::Zero(l);
    Complex unit;
    for (Index k = 0; k < l; ++k) {
      unit = {0.0, 0.0};
      for (const std::size_t i : members)
        unit += static_cast<double>(subspaces[i].cols()) * std::polar(1.0, tuples[i].phi(k));
      u.phi(k) = wrap_angle(std::arg(unit));
    }
    for (Index j = 0; j < r; ++j) {
      double acc = 0.0;
      for (const std::size_t i : members)
        acc += static_cast<double>(subspaces[i].cols()) * tuples[i].x(j);
      u.x(j) = acc / static_cast<double>(total);
    }
    result.points.push_back(std::move(u));
    Matrix proj = q * q.adjoint();
    result.projections.push_back(0.5 * (proj + proj.adjoint()));
  }

  // Deterministic order: lexicographic in the joint point.
  std::vector<std::size_t> order(result.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return point_less(result.points[i], result.points[j]);
  });
  JointSpectralMeasure sorted;
  for (const std::size_t i : order) {
    sorted.points.push_back(std::move(result.points[i]));
    sorted.projections.push_back(std::move(result.projections[i]));
  }
  return sorted;
}

int spectral_multiplicity(const SUSet& a, const Tolerances& tol) {
  const JointSpectralMeasure e = joint_spectral_decomposition(a, tol);
  int d = 0;
  for (const Matrix& p : e.projections) d = std::max(d, numerical_rank(p, tol));
  return d;
}

bool cyclicity_check(const SUSet& a, const CyclicFamily& f, const Tolerances& tol) {
  const Index n = a.dim();
  if (f.vectors.empty()) return n == 0;
  for (const Vector& v : f.vectors)
    if (v.size() != n) throw DimensionError("cyclicity_check: family vector has wrong length");

  std::vector<const Matrix*> ops;
  for (const Matrix& m : a.s_ops()) ops.push_back(&m);
  for (const Matrix& m : a.u_ops()) ops.push_back(&m);

  Matrix basis(n, 0);
  const double drop = std::max(tol.rank_eps, 1e-14);
  auto try_add = [&](const Vector& v) {
    const double scale = v.norm();
    if (!(scale > 0.0)) return false;
    Vector w = v;
    for (int pass = 0; pass < 2; ++pass) w -= basis * (basis.adjoint() * w);
    if (w.norm() <= drop * scale) return false;
    basis.conservativeResize(n, basis.cols() + 1);
    basis.col(basis.cols() - 1) = w / w.norm();
    return true;
  };

  std::vector<Vector> queue;
  for (const Vector& v : f.vectors)
    if (try_add(v)) queue.push_back(basis.col(basis.cols() - 1));
  for (std::size_t head = 0; head < queue.size() && basis.cols() < n; ++head) {
    for (const Matrix* t : ops) {
      const Vector image = *t * queue[head];
      if (try_add(image)) queue.push_back(basis.col(basis.cols() - 1));
      if (basis.cols() == n) break;
    }
  }
  return basis.cols() == n;
}

JointAtomicMeasure extract_matrix_measure(const JointSpectralMeasure& e, const CyclicFamily& f,
                                          const Tolerances& tol) {
  if (e.points.empty()) throw DomainError("extract_matrix_measure: empty spectral measure");
  if (f.vectors.empty()) throw DomainError("extract_matrix_measure: empty family");
  const Index n = e.projections.front().rows();
  const Index big_n = static_cast<Index>(f.vectors.size());
  Matrix x(n, big_n);
  for (Index i = 0; i < big_n; ++i) {
    if (f.vectors[static_cast<std::size_t>(i)].size() != n)
      throw DimensionError("extract_matrix_measure: family vector has wrong length");
    x.col(i) = f.vectors[static_cast<std::size_t>(i)];
  }
  std::vector<JointAtom> atoms;
  atoms.reserve(e.points.size());
  int total_rank = 0;
  for (std::size_t p = 0; p < e.points.size(); ++p) {
    JointAtom atom;
    atom.u = e.points[p];
    // weight(i,j) = (P x_i, x_j) = x_j^H P x_i.
    Matrix w = (x.adjoint() * e.projections[p] * x).transpose();
    atom.w = 0.5 * (w + w.adjoint());
    total_rank += numerical_rank(atom.w, tol);
    atoms.push_back(std::move(atom));
  }
  if (total_rank != n)
    throw ModelError("extract_matrix_measure: family is not cyclic (weight ranks cover " +
                     std::to_string(total_rank) + " of " + std::to_string(n) + " dimensions)");
  const Index r = e.points.front().x.size();
  const Index l = e.points.front().phi.size();
  return {big_n, r, l, std::move(atoms), tol};
}

double ModelUnitaryReport::max_residual() const {
  double m = std::max({gram_agreement, unitary_left, unitary_right, basis_residual});
  for (const double r : s_residuals) m = std::max(m, r);
  for (const double r : u_residuals) m = std::max(m, r);
  return m;
}

ModelUnitaryReport model_unitary(const SUSet& a, const CyclicFamily& f, const Tolerances& tol) {
  const Index n = a.dim();
  const JointSpectralMeasure e = joint_spectral_decomposition(a, tol);
  const JointAtomicMeasure mu = extract_matrix_measure(e, f, tol);  // ModelError if not cyclic
  const L2Model model(mu, tol);
  if (model.total_dim() != n)
    throw ModelError("model_unitary: L2 model dimension " + std::to_string(model.total_dim()) +
                     " does not match space dimension " + std::to_string(n));
  // Atoms and spectral points are sorted by the same lexicographic order.
  const Index big_n = static_cast<Index>(f.vectors.size());
  Matrix x(n, big_n);
  for (Index i = 0; i < big_n; ++i) x.col(i) = f.vectors[static_cast<std::size_t>(i)];

  ModelUnitaryReport report;
  report.v = Matrix::Zero(n, model.total_dim());
  for (Index p = 0; p < mu.atom_count(); ++p) {
    if (point_distance(mu.atoms()[static_cast<std::size_t>(p)].u, e.points[static_cast<std::size_t>(p)]) >
        tol.cluster_eps)
      throw ModelError("model_unitary: atom order does not match spectral point order");
    const Matrix y = e.projections[static_cast<std::size_t>(p)] * x;  // n x N
    const Matrix ct = model.factors()[static_cast<std::size_t>(p)].transpose();  // r_p x N
    const Matrix v_p = y * pseudo_inverse(ct, tol);
    report.gram_agreement = std::max(report.gram_agreement, max_abs(Matrix(v_p * ct - y)));
    report.v.middleCols(model.block_offset(p), model.block_rank(p)) = v_p;
  }

  const Matrix vhv = report.v.adjoint() * report.v;
  const Matrix vvh = report.v * report.v.adjoint();
  report.unitary_left = max_abs(Matrix(vhv - Matrix::Identity(vhv.rows(), vhv.cols())));
  report.unitary_right = max_abs(Matrix(vvh - Matrix::Identity(n, n)));

  const Matrix v_inv = report.v.partialPivLu().inverse();
  for (Index j = 0; j < a.order_r(); ++j)
    report.s_residuals.push_back(max_abs(
        Matrix(v_inv * a.s_ops()[static_cast<std::size_t>(j)] * report.v -
               multiplication_matrix_x(model, j))));
  for (Index k = 0; k < a.order_l(); ++k)
    report.u_residuals.push_back(max_abs(
        Matrix(v_inv * a.u_ops()[static_cast<std::size_t>(k)] * report.v -
               multiplication_matrix_w(model, k))));

  double basis = 0.0;
  for (Index s = 0; s < big_n; ++s)
    basis = std::max(basis, max_abs(Vector(report.v * model.embed_unit(s) - x.col(s))));
  report.basis_residual = basis;
  return report;
}

namespace {

constexpr double kTupleSeparation = 0.35;

// Fills coordinates coord .. order_r+order_l-1 of the given tuples so that any
// two differ by >= kTupleSeparation in at least one coordinate. Each level
// splits its tuples into jittered grid values (lines: spacing 0.5; circles: an
// equal partition of [-pi, pi)) and recurses inside each shared value, so the
// placement terminates in O(count * coords) draws and still produces tuple
// sets that only a later coordinate can tell apart.
void place_separated_tuples(SeededRng& rng, Index order_r, Index order_l, Index coord,
                            const std::vector<JointPoint*>& slots) {
  constexpr double pi = std::numbers::pi;
  const Index total = order_r + order_l;
  const Index count = static_cast<Index>(slots.size());
  if (coord >= total || count == 0) return;
  const bool is_line = coord < order_r;

  if (count == 1) {  // nothing left to separate: free draws for the rest
    for (Index c = coord; c < total; ++c) {
      if (c < order_r)
        slots[0]->x(c) = rng.uniform(-1.5, 1.5);
      else
        slots[0]->phi(c - order_r) = wrap_angle(rng.uniform(-pi, pi));
    }
    return;
  }

  const bool last = coord + 1 == total;
  // A circle holds at most floor(2*pi / separation) values this far apart.
  const Index circle_cap = static_cast<Index>(2 * pi / kTupleSeparation);
  Index buckets = last ? count : static_cast<Index>(rng.uniform_int(2, static_cast<int>(count)));
  if (!is_line && buckets > circle_cap) {
    if (last)
      throw DomainError("random_su_set: cannot separate " + std::to_string(count) +
                        " joint tuples on circle coordinates alone");
    buckets = circle_cap;
  }

  std::vector<double> values(static_cast<std::size_t>(buckets));
  if (is_line) {
    const double spacing = 0.5;
    const double jitter = (spacing - kTupleSeparation) / 2.0;
    for (Index i = 0; i < buckets; ++i)
      values[static_cast<std::size_t>(i)] =
          (static_cast<double>(i) - static_cast<double>(buckets - 1) / 2.0) * spacing +
          rng.uniform(-jitter, jitter);
  } else {
    const double spacing = 2 * pi / static_cast<double>(buckets);
    const double jitter = (spacing - kTupleSeparation) / 2.0;
    const double base = rng.uniform(-pi, pi);
    for (Index i = 0; i < buckets; ++i)
      values[static_cast<std::size_t>(i)] =
          wrap_angle(base + static_cast<double>(i) * spacing + rng.uniform(-jitter, jitter));
  }

  const Index base_size = count / buckets;
  const Index remainder = count % buckets;
  Index off = 0;
  for (Index b = 0; b < buckets; ++b) {
    const Index size = base_size + (b < remainder ? 1 : 0);
    const std::vector<JointPoint*> sub(slots.begin() + off, slots.begin() + off + size);
    for (JointPoint* pt : sub) {
      if (is_line)
        pt->x(coord) = values[static_cast<std::size_t>(b)];
      else
        pt->phi(coord - order_r) = values[static_cast<std::size_t>(b)];
    }
    place_separated_tuples(rng, order_r, order_l, coord + 1, sub);
    off += size;
  }
}

}  // namespace

GeneratedSuSet random_su_set(Index n, Index order_r, Index order_l, std::uint64_t seed,
                             Index multiplicity) {
  if (n < 1) throw DimensionError("random_su_set: dimension must be >= 1");
  if (order_r < 0 || order_l < 0 || order_r + order_l < 1)
    throw DomainError("random_su_set: order r+l must be >= 1");
  if (multiplicity < 1 || multiplicity > n)
    throw DomainError("random_su_set: multiplicity must be in 1..n");
  SeededRng rng(seed);

  // Group sizes: first group realizes the multiplicity, the rest fill up.
  std::vector<Index> sizes{multiplicity};
  for (Index rest = n - multiplicity; rest > 0;) {
    const Index g = std::min(multiplicity, rest);
    sizes.push_back(g);
    rest -= g;
  }
  const std::size_t groups = sizes.size();

  // Joint tuples separated by >= kTupleSeparation in the sup metric.
  std::vector<JointPoint> tuples(groups);
  std::vector<JointPoint*> slots;
  for (JointPoint& t : tuples) {
    t.x = RealVector(order_r);
    t.phi = RealVector(order_l);
    slots.push_back(&t);
  }
  place_separated_tuples(rng, order_r, order_l, 0, slots);

  const Matrix q = random_unitary(rng, n);
  std::vector<Matrix> s_ops, u_ops;
  for (Index j = 0; j < order_r; ++j) {
    Vector diag(n);
    Index off = 0;
    for (std::size_t p = 0; p < groups; ++p)
      for (Index i = 0; i < sizes[p]; ++i) diag(off++) = tuples[p].x(j);
    Matrix s = q * diag.asDiagonal() * q.adjoint();
    s_ops.push_back(0.5 * (s + s.adjoint()));
  }
  for (Index k = 0; k < order_l; ++k) {
    Vector diag(n);
    Index off = 0;
    for (std::size_t p = 0; p < groups; ++p)
      for (Index i = 0; i < sizes[p]; ++i) diag(off++) = std::polar(1.0, tuples[p].phi(k));
    u_ops.push_back(q * diag.asDiagonal() * q.adjoint());
  }
  SUSet set(std::move(s_ops), std::move(u_ops), {});

  // Family coefficients per group: well-conditioned g_p x multiplicity blocks
  // keep the model residuals small.
  CyclicFamily family;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix coeff = Matrix::Zero(n, multiplicity);
    Index off = 0;
    bool conditioned = true;
    for (std::size_t p = 0; p < groups; ++p) {
      Matrix block;
      bool ok = false;
      for (int draw = 0; draw < 64 && !ok; ++draw) {
        block = rng.gaussian_matrix(sizes[p], multiplicity);
        Eigen::JacobiSVD<Matrix> svd(block);
        ok = svd.singularValues()(svd.singularValues().size() - 1) > 0.25;
      }
      conditioned = conditioned && ok;
      coeff.middleRows(off, sizes[p]) = block;
      off += sizes[p];
    }
    if (!conditioned) continue;
    family.vectors.clear();
    for (Index i = 0; i < multiplicity; ++i) {
      Vector v = q * coeff.col(i);
      family.vectors.push_back(v / v.norm());
    }
    if (cyclicity_check(set, family, {})) return {std::move(set), std::move(family)};
  }
  throw Error("random_su_set: failed to draw a cyclic family (seed pathology)");
}

}  // namespace l2density
