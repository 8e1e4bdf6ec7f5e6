#include "l2density/gns.hpp"

#include <cmath>

#include "l2density/matrix_kernel.hpp"

namespace l2density {

GnsSpace::GnsSpace(Matrix gram, const Tolerances& tol) : gram_(std::move(gram)) {
  const PsdResult p = psd_check(gram_, tol);  // DomainError if non-Hermitian
  if (!p.is_psd)
    throw PositivityError("GnsSpace: Gram matrix is not PSD (min eigenvalue " +
                          std::to_string(p.min_eigenvalue) + ")");
  const HermitianEigensystem es = hermitian_eigensystem(gram_, tol);
  const Index m = gram_.rows();
  const double lmax = m > 0 ? std::max(es.values(m - 1), 0.0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < m; ++i)
    if (std::max(es.values(i), 0.0) > tol.rank_eps * lmax) ++rank;
  // Column a of vectors_ is row a of Q Lambda^{1/2} (kept columns, descending
  // eigenvalue), transposed without conjugation so that <e_a, e_b> = gram(a, b).
  vectors_ = Matrix(rank, m);
  for (Index d = 0; d < rank; ++d) {
    const Index i = m - 1 - d;
    vectors_.row(d) = (es.vectors.col(i) * std::sqrt(es.values(i))).transpose();
  }
  gram_residual_ = max_abs(gram_of_columns(vectors_) - gram_);
}

Index GnsSpace::flat(Index degree, Index component) const {
  if (kind != GnsKind::hamburger)
    throw DomainError("GnsSpace::flat: space does not carry the kN+s layout");
  if (degree < 0 || degree > degree_window || component < 0 || component >= block_dim)
    throw WindowError("GnsSpace::flat: index (" + std::to_string(degree) + "," +
                      std::to_string(component) + ") outside window");
  return degree * block_dim + component;
}

Index GnsSpace::strip_index(Index m, Index n) const {
  if (kind != GnsKind::strip)
    throw DomainError("GnsSpace::strip_index: space does not carry the (m,n) layout");
  if (m < 0 || m > m_cap || n < -n_cap || n > n_cap)
    throw WindowError("GnsSpace::strip_index: index (" + std::to_string(m) + "," +
                      std::to_string(n) + ") outside window");
  return m * (2 * n_cap + 1) + (n + n_cap);
}

GnsSpace build_gns_hamburger(const MatrixMomentSequence& s, Index n, const Tolerances& tol) {
  GnsSpace g(block_hankel(s, n), tol);
  g.kind = GnsKind::hamburger;
  g.block_dim = s.dim();
  g.degree_window = n;
  return g;
}

namespace {

// Least-squares matrix sending the domain columns of e to the image columns.
PartialOperator make_partial_operator(const Matrix& e, std::vector<Index> domain,
                                      std::vector<Index> image, bool antilinear,
                                      const Tolerances& tol) {
  PartialOperator op;
  op.domain = std::move(domain);
  op.image = std::move(image);
  op.antilinear = antilinear;
  if (op.domain.empty()) throw WindowError("partial operator: empty domain");
  const Index d = e.rows();
  const Index k = static_cast<Index>(op.domain.size());
  Matrix e_dom(d, k), e_img(d, k);
  for (Index i = 0; i < k; ++i) {
    e_dom.col(i) = e.col(op.domain[static_cast<std::size_t>(i)]);
    e_img.col(i) = e.col(op.image[static_cast<std::size_t>(i)]);
  }
  if (antilinear) e_dom = e_dom.conjugate();
  op.matrix = e_img * pseudo_inverse(e_dom, tol);
  op.consistency_residual = max_abs(op.matrix * e_dom - e_img);
  return op;
}

}  // namespace

PartialOperator shift_operator_a(const GnsSpace& g, Index block_dim, const Tolerances& tol) {
  if (block_dim < 1) throw DimensionError("shift_operator_a: block dimension must be >= 1");
  std::vector<Index> domain, image;
  for (Index a = 0; a + block_dim < g.size(); ++a) {
    domain.push_back(a);
    image.push_back(a + block_dim);
  }
  PartialOperator op = make_partial_operator(g.vectors(), std::move(domain), std::move(image),
                                             /*antilinear=*/false, tol);
  // <A e_a, e_b> = <e_a, A e_b> on the domain span iff E^H A E is Hermitian there.
  const Index k = static_cast<Index>(op.domain.size());
  Matrix e_dom(g.rank(), k);
  for (Index i = 0; i < k; ++i) e_dom.col(i) = g.vec(op.domain[static_cast<std::size_t>(i)]);
  const Matrix compressed = e_dom.adjoint() * op.matrix * e_dom;
  op.symmetry_residual = max_abs(compressed - compressed.adjoint());
  return op;
}

StripGns build_gns_strip(const StripMomentTable& s, Index m_cap, Index n_cap,
                         const Tolerances& tol) {
  if (m_cap < 1) throw WindowError("build_gns_strip: m_cap must be >= 1 so A0 has a domain");
  if (n_cap < 1) throw WindowError("build_gns_strip: n_cap must be >= 1 so B0 has a domain");
  GnsSpace space(devinatz_gram(s, m_cap, n_cap), tol);
  space.kind = GnsKind::strip;
  space.m_cap = m_cap;
  space.n_cap = n_cap;

  std::vector<Index> dom_a, img_a, dom_b, img_b, dom_j, img_j;
  for (Index m = 0; m <= m_cap; ++m) {
    for (Index n = -n_cap; n <= n_cap; ++n) {
      const Index a = space.strip_index(m, n);
      if (m + 1 <= m_cap) {
        dom_a.push_back(a);
        img_a.push_back(space.strip_index(m + 1, n));
      }
      if (n + 1 <= n_cap) {
        dom_b.push_back(a);
        img_b.push_back(space.strip_index(m, n + 1));
      }
      dom_j.push_back(a);
      img_j.push_back(space.strip_index(m, -n));
    }
  }

  StripGns result{std::move(space), {}, {}, {}, 0.0};
  const Matrix& e = result.space.vectors();

  result.a0 = make_partial_operator(e, std::move(dom_a), std::move(img_a), false, tol);
  {
    const Index k = static_cast<Index>(result.a0.domain.size());
    Matrix e_dom(result.space.rank(), k);
    for (Index i = 0; i < k; ++i)
      e_dom.col(i) = result.space.vec(result.a0.domain[static_cast<std::size_t>(i)]);
    const Matrix compressed = e_dom.adjoint() * result.a0.matrix * e_dom;
    result.a0.symmetry_residual = max_abs(compressed - compressed.adjoint());
  }

  result.b0 = make_partial_operator(e, std::move(dom_b), std::move(img_b), false, tol);
  {
    double dev = 0.0;
    for (const Index a : result.b0.domain) {
      const Vector v = result.space.vec(a);
      dev = std::max(dev, std::abs((result.b0.matrix * v).norm() - v.norm()));
    }
    result.b0.isometry_residual = dev;
  }

  result.j0 = make_partial_operator(e, std::move(dom_j), std::move(img_j), true, tol);
  {
    // <J e_a, J e_b> must equal conj <e_a, e_b>.
    const Matrix f = result.j0.matrix * e.conjugate();
    result.j0.conjugation_residual =
        max_abs(gram_of_columns(f) - result.space.gram().conjugate());
  }

  // A0 B0 = B0 A0 on columns lying in both domains.
  std::vector<Index> common;
  for (Index m = 0; m + 1 <= m_cap; ++m)
    for (Index n = -n_cap; n + 1 <= n_cap; ++n) common.push_back(result.space.strip_index(m, n));
  double comm = 0.0;
  const Matrix ab = result.a0.matrix * result.b0.matrix - result.b0.matrix * result.a0.matrix;
  for (const Index a : common) comm = std::max(comm, max_abs(Matrix(ab * result.space.vec(a))));
  result.commutation_residual = comm;
  return result;
}

GnsL2Map gns_l2_map(const GnsSpace& g, const L2Model& model, const Tolerances& tol) {
  Matrix f(model.total_dim(), g.size());
  if (g.kind == GnsKind::hamburger) {
    for (Index k = 0; k <= g.degree_window; ++k)
      for (Index s = 0; s < g.block_dim; ++s)
        f.col(g.flat(k, s)) = model.embed(VectorPolynomial::monomial(g.block_dim, s, k));
  } else if (g.kind == GnsKind::strip) {
    for (Index m = 0; m <= g.m_cap; ++m)
      for (Index n = -g.n_cap; n <= g.n_cap; ++n)
        f.col(g.strip_index(m, n)) = model.embed(PowerTrigPolynomial::monomial(m, n));
  } else {
    throw DomainError("gns_l2_map: space carries no monomial layout");
  }
  GnsL2Map map;
  map.gram_mismatch = max_abs(gram_of_columns(f) - g.gram());
  map.u = f * pseudo_inverse(g.vectors(), tol);
  map.isometry_residual =
      max_abs(Matrix(map.u.adjoint() * map.u - Matrix::Identity(g.rank(), g.rank())));
  map.onto_residual = max_abs(
      Matrix(map.u * map.u.adjoint() - Matrix::Identity(model.total_dim(), model.total_dim())));
  return map;
}

}  // namespace l2density
