#include "l2density/l2space.hpp"

#include <cmath>

#include "l2density/matrix_kernel.hpp"
#include "l2density/moments.hpp"

namespace l2density {

L2Model::L2Model(JointAtomicMeasure measure, const Tolerances& tol)
    : measure_(std::move(measure)) {
  factors_.reserve(measure_.atoms().size());
  offsets_.reserve(measure_.atoms().size());
  for (const JointAtom& a : measure_.atoms()) {
    offsets_.push_back(total_dim_);
    factors_.push_back(psd_factor(a.w, tol));
    total_dim_ += factors_.back().cols();
  }
}

Vector L2Model::embed_values(const std::vector<RowVector>& values) const {
  if (values.size() != measure_.atoms().size())
    throw DimensionError("L2Model::embed_values: one value row per atom required");
  Vector v = Vector::Zero(total_dim_);
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j].size() != measure_.dim())
      throw DimensionError("L2Model::embed_values: value row has wrong length");
    v.segment(offsets_[j], factors_[j].cols()) = (values[j] * factors_[j]).transpose();
  }
  return v;
}

Vector L2Model::embed(const VectorPolynomial& f) const {
  if (measure_.order_r() != 1 || measure_.order_l() != 0)
    throw DomainError("L2Model::embed(VectorPolynomial): model must have order (1,0)");
  if (f.dim() != measure_.dim())
    throw DimensionError("L2Model::embed: polynomial dimension mismatch");
  std::vector<RowVector> values;
  values.reserve(measure_.atoms().size());
  for (const JointAtom& a : measure_.atoms()) values.push_back(f.eval(a.u.x(0)));
  return embed_values(values);
}

Vector L2Model::embed(const PowerTrigPolynomial& p) const {
  if (measure_.order_r() != 1 || measure_.order_l() != 1 || measure_.dim() != 1)
    throw DomainError("L2Model::embed(PowerTrigPolynomial): model must be scalar of order (1,1)");
  std::vector<RowVector> values;
  values.reserve(measure_.atoms().size());
  for (const JointAtom& a : measure_.atoms())
    values.push_back(RowVector::Constant(1, p.eval(a.u.x(0), a.u.phi(0))));
  return embed_values(values);
}

Vector L2Model::embed_unit(Index s) const {
  if (s < 0 || s >= measure_.dim()) throw DimensionError("L2Model::embed_unit: index out of range");
  std::vector<RowVector> values(measure_.atoms().size(), RowVector::Zero(measure_.dim()));
  for (auto& v : values) v(s) = Complex{1.0, 0.0};
  return embed_values(values);
}

L2Model build_l2_model(const MatrixAtomicMeasure& m, const Tolerances& tol) {
  return L2Model(to_joint(m), tol);
}

L2Model build_l2_model(const StripAtomicMeasure& s, const Tolerances& tol) {
  return L2Model(to_joint(s), tol);
}

Matrix multiplication_matrix_x(const L2Model& model, Index coord) {
  if (coord < 0 || coord >= model.measure().order_r())
    throw DimensionError("multiplication_matrix_x: coordinate out of range");
  Matrix x = Matrix::Zero(model.total_dim(), model.total_dim());
  for (Index j = 0; j < model.measure().atom_count(); ++j) {
    const Index off = model.block_offset(j);
    const Index r = model.block_rank(j);
    const double t = model.measure().atoms()[static_cast<std::size_t>(j)].u.x(coord);
    x.block(off, off, r, r) = t * Matrix::Identity(r, r);
  }
  return x;
}

Matrix multiplication_matrix_w(const L2Model& model, Index coord) {
  if (coord < 0 || coord >= model.measure().order_l())
    throw DimensionError("multiplication_matrix_w: coordinate out of range");
  Matrix w = Matrix::Zero(model.total_dim(), model.total_dim());
  for (Index j = 0; j < model.measure().atom_count(); ++j) {
    const Index off = model.block_offset(j);
    const Index r = model.block_rank(j);
    const double phi = model.measure().atoms()[static_cast<std::size_t>(j)].u.phi(coord);
    w.block(off, off, r, r) = std::polar(1.0, phi) * Matrix::Identity(r, r);
  }
  return w;
}

Complex inner_product_vector(const VectorPolynomial& f, const VectorPolynomial& g,
                             const MatrixAtomicMeasure& m) {
  if (f.dim() != m.dim() || g.dim() != m.dim())
    throw DimensionError("inner_product_vector: polynomial dimension mismatch");
  Complex acc{0.0, 0.0};
  for (const MatrixAtom& a : m.atoms()) {
    const RowVector fv = f.eval(a.t);
    const RowVector gv = g.eval(a.t);
    acc += (fv * a.w * gv.adjoint())(0);
  }
  return acc;
}

Complex inner_product_strip(const PowerTrigPolynomial& p, const PowerTrigPolynomial& q,
                            const StripAtomicMeasure& sigma) {
  Complex acc{0.0, 0.0};
  for (const StripAtom& a : sigma.atoms())
    acc += p.eval(a.x, a.phi) * std::conj(q.eval(a.x, a.phi)) * a.w;
  return acc;
}

Matrix gram_matrix(const std::vector<VectorPolynomial>& family, const MatrixAtomicMeasure& m) {
  if (family.empty()) throw DomainError("gram_matrix: family must be nonempty");
  const Index size = static_cast<Index>(family.size());
  Matrix g(size, size);
  for (Index p = 0; p < size; ++p)
    for (Index q = 0; q < size; ++q)
      g(p, q) = inner_product_vector(family[static_cast<std::size_t>(p)],
                                     family[static_cast<std::size_t>(q)], m);
  return g;
}

Matrix gram_matrix(const std::vector<PowerTrigPolynomial>& family,
                   const StripAtomicMeasure& sigma) {
  if (family.empty()) throw DomainError("gram_matrix: family must be nonempty");
  const Index size = static_cast<Index>(family.size());
  Matrix g(size, size);
  for (Index p = 0; p < size; ++p)
    for (Index q = 0; q < size; ++q)
      g(p, q) = inner_product_strip(family[static_cast<std::size_t>(p)],
                                    family[static_cast<std::size_t>(q)], sigma);
  return g;
}

DensityReport density_test(const MatrixAtomicMeasure& m, const Tolerances& tol) {
  const Index big = static_cast<Index>(m.atom_count());  // cap growth step K
  Index cap = big - 1;
  Index next = cap + big;
  // Grams at smaller caps are leading principal blocks in the kN+s order, so
  // one evaluation at the largest cap serves every scan below.
  Matrix g = gram_matrix(monomial_family_vector(m.dim(), next), m);
  auto rank_at = [&](Index c) {
    const Index size = (c + 1) * m.dim();
    return numerical_rank(g.topLeftCorner(size, size), tol);
  };
  int rank = rank_at(cap);
  while (true) {
    const int rank_next = rank_at(next);
    if (rank_next == rank) break;
    rank = rank_next;
    cap = next;
    next = cap + big;
    g = gram_matrix(monomial_family_vector(m.dim(), next), m);
  }
  DensityReport report;
  report.space_dim = l2_dimension(m, tol);
  report.span_dim = rank;
  report.saturation_degree = 0;
  for (Index c = 0; c <= next; ++c) {
    if (rank_at(c) == rank) {
      report.saturation_degree = static_cast<int>(c);
      break;
    }
  }
  report.dense = report.span_dim == report.space_dim;
  return report;
}

DensityReport density_test(const StripAtomicMeasure& sigma, const Tolerances& tol) {
  const Index big = sigma.atom_count();
  Index cap = big - 1;
  Index next = cap + big;
  StripMomentTable table = strip_moments(sigma, 2 * next, 2 * next, tol);
  auto rank_at = [&](Index c) { return numerical_rank(devinatz_gram(table, c, c), tol); };
  int rank = rank_at(cap);
  while (true) {
    const int rank_next = rank_at(next);
    if (rank_next == rank) break;
    rank = rank_next;
    cap = next;
    next = cap + big;
    table = strip_moments(sigma, 2 * next, 2 * next, tol);
  }
  DensityReport report;
  report.space_dim = static_cast<int>(sigma.atom_count());
  report.span_dim = rank;
  report.saturation_degree = 0;
  for (Index c = 0; c <= next; ++c) {
    if (rank_at(c) == rank) {
      report.saturation_degree = static_cast<int>(c);
      break;
    }
  }
  report.dense = report.span_dim == report.space_dim;
  return report;
}

}  // namespace l2density
