#include "l2density/polynomials.hpp"

#include <cmath>

namespace l2density {

namespace {

void strip_trailing_zeros(std::vector<Complex>& coeffs) {
  while (!coeffs.empty() && coeffs.back() == Complex{0.0, 0.0}) coeffs.pop_back();
}

}  // namespace

double real_power(double x, Index k) {
  double p = 1.0;
  for (Index i = 0; i < k; ++i) p *= x;
  return p;
}

Complex complex_power(Complex x, Index k) {
  Complex p{1.0, 0.0};
  for (Index i = 0; i < k; ++i) p *= x;
  return p;
}

VectorPolynomial::VectorPolynomial(Index dim, std::vector<std::vector<Complex>> components)
    : dim_(dim), components_(std::move(components)) {
  if (dim_ < 1) throw DimensionError("VectorPolynomial: dimension must be >= 1");
  if (static_cast<Index>(components_.size()) != dim_)
    throw DimensionError("VectorPolynomial: component count must equal dimension");
  for (auto& c : components_) strip_trailing_zeros(c);
}

VectorPolynomial VectorPolynomial::zero(Index dim) {
  return {dim, std::vector<std::vector<Complex>>(static_cast<std::size_t>(dim))};
}

VectorPolynomial VectorPolynomial::monomial(Index dim, Index s, Index degree, Complex c) {
  if (s < 0 || s >= dim) throw DimensionError("VectorPolynomial::monomial: component out of range");
  if (degree < 0) throw DomainError("VectorPolynomial::monomial: degree must be >= 0");
  std::vector<std::vector<Complex>> comps(static_cast<std::size_t>(dim));
  comps[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(degree) + 1, Complex{0.0, 0.0});
  comps[static_cast<std::size_t>(s)].back() = c;
  return {dim, std::move(comps)};
}

Index VectorPolynomial::degree() const {
  Index d = -1;
  for (const auto& c : components_)
    d = std::max(d, static_cast<Index>(c.size()) - 1);
  return d;
}

RowVector VectorPolynomial::eval(double t) const {
  RowVector v = RowVector::Zero(dim_);
  for (Index s = 0; s < dim_; ++s) {
    const auto& c = components_[static_cast<std::size_t>(s)];
    Complex acc{0.0, 0.0};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
    v(s) = acc;
  }
  return v;
}

VectorPolynomial& VectorPolynomial::operator+=(const VectorPolynomial& other) {
  if (dim_ != other.dim_) throw DimensionError("VectorPolynomial: dimension mismatch in +");
  for (Index s = 0; s < dim_; ++s) {
    auto& a = components_[static_cast<std::size_t>(s)];
    const auto& b = other.components_[static_cast<std::size_t>(s)];
    if (a.size() < b.size()) a.resize(b.size(), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
    strip_trailing_zeros(a);
  }
  return *this;
}

VectorPolynomial& VectorPolynomial::operator*=(Complex c) {
  for (auto& comp : components_) {
    for (auto& coeff : comp) coeff *= c;
    strip_trailing_zeros(comp);
  }
  return *this;
}

PowerTrigPolynomial::PowerTrigPolynomial(std::map<Key, Complex> terms) : terms_(std::move(terms)) {
  for (const auto& [key, coeff] : terms_) {
    if (key.first < 0) throw DomainError("PowerTrigPolynomial: power index m must be >= 0");
    (void)coeff;
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
}

PowerTrigPolynomial PowerTrigPolynomial::monomial(Index m, Index n, Complex c) {
  if (m < 0) throw DomainError("PowerTrigPolynomial::monomial: m must be >= 0");
  std::map<Key, Complex> terms;
  terms[{m, n}] = c;
  return PowerTrigPolynomial{std::move(terms)};
}

Complex PowerTrigPolynomial::eval(double x, double phi) const {
  Complex acc{0.0, 0.0};
  for (const auto& [key, coeff] : terms_) {
    const auto [m, n] = key;
    acc += coeff * real_power(x, m) * std::polar(1.0, static_cast<double>(n) * phi);
  }
  return acc;
}

PowerTrigPolynomial& PowerTrigPolynomial::operator+=(const PowerTrigPolynomial& other) {
  for (const auto& [key, coeff] : other.terms_) terms_[key] += coeff;
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
  return *this;
}

PowerTrigPolynomial& PowerTrigPolynomial::operator*=(Complex c) {
  for (auto& [key, coeff] : terms_) coeff *= c;
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
  return *this;
}

RowVector eval_vector(const VectorPolynomial& p, double t) { return p.eval(t); }

Complex eval_strip(const PowerTrigPolynomial& p, double x, double phi) { return p.eval(x, phi); }

std::vector<VectorPolynomial> monomial_family_vector(Index n_dim, Index max_degree) {
  if (n_dim < 1) throw DimensionError("monomial_family_vector: dimension must be >= 1");
  if (max_degree < 0) throw DomainError("monomial_family_vector: max_degree must be >= 0");
  std::vector<VectorPolynomial> family;
  family.reserve(static_cast<std::size_t>((max_degree + 1) * n_dim));
  for (Index k = 0; k <= max_degree; ++k)
    for (Index s = 0; s < n_dim; ++s) family.push_back(VectorPolynomial::monomial(n_dim, s, k));
  return family;
}

std::vector<PowerTrigPolynomial> monomial_family_strip(Index m_max, Index n_max) {
  if (m_max < 0 || n_max < 0)
    throw DomainError("monomial_family_strip: window bounds must be >= 0");
  std::vector<PowerTrigPolynomial> family;
  family.reserve(static_cast<std::size_t>((m_max + 1) * (2 * n_max + 1)));
  for (Index m = 0; m <= m_max; ++m)
    for (Index n = -n_max; n <= n_max; ++n) family.push_back(PowerTrigPolynomial::monomial(m, n));
  return family;
}

}  // namespace l2density
