#pragma once

#include <map>
#include <utility>
#include <vector>

#include "l2density/core.hpp"

namespace l2density {

// N-component polynomial p(x) = (p_0(x), ..., p_{N-1}(x)).
class VectorPolynomial {
 public:
  // components[s][k] is the coefficient of x^k in component s; trailing zeros
  // are normalized away.
  VectorPolynomial(Index dim, std::vector<std::vector<Complex>> components);

  static VectorPolynomial zero(Index dim);
  // c * x^degree * e_s
  static VectorPolynomial monomial(Index dim, Index s, Index degree, Complex c = {1.0, 0.0});

  Index dim() const { return dim_; }
  // -1 for the zero polynomial.
  Index degree() const;
  const std::vector<std::vector<Complex>>& components() const { return components_; }

  RowVector eval(double t) const;

  VectorPolynomial& operator+=(const VectorPolynomial& other);
  VectorPolynomial& operator*=(Complex c);
  friend VectorPolynomial operator+(VectorPolynomial a, const VectorPolynomial& b) {
    a += b;
    return a;
  }
  friend VectorPolynomial operator*(Complex c, VectorPolynomial p) {
    p *= c;
    return p;
  }

 private:
  Index dim_;
  std::vector<std::vector<Complex>> components_;
};

// p(x, phi) = sum alpha_{m,n} x^m e^{i n phi}, finitely many terms.
class PowerTrigPolynomial {
 public:
  using Key = std::pair<Index, Index>;  // (m >= 0, n in Z)

  PowerTrigPolynomial() = default;
  explicit PowerTrigPolynomial(std::map<Key, Complex> terms);

  static PowerTrigPolynomial monomial(Index m, Index n, Complex c = {1.0, 0.0});

  const std::map<Key, Complex>& terms() const { return terms_; }

  Complex eval(double x, double phi) const;

  PowerTrigPolynomial& operator+=(const PowerTrigPolynomial& other);
  PowerTrigPolynomial& operator*=(Complex c);
  friend PowerTrigPolynomial operator+(PowerTrigPolynomial a, const PowerTrigPolynomial& b) {
    a += b;
    return a;
  }
  friend PowerTrigPolynomial operator*(Complex c, PowerTrigPolynomial p) {
    p *= c;
    return p;
  }

 private:
  std::map<Key, Complex> terms_;  // zero coefficients absent
};

RowVector eval_vector(const VectorPolynomial& p, double t);
Complex eval_strip(const PowerTrigPolynomial& p, double x, double phi);

// {x^k e_s : 0 <= k <= max_degree, 0 <= s < n_dim} ordered by flat index kN+s.
std::vector<VectorPolynomial> monomial_family_vector(Index n_dim, Index max_degree);

// {x^m e^{i n phi} : 0 <= m <= m_max, -n_max <= n <= n_max} in lexicographic (m, n) order.
std::vector<PowerTrigPolynomial> monomial_family_strip(Index m_max, Index n_max);

// x^k with the 0^0 = 1 convention; k >= 0.
double real_power(double x, Index k);
Complex complex_power(Complex x, Index k);

}  // namespace l2density
