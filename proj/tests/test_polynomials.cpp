#include "doctest.h"

#include <cmath>
#include <numbers>

#include "l2density/polynomials.hpp"
#include "l2density/rng.hpp"

using namespace l2density;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex I{0.0, 1.0};
}  // namespace

TEST_CASE("vector polynomial evaluation") {
  // p = (1, x)
  const VectorPolynomial p(2, {{Complex{1, 0}}, {Complex{0, 0}, Complex{1, 0}}});
  RowVector v = eval_vector(p, 2.0);
  CHECK(std::abs(v(0) - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(v(1) - Complex{2, 0}) <= 1e-15);

  // p = (x^2, 0)
  const VectorPolynomial q(2, {{Complex{0, 0}, Complex{0, 0}, Complex{1, 0}}, {}});
  v = eval_vector(q, -1.0);
  CHECK(std::abs(v(0) - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(v(1)) == 0.0);

  const VectorPolynomial z = VectorPolynomial::zero(3);
  v = eval_vector(z, 17.5);
  CHECK(v.size() == 3);
  CHECK(v.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.degree() == -1);
  CHECK(p.degree() == 1);
  CHECK(q.degree() == 2);
}

TEST_CASE("trailing zero coefficients are normalized away") {
  const VectorPolynomial p(1, {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}}});
  CHECK(p.degree() == 0);
  CHECK(p.components()[0].size() == 1);
}

TEST_CASE("power-trigonometric evaluation") {
  const PowerTrigPolynomial one = PowerTrigPolynomial::monomial(0, 0);
  CHECK(std::abs(eval_strip(one, 3.7, -2.1) - Complex{1, 0}) <= 1e-15);

  const PowerTrigPolynomial xe = PowerTrigPolynomial::monomial(1, 1);
  CHECK(std::abs(eval_strip(xe, 2.0, kPi / 2) - Complex{0, 2}) <= 1e-14);

  PowerTrigPolynomial cospair = PowerTrigPolynomial::monomial(0, 1);
  cospair += PowerTrigPolynomial::monomial(0, -1);
  CHECK(std::abs(eval_strip(cospair, 0.0, 0.0) - Complex{2, 0}) <= 1e-15);

  // 0^0 = 1: a term with m = 0 contributes at x = 0
  const PowerTrigPolynomial c = PowerTrigPolynomial::monomial(0, 2, Complex{3, 0});
  CHECK(std::abs(eval_strip(c, 0.0, 0.25) - 3.0 * std::polar(1.0, 0.5)) <= 1e-14);
  // ... while a term with m >= 1 vanishes there
  const PowerTrigPolynomial d = PowerTrigPolynomial::monomial(2, 0);
  CHECK(std::abs(eval_strip(d, 0.0, 1.0)) == 0.0);

  CHECK_THROWS_AS(PowerTrigPolynomial::monomial(-1, 0), DomainError);
}

TEST_CASE("vector monomial family ordering") {
  const std::vector<VectorPolynomial> family = monomial_family_vector(2, 1);
  REQUIRE(family.size() == 4);  // (max_degree+1) * N
  // order e0, e1, x e0, x e1 (flat index kN+s)
  const double t = 3.0;
  CHECK(std::abs(eval_vector(family[0], t)(0) - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(eval_vector(family[1], t)(1) - Complex{1, 0}) <= 1e-15);
  CHECK(std::abs(eval_vector(family[2], t)(0) - Complex{3, 0}) <= 1e-15);
  CHECK(std::abs(eval_vector(family[3], t)(1) - Complex{3, 0}) <= 1e-15);

  const std::vector<VectorPolynomial> scalar = monomial_family_vector(1, 2);
  REQUIRE(scalar.size() == 3);  // 1, x, x^2
  CHECK(scalar[2].degree() == 2);

  CHECK(monomial_family_vector(3, 0).size() == 3);
}

TEST_CASE("strip monomial family ordering") {
  const std::vector<PowerTrigPolynomial> family = monomial_family_strip(0, 1);
  REQUIRE(family.size() == 3);  // e^{-i phi}, 1, e^{i phi}
  CHECK(family[0].terms().begin()->first == PowerTrigPolynomial::Key{0, -1});
  CHECK(family[1].terms().begin()->first == PowerTrigPolynomial::Key{0, 0});
  CHECK(family[2].terms().begin()->first == PowerTrigPolynomial::Key{0, 1});

  const std::vector<PowerTrigPolynomial> xs = monomial_family_strip(1, 0);
  REQUIRE(xs.size() == 2);  // 1, x
  CHECK(xs[1].terms().begin()->first == PowerTrigPolynomial::Key{1, 0});

  CHECK(monomial_family_strip(0, 0).size() == 1);
  CHECK(monomial_family_strip(2, 3).size() == 3 * 7);
}

TEST_CASE("evaluation is linear") {
  SeededRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = rng.uniform_int(1, 3);
    std::vector<std::vector<Complex>> pc(n), qc(n);
    for (Index s = 0; s < n; ++s) {
      const int deg = rng.uniform_int(0, 4);
      for (int kk = 0; kk <= deg; ++kk) {
        pc[s].push_back(rng.complex_normal());
        qc[s].push_back(rng.complex_normal());
      }
    }
    const VectorPolynomial p(n, pc), q(n, qc);
    const Complex alpha = rng.complex_normal();
    const Complex beta = rng.complex_normal();
    const VectorPolynomial combo = alpha * p + beta * q;
    const double t = rng.uniform(-2.0, 2.0);
    const RowVector lhs = eval_vector(combo, t);
    const RowVector rhs = alpha * eval_vector(p, t) + beta * eval_vector(q, t);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("strip evaluation is 2pi-periodic and linear") {
  SeededRng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<PowerTrigPolynomial::Key, Complex> terms;
    const int count = rng.uniform_int(1, 6);
    for (int c = 0; c < count; ++c)
      terms[{rng.uniform_int(0, 3), rng.uniform_int(-3, 3)}] = rng.complex_normal();
    const PowerTrigPolynomial p(terms);
    const double x = rng.uniform(-2.0, 2.0);
    const double phi = rng.uniform(-kPi, kPi);
    CHECK(std::abs(eval_strip(p, x, phi + 2 * kPi) - eval_strip(p, x, phi)) <= 1e-9);

    const PowerTrigPolynomial q = PowerTrigPolynomial::monomial(1, -2, Complex{0.5, 0.5});
    const Complex alpha = rng.complex_normal();
    PowerTrigPolynomial combo = alpha * p;
    combo += q;
    CHECK(std::abs(eval_strip(combo, x, phi) -
                   (alpha * eval_strip(p, x, phi) + eval_strip(q, x, phi))) <= 1e-9);
  }
}

TEST_CASE("power helpers use the 0^0 = 1 convention") {
  CHECK(real_power(0.0, 0) == 1.0);
  CHECK(real_power(0.0, 3) == 0.0);
  CHECK(real_power(2.0, 10) == doctest::Approx(1024.0));
  CHECK(std::abs(complex_power(I, 0) - Complex{1, 0}) == 0.0);
  CHECK(std::abs(complex_power(I, 2) - Complex{-1, 0}) <= 1e-15);
  CHECK(std::abs(complex_power(Complex{0, 0}, 0) - Complex{1, 0}) == 0.0);
}

TEST_CASE("polynomial arithmetic cancels cleanly") {
  PowerTrigPolynomial p = PowerTrigPolynomial::monomial(1, 1);
  p += PowerTrigPolynomial::monomial(1, 1, Complex{-1, 0});
  CHECK(p.terms().empty());  // exact cancellation removes the term

  VectorPolynomial v = VectorPolynomial::monomial(2, 0, 1);
  v += VectorPolynomial::monomial(2, 0, 1, Complex{-1, 0});
  CHECK(v.degree() == -1);
}
