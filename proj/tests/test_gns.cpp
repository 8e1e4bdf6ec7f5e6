#include "doctest.h"

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "l2density/gns.hpp"
#include "l2density/l2space.hpp"
#include "l2density/matrix_kernel.hpp"
#include "l2density/moments.hpp"
#include "l2density/rng.hpp"

using namespace l2density;

namespace {
constexpr double kPi = std::numbers::pi;
const Complex I{0.0, 1.0};

// Smallest degree window that makes the monomial family saturate the model.
Index saturating_window(const MatrixAtomicMeasure& m) {
  return std::max<Index>(1, density_test(m).saturation_degree);
}
}  // namespace

TEST_CASE("orthonormal and degenerate Gram embeddings") {
  const GnsSpace ortho(Matrix::Identity(3, 3));
  CHECK(ortho.size() == 3);
  CHECK(ortho.rank() == 3);
  CHECK(max_abs(Matrix(gram_of_columns(ortho.vectors()) - Matrix::Identity(3, 3))) <= 1e-14);

  // All vectors coincide: rank-one Gram of ones.
  const GnsSpace ones(Matrix::Ones(3, 3));
  CHECK(ones.size() == 3);
  CHECK(ones.rank() == 1);
  CHECK(max_abs(Matrix(ones.vec(0) - ones.vec(2))) <= 1e-12);

  Matrix indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS_AS(GnsSpace{indef}, PositivityError);
}

TEST_CASE("moment-matrix embeddings reproduce the Gram") {
  const MatrixAtomicMeasure single(1, {{1.0, Matrix::Ones(1, 1)}});
  GnsSpace g = build_gns_hamburger(matrix_moments(single, 4), 2);
  CHECK(g.size() == 3);
  CHECK(g.rank() == 1);
  CHECK(g.kind == GnsKind::hamburger);
  CHECK(g.block_dim == 1);
  CHECK(g.degree_window == 2);
  CHECK(g.flat(2, 0) == 2);
  CHECK(max_abs(Matrix(g.gram() - Matrix::Ones(3, 3))) <= 1e-14);

  const MatrixAtomicMeasure two(
      2, {{1.0, (Matrix(2, 2) << 1, 0, 0, 0).finished()},
          {-1.0, (Matrix(2, 2) << 0, 0, 0, 1).finished()}});
  g = build_gns_hamburger(matrix_moments(two, 2), 1);
  CHECK(g.size() == 4);
  CHECK(g.rank() == 2);
  CHECK(g.gram_residual() <= 1e-12);

  SeededRng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixAtomicMeasure m = testgen::random_matrix_measure(rng, 4, 3);
    const Index window = saturating_window(m);
    const GnsSpace space = build_gns_hamburger(matrix_moments(m, 2 * window), window);
    CHECK(space.gram_residual() <= 1e-9);
    const Matrix recon = gram_of_columns(space.vectors());
    CHECK(max_abs(Matrix(recon - space.gram())) <=
          1e-9 * std::max(1.0, max_abs(space.gram())));
  }
}

TEST_CASE("shift operator on the moment embedding") {
  const MatrixAtomicMeasure scalar(1, {{2.0, Matrix::Ones(1, 1)}});
  PartialOperator a = shift_operator_a(build_gns_hamburger(matrix_moments(scalar, 4), 2), 1);
  REQUIRE(a.matrix.rows() == 1);
  CHECK(std::abs(a.matrix(0, 0) - Complex{2, 0}) <= 1e-12);
  CHECK(a.consistency_residual <= 1e-12);
  CHECK(a.symmetry_residual >= 0.0);
  CHECK(a.symmetry_residual <= 1e-12);

  const MatrixAtomicMeasure pm(1, {{1.0, Matrix::Ones(1, 1)}, {-1.0, Matrix::Ones(1, 1)}});
  a = shift_operator_a(build_gns_hamburger(matrix_moments(pm, 6), 3), 1);
  REQUIRE(a.matrix.rows() == 2);
  const HermitianEigensystem es = hermitian_eigensystem(a.matrix);
  CHECK(es.values(0) == doctest::Approx(-1.0));
  CHECK(es.values(1) == doctest::Approx(1.0));

  SeededRng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixAtomicMeasure m = testgen::random_matrix_measure(rng, 4, 3);
    const Index window = saturating_window(m) + 1;
    const GnsSpace g = build_gns_hamburger(matrix_moments(m, 2 * window), window);
    const PartialOperator op = shift_operator_a(g, m.dim());
    CHECK(op.consistency_residual <= 1e-9);
    CHECK(op.symmetry_residual >= 0.0);
    CHECK(op.symmetry_residual <= 1e-10);
    CHECK_FALSE(op.antilinear);
  }
}

TEST_CASE("strip embeddings and their operator triple") {
  StripGns g = build_gns_strip(strip_moments(StripAtomicMeasure({{0.0, 0.0, 1.0}}), 2, 2), 1, 1);
  CHECK(g.space.rank() == 1);
  CHECK(g.space.kind == GnsKind::strip);
  CHECK(g.space.m_cap == 1);
  CHECK(g.space.n_cap == 1);
  CHECK(g.space.strip_index(0, -1) == 0);
  CHECK(g.space.strip_index(1, 0) == 4);
  CHECK(std::abs(g.b0.matrix(0, 0) - Complex{1, 0}) <= 1e-12);
  CHECK(std::abs(g.a0.matrix(0, 0)) <= 1e-12);

  g = build_gns_strip(strip_moments(StripAtomicMeasure({{1.0, kPi / 2, 1.0}}), 2, 2), 1, 1);
  CHECK(g.space.rank() == 1);
  CHECK(std::abs(g.b0.matrix(0, 0) - I) <= 1e-12);
  CHECK(std::abs(g.a0.matrix(0, 0) - Complex{1, 0}) <= 1e-12);
  CHECK(g.j0.antilinear);

  CHECK_THROWS_AS(
      build_gns_strip(strip_moments(StripAtomicMeasure({{0.0, 0.0, 1.0}}), 2, 2), 0, 1),
      WindowError);

  SeededRng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const StripAtomicMeasure sigma = testgen::random_strip_measure(rng);
    const Index cap = std::max<Index>(1, density_test(sigma).saturation_degree) + 1;
    const StripGns s = build_gns_strip(strip_moments(sigma, 2 * cap, 2 * cap), cap, cap);
    CHECK(s.a0.consistency_residual <= 1e-9);
    CHECK(s.a0.symmetry_residual >= 0.0);
    CHECK(s.a0.symmetry_residual <= 1e-9);
    CHECK(s.b0.isometry_residual >= 0.0);
    CHECK(s.b0.isometry_residual <= 1e-9);
    CHECK(s.j0.conjugation_residual >= 0.0);
    CHECK(s.j0.conjugation_residual <= 1e-9);
    CHECK(s.commutation_residual <= 1e-9);
  }
}

TEST_CASE("GNS to model map is unitary at saturating windows") {
  SeededRng rng(24);
  for (int trial = 0; trial < 15; ++trial) {
    const MatrixAtomicMeasure m = testgen::random_matrix_measure(rng, 4, 3);
    const Index window = saturating_window(m);
    const GnsSpace g = build_gns_hamburger(matrix_moments(m, 2 * window), window);
    const L2Model model = build_l2_model(m);
    const GnsL2Map map = gns_l2_map(g, model);
    CHECK(map.gram_mismatch <= 1e-9);
    CHECK(map.isometry_residual <= 1e-9);
    CHECK(map.onto_residual <= 1e-8);
    REQUIRE(map.u.rows() == model.total_dim());
    REQUIRE(map.u.cols() == g.rank());
  }
  for (int trial = 0; trial < 15; ++trial) {
    const StripAtomicMeasure sigma = testgen::random_strip_measure(rng);
    const Index cap = std::max<Index>(1, density_test(sigma).saturation_degree);
    const StripGns s = build_gns_strip(strip_moments(sigma, 2 * cap, 2 * cap), cap, cap);
    const L2Model model = build_l2_model(sigma);
    const GnsL2Map map = gns_l2_map(s.space, model);
    CHECK(map.gram_mismatch <= 1e-9);
    CHECK(map.isometry_residual <= 1e-9);
    CHECK(map.onto_residual <= 1e-8);
  }
}

TEST_CASE("transported shift matches multiplication by the coordinate") {
  SeededRng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixAtomicMeasure m = testgen::random_matrix_measure(rng, 4, 3);
    const Index window = saturating_window(m) + 1;
    const GnsSpace g = build_gns_hamburger(matrix_moments(m, 2 * window), window);
    const L2Model model = build_l2_model(m);
    const GnsL2Map map = gns_l2_map(g, model);
    const PartialOperator a = shift_operator_a(g, m.dim());
    const Matrix x = multiplication_matrix_x(model);
    // The unitary transport of the shift is multiplication by x on the model.
    const Matrix lhs = map.u * a.matrix;
    const Matrix rhs = x * map.u;
    CHECK(max_abs(Matrix(lhs - rhs)) <= 1e-8 * std::max(1.0, max_abs(x)));
  }
}

TEST_CASE("window too small for the shift throws") {
  const MatrixAtomicMeasure scalar(1, {{2.0, Matrix::Ones(1, 1)}});
  const GnsSpace g = build_gns_hamburger(matrix_moments(scalar, 0), 0);
  CHECK_THROWS_AS(shift_operator_a(g, 1), WindowError);
}
