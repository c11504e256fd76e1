#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "zerograph/errors.hpp"
#include "zerograph/superact.hpp"

using namespace zerograph;
using testutil::max_abs;

TEST_CASE("tensor") {
  CHECK(max_abs(tensor(identity(2), identity(2)) - identity(4)) == 0.0);

  const CMat uu = tensor(unitary_u(), unitary_u());
  CMat expected = CMat::Zero(4, 4);
  expected.diagonal() << Complex(0, 1), 1.0, 1.0, Complex(0, -1);
  CHECK(max_abs(uu - expected) < 1e-15);

  const CMat e = basis_vector(4, 0);
  const CMat ee = tensor(e, e);
  CHECK(ee.rows() == 16);
  CHECK(ee.cols() == 1);
  CHECK(ee(0, 0) == Complex(1.0));
  CHECK(ee.norm() == doctest::Approx(1.0));

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const CMat a = testutil::random_matrix(rng, 2, 3);
    const CMat b = testutil::random_matrix(rng, 3, 2);
    const CMat c = testutil::random_matrix(rng, 2, 2);
    CHECK(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))) < 1e-12);
    // mixed product
    const CMat d = testutil::random_matrix(rng, 3, 2);
    const CMat f = testutil::random_matrix(rng, 2, 3);
    CHECK(max_abs(tensor(a, b) * tensor(d, f) - tensor(a * d, b * f)) < 1e-11);
  }
}

TEST_CASE("partial trace") {
  CHECK(max_abs(partial_trace(identity(4), 2, 2, Subsystem::A) - 2.0 * identity(2)) == 0.0);
  CHECK(max_abs(partial_trace(identity(6), 2, 3, Subsystem::B) - 2.0 * identity(3)) == 0.0);

  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const CMat rho = testutil::random_state(rng, 3);
    const CMat sigma = testutil::random_state(rng, 4);
    const CMat prod = tensor(rho, sigma);
    CHECK(max_abs(partial_trace(prod, 3, 4, Subsystem::A) - rho) < 1e-14);
    CHECK(max_abs(partial_trace(prod, 3, 4, Subsystem::B) - sigma) < 1e-14);
  }

  // phi_0 of the 2-block code at t = 0: (|11> + |22>)/sqrt2 in C^4 (x) C^4
  const CVec phi = code_vectors(2, 0.0).vector(0);
  const CMat reduced = partial_trace(phi * phi.adjoint(), 4, 4, Subsystem::A);
  CMat expected = CMat::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 0.5;
  CHECK(max_abs(reduced - expected) < 1e-15);

  CHECK_THROWS_AS(partial_trace(identity(5), 2, 2, Subsystem::A), DimensionError);
}

TEST_CASE("vectorize is row-major and invertible") {
  CMat m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const CVec v = vectorize(m);
  CHECK(v(1) == Complex(2.0));
  CHECK(v(3) == Complex(4.0));
  CHECK(max_abs(unvectorize(v, 2, 3) - m) == 0.0);
  std::mt19937_64 rng(3);
  const CMat a = testutil::random_matrix(rng, 3, 3), b = testutil::random_matrix(rng, 3, 3);
  CHECK(std::abs(hs_inner(a, b) - vectorize(a).dot(vectorize(b))) < 1e-12);
  CHECK(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()) < 1e-12);
}

TEST_CASE("eig_hermitian") {
  const Spectrum id = eig_hermitian(identity(3));
  CHECK(id.rank == 3);
  for (int i = 0; i < 3; ++i) CHECK(id.eigenvalues(i) == doctest::Approx(1.0));

  const std::vector<CMat> povm = paper_povm();
  CHECK(eig_hermitian(povm[0]).rank == 3);
  CHECK(eig_hermitian(povm[2]).rank == 2);

  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const CMat g = testutil::random_matrix(rng, 5, 5);
    const CMat h = g + g.adjoint();
    const Spectrum s = eig_hermitian(h);
    for (int i = 0; i + 1 < 5; ++i) CHECK(s.eigenvalues(i) >= s.eigenvalues(i + 1));
    CHECK(max_abs(s.eigenvectors.adjoint() * s.eigenvectors - identity(5)) < 1e-10);
    const CMat back = s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
    CHECK(max_abs(back - h) < 1e-10);
  }
  CHECK_THROWS_AS(eig_hermitian(matrix_unit(2, 0, 1)), ValidationError);
}

TEST_CASE("eigenvector phase convention") {
  std::mt19937_64 rng(6);
  const CMat g = testutil::random_matrix(rng, 4, 4);
  const Spectrum s = eig_hermitian(g + g.adjoint());
  for (int j = 0; j < 4; ++j) {
    const CVec v = s.eigenvectors.col(j);
    Eigen::Index k = 0;
    while (v.cwiseAbs()(k) < v.cwiseAbs().maxCoeff() - 1e-12) ++k;
    CHECK(v(k).real() > 0.0);
    CHECK(std::abs(v(k).imag()) < 1e-14);
  }
}

TEST_CASE("span and membership") {
  const std::vector<CMat> id{identity(4)};
  CHECK(span(id, 4).dim() == 1);
  CHECK(span(graph_generators({2, GraphVariant::L0}), 4).dim() == 5);
  CHECK(span(graph_generators({3, GraphVariant::Ln}), 6).dim() == 10);

  const OperatorSpace l0 = make_graph({2, GraphVariant::L0});
  CHECK(contains(l0, identity(4)).member);
  const Membership e13 = contains(l0, matrix_unit(4, 0, 2));
  CHECK_FALSE(e13.member);
  CHECK(e13.residual > 0.1);

  const OperatorSpace ids = span(id, 4);
  const Membership twice = contains(ids, 2.0 * identity(4));
  CHECK(twice.member);
  CHECK(twice.residual < 1e-15);

  // orthonormal basis, idempotent re-span
  const std::vector<CMat>& b = l0.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      CHECK(std::abs(hs_inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
  const SpaceComparison again = compare_spaces(span(l0.basis(), 4), l0);
  CHECK(again.equal);
  CHECK(again.max_residual < 1e-12);

  // order independence
  std::vector<CMat> reversed = graph_generators({3, GraphVariant::Ln});
  std::reverse(reversed.begin(), reversed.end());
  CHECK(compare_spaces(span(reversed, 6), make_graph({3, GraphVariant::Ln})).equal);

  const std::vector<CMat> zero{CMat::Zero(3, 3)};
  CHECK_THROWS_AS(span(zero, 3), ValidationError);
  CHECK_THROWS(span(std::vector<CMat>{}, 3));
}

TEST_CASE("tensor of spaces") {
  const OperatorSpace l0 = make_graph({2, GraphVariant::L0});
  const OperatorSpace sq = tensor_spaces(l0, l0);
  CHECK(sq.dim() == 25);
  CHECK(sq.ambient_dim() == 16);
  CHECK(compare_spaces(sq, span(sq.basis(), 16)).equal);
  const ProductSpace prod{l0, l0};
  CHECK(prod.dim() == 25);
  CHECK(compare_spaces(prod.materialize(), sq).equal);
}

TEST_CASE("graph conditions") {
  CHECK(graph_conditions(make_graph({2, GraphVariant::L0})).ok());
  for (int n = 2; n <= 6; ++n) CHECK(graph_conditions(make_graph({n, GraphVariant::Ln})).ok());
  const std::vector<CMat> upper{identity(2), matrix_unit(2, 0, 1)};
  const GraphConditions c = graph_conditions(span(upper, 2));
  CHECK(c.contains_identity);
  CHECK_FALSE(c.adjoint_closed);
  const std::vector<CMat> herm{matrix_unit(2, 0, 0)};
  CHECK_FALSE(graph_conditions(span(herm, 2)).contains_identity);
}

TEST_CASE("eta identity and the off-diagonal bound on U") {
  const Complex e = eta();
  CHECK(std::abs(e * e + std::conj(e) * std::conj(e)) < 1e-15);
  const CMat u = unitary_u();
  CHECK(max_abs(u.adjoint() * u - identity(2)) < 1e-15);

  std::mt19937_64 rng(2024);
  const double c = std::cos(std::numbers::pi / 4.0);
  for (int rep = 0; rep < 200; ++rep) {
    const CVec y = testutil::random_matrix(rng, 2, 1);
    const double lhs = std::abs(y.dot(u * y));
    CHECK(lhs >= y.squaredNorm() * c - 1e-10);
    CHECK(lhs > 0.0);
  }
}
