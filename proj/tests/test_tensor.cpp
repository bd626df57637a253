#include <random>

#include "cmr/constr.hpp"
#include "cmr/random.hpp"
#include "cmr/tensor.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cmr;

namespace {

CMatrix random_matrix(Sampler& s, std::size_t rows, std::size_t cols) {
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(s.uniform(-1, 1), s.uniform(-1, 1));
  return m;
}

}  // namespace

TEST_CASE("basis elements and roots") {
  const auto e = basis_e<Complex>(2, 3, 3);
  CHECK(e(1, 2) == 1.0);
  CHECK(frobenius_norm(e) == 1.0);
  CHECK_THROWS_AS(basis_e<Complex>(0, 1, 3), ArgumentError);
  CHECK_THROWS_AS(basis_e<Complex>(1, 4, 3), ArgumentError);
  CHECK_THROWS_AS(root_E<Complex>(Root{2, 2}, 3), ArgumentError);
  for (int n = 2; n <= 5; ++n) CHECK(roots(n).size() == static_cast<std::size_t>(n * (n - 1)));
  const Root a{1, 3};
  CHECK(a.component(1) == 1);
  CHECK(a.component(3) == -1);
  CHECK(a.component(2) == 0);
  // [H, E_α] = α(H) E_α for every diagonal H
  Sampler s(3);
  CMatrix h(4, 4);
  for (std::size_t i = 0; i < 4; ++i) h(i, i) = s.uniform(-1, 1);
  for (const Root& r : roots(4)) {
    const auto E = root_E<Complex>(r, 4);
    CHECK(residual(commutator(h, E), root_value(r, h) * E) < 1e-15);
  }
}

TEST_CASE("Kronecker product matches the index formula") {
  Sampler s(1);
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto a = random_matrix(s, n, n), b = random_matrix(s, n + 1, n + 2);
    CHECK(residual(kron(a, b), test::kron_oracle(a, b)) == 0.0);
  }
  const auto a = random_matrix(s, 3, 3), b = random_matrix(s, 3, 3), c = random_matrix(s, 3, 3), d = random_matrix(s, 3, 3);
  CHECK(residual(tensor(a, b) * tensor(c, d), tensor(CMatrix(a * c), CMatrix(b * d))) < 1e-14);
  CHECK_THROWS_AS(tensor(a, random_matrix(s, 2, 2)), ArgumentError);
}

TEST_CASE("factor swap, partial traces and slot embeddings on product tensors") {
  Sampler s(2);
  for (int n = 2; n <= 4; ++n) {
    const auto a = random_matrix(s, n, n), b = random_matrix(s, n, n);
    const auto id = unit<Complex>(n);
    CHECK(residual(swap_factors(tensor(a, b)), tensor(b, a)) == 0.0);
    CHECK(residual(partial_trace_first(tensor(a, b)), a.trace() * b) < 1e-14);
    CHECK(residual(partial_trace_second(tensor(a, b)), b.trace() * a) < 1e-14);
    CHECK(residual(embed3(tensor(a, b), Slot::s12), test::kron_oracle(test::kron_oracle(a, b), id)) == 0.0);
    CHECK(residual(embed3(tensor(a, b), Slot::s23), test::kron_oracle(test::kron_oracle(id, a), b)) == 0.0);
    CHECK(residual(embed3(tensor(a, b), Slot::s13), test::kron_oracle(test::kron_oracle(a, id), b)) == 0.0);
    // linearity extends the product-tensor checks to general tensors
    const auto t = random_matrix(s, n * n, n * n);
    CHECK(residual(swap_factors(swap_factors(t)), t) == 0.0);
    CHECK(antisymmetry_residual(CMatrix(t - swap_factors(t))) == 0.0);
  }
  CHECK(parse_slot("13") == Slot::s13);
  CHECK_THROWS_AS(parse_slot("21"), ArgumentError);
  CHECK_THROWS_AS(swap_factors(CMatrix(5, 5)), ArgumentError);
}

TEST_CASE("factor-wise maps agree with map_factors") {
  Sampler s(4);
  for (int n = 2; n <= 4; ++n) {
    const auto t = random_matrix(s, n * n, n * n);
    CHECK(residual(apply_sigma_sigma(t), map_factors(t, [](const CMatrix& m) { return apply_sigma(m); })) == 0.0);
    CHECK(residual(transpose_factors(t), map_factors(t, [](const CMatrix& m) { return m.transpose(); })) == 0.0);
    // †⊗† is antilinear: conjugate the coefficients, then map the real basis
    CMatrix tc = t;
    for (std::size_t i = 0; i < t.rows(); ++i)
      for (std::size_t j = 0; j < t.cols(); ++j) tc(i, j) = std::conj(t(i, j));
    CHECK(residual(adjoint_factors(t), map_factors(tc, [](const CMatrix& m) { return m.adjoint(); })) == 0.0);
    const auto g = s.well_conditioned(n);
    const auto gi = g.inverse();
    const auto conj_map = map_factors(t, [&](const CMatrix& m) { return CMatrix(g * m * gi); });
    CHECK(residual(conjugate(t, g), conj_map) < 1e-10 * (1 + frobenius_norm(t)));
  }
}

TEST_CASE("wedge is antisymmetric") {
  Sampler s(5);
  const auto a = random_matrix(s, 3, 3), b = random_matrix(s, 3, 3);
  CHECK(residual(wedge(a, b), -wedge(b, a)) == 0.0);
  CHECK(antisymmetry_residual(wedge(a, b)) == 0.0);
}

TEST_CASE("matrix inverse") {
  Sampler s(6);
  for (int n = 1; n <= 6; ++n) {
    const auto m = s.well_conditioned(n);
    CHECK(residual(m * m.inverse(), CMatrix::identity(n)) < 1e-12);
  }
  CHECK_THROWS_AS(CMatrix(3, 3).inverse(), SingularMatrixError);
  QMatrix q(2, 2);
  q(0, 0) = GaussRational(Rational(1, 3));
  q(0, 1) = GaussRational(Rational(2), Rational(1));
  q(1, 0) = GaussRational(Rational(-5, 7));
  q(1, 1) = GaussRational(Rational(4));
  CHECK(q * q.inverse() == QMatrix::identity(2));
  CHECK_THROWS_AS(QMatrix(2, 2).inverse(), SingularMatrixError);
  CHECK_THROWS_AS(CMatrix(2, 3) * CMatrix(2, 3), ArgumentError);
}

TEST_CASE("exact arithmetic") {
  const GaussRational z(Rational(1, 2), Rational(-3, 4));
  CHECK(z * z.conj() == GaussRational(z.norm()));
  CHECK(z / z == GaussRational(1));
  CHECK_THROWS_AS(z / GaussRational(0), std::domain_error);
  CHECK(to_fraction_string(Rational(6, -4)) == "-3/2");
  CHECK(to_fraction_string(Rational(2)) == "2/1");
  CHECK(parse_fraction("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction("x"), std::invalid_argument);
  QMatrix m(2, 2);
  m(0, 1) = GaussRational(Rational(3), Rational(4));
  CHECK(frobenius_norm(m) == 5.0);
}
