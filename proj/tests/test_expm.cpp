#include <unsupported/Eigen/MatrixFunctions>

#include "cmr/expm.hpp"
#include "cmr/random.hpp"
#include "doctest.h"

using namespace cmr;

namespace {

CMatrix expm_oracle(const CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  const Eigen::MatrixXcd x = e.exp();
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = x(i, j);
  return out;
}

}  // namespace

TEST_CASE("Pade scaling and squaring against an independent implementation") {
  Sampler s(51);
  for (double scale : {1e-3, 0.5, 3.0, 20.0})
    for (int n = 1; n <= 5; ++n) {
      CMatrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = scale * Complex(s.uniform(-1, 1), s.uniform(-1, 1));
      const auto e = expm(m);
      const auto o = expm_oracle(m);
      CHECK(residual(e, o) <= 1e-12 * frobenius_norm(o));
    }
}

TEST_CASE("exponential identities") {
  CHECK(residual(expm(CMatrix(3, 3)), CMatrix::identity(3)) == 0.0);
  CMatrix d(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = Complex(0, std::acos(-1.0));
  const auto e = expm(d);
  CHECK(std::abs(e(0, 0) - std::exp(1.0)) < 1e-14);
  CHECK(std::abs(e(1, 1) + 1.0) < 1e-14);
  Sampler s(52);
  CMatrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = s.uniform(-2, 2);
  CHECK(residual(expm(m) * expm(CMatrix(-m)), CMatrix::identity(3)) < 1e-12);
}

TEST_CASE("nilpotent series is exact") {
  QMatrix n(3, 3);
  n(0, 1) = GaussRational(Rational(2));
  n(1, 2) = GaussRational(Rational(-1, 3));
  const auto e = expm(n);
  CHECK(e(0, 2) == GaussRational(Rational(-1, 3)));
  CHECK(e(0, 1) == GaussRational(Rational(2)));
  CHECK(e * expm(QMatrix(-n)) == QMatrix::identity(3));
  QMatrix full = QMatrix::identity(2);
  CHECK_THROWS_AS(expm(full), ArgumentError);
  // float nilpotent path equals Padé
  CMatrix fn(3, 3);
  fn(0, 1) = 2.0;
  fn(1, 2) = -1.0 / 3.0;
  CHECK(residual(expm_nilpotent(fn), expm_pade(fn)) < 1e-14);
}
