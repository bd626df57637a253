#pragma once

#include <functional>
#include <vector>

#include "cmr/matrix.hpp"
#include "cmr/tensor.hpp"

namespace cmr::test {

/// Entry-wise Kronecker product written from the index formula alone.
inline CMatrix kron_oracle(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c)
      out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
  return out;
}

/// Coefficient of e_ab ⊗ e_cd in a two-factor tensor (1-based).
template <class S>
S coefficient(const Matrix<S>& t, int n, int a, int b, int c, int d) {
  return t(static_cast<std::size_t>((a - 1) * n + (c - 1)), static_cast<std::size_t>((b - 1) * n + (d - 1)));
}

/// CYBE left-hand side from the basis expansion r = Σ r^{ab,cd} e_ab ⊗ e_cd:
/// Σ [x_i, x_j] ⊗ y_i ⊗ y_j + x_i ⊗ [y_i, x_j] ⊗ y_j + x_i ⊗ x_j ⊗ [y_i, y_j].
inline CMatrix cybe_oracle(const CMatrix& r, int n) {
  struct Term {
    Complex v;
    CMatrix x, y;
  };
  std::vector<Term> terms;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d) {
          const Complex v = coefficient(r, n, a, b, c, d);
          if (v != 0.0) terms.push_back({v, basis_e<Complex>(a, b, n), basis_e<Complex>(c, d, n)});
        }
  const std::size_t n3 = static_cast<std::size_t>(n * n * n);
  CMatrix out(n3, n3);
  for (const auto& s : terms)
    for (const auto& t : terms) {
      const Complex v = s.v * t.v;
      out += v * kron_oracle(kron_oracle(commutator(s.x, t.x), s.y), t.y);
      out += v * kron_oracle(kron_oracle(s.x, commutator(s.y, t.x)), t.y);
      out += v * kron_oracle(kron_oracle(s.x, t.x), commutator(s.y, t.y));
    }
  return out;
}

/// Central difference of a matrix-valued function of one real variable.
inline CMatrix derivative(const std::function<CMatrix(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) * Complex(1.0 / (2.0 * h));
}

}  // namespace cmr::test
