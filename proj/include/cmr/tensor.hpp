#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cmr/errors.hpp"
#include "cmr/matrix.hpp"

// gl_n basis conventions and tensor-product operations.
//
// Index convention: e_ab ⊗ e_cd sits at row (a-1)n + (c-1), column (b-1)n + (d-1),
// i.e. the ordinary Kronecker product. Mathematical indices (basis_e, Root,
// quadruples) are 1-based; raw Matrix access is 0-based.

namespace cmr {

/// α = λ_k − λ_l, k ≠ l, both 1-based.
struct Root {
  int k = 1;
  int l = 2;

  /// α_i = δ_ik − δ_il
  int component(int i) const { return (i == k ? 1 : 0) - (i == l ? 1 : 0); }
  Root negated() const { return {l, k}; }
  friend bool operator==(const Root&, const Root&) = default;
};

/// All n(n−1) roots of gl_n, ordered by (k, l).
inline std::vector<Root> roots(int n) {
  std::vector<Root> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1)));
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l)
      if (k != l) out.push_back({k, l});
  return out;
}

/// Elementary matrix e_kl.
template <class S>
Matrix<S> basis_e(int k, int l, int n) {
  if (n < 1 || k < 1 || l < 1 || k > n || l > n)
    throw ArgumentError("basis_e: index out of range");
  Matrix<S> m(n, n);
  m(k - 1, l - 1) = ScalarTraits<S>::from_int(1);
  return m;
}

template <class S>
Matrix<S> cartan_H(int k, int n) {
  return basis_e<S>(k, k, n);
}

template <class S>
Matrix<S> root_E(const Root& a, int n) {
  if (a.k == a.l) throw ArgumentError("root_E: k == l is not a root");
  return basis_e<S>(a.k, a.l, n);
}

/// H_α = e_kk − e_ll
template <class S>
Matrix<S> root_H(const Root& a, int n) {
  return basis_e<S>(a.k, a.k, n) - basis_e<S>(a.l, a.l, n);
}

/// K_α = e_kk + e_ll
template <class S>
Matrix<S> root_K(const Root& a, int n) {
  return basis_e<S>(a.k, a.k, n) + basis_e<S>(a.l, a.l, n);
}

template <class S>
Matrix<S> unit(int n) {
  return Matrix<S>::identity(static_cast<std::size_t>(n));
}

/// Evaluates the Cartan element h on the root: α(h) = h_kk − h_ll.
template <class S>
S root_value(const Root& a, const Matrix<S>& h) {
  return h(a.k - 1, a.k - 1) - h(a.l - 1, a.l - 1);
}

/// gl_n dimension n of a tensor acting on (gl_n)^{⊗factors}.
template <class S>
int tensor_dim(const Matrix<S>& t, int factors) {
  if (!t.square()) throw ArgumentError("tensor is not square");
  const std::size_t size = t.rows();
  for (int n = 1;; ++n) {
    std::size_t p = 1;
    for (int f = 0; f < factors; ++f) p *= static_cast<std::size_t>(n);
    if (p == size) return n;
    if (p > size) throw ArgumentError("matrix size is not a tensor power");
  }
}

template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const S& aij = a(i, j);
      if (ScalarTraits<S>::is_zero(aij)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!ScalarTraits<S>::is_zero(b(k, l))) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// gl_n ⊗ gl_n product of two gl_n elements of equal dimension.
template <class S>
Matrix<S> tensor(const Matrix<S>& a, const Matrix<S>& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw ArgumentError("tensor: factors must be square of equal dimension");
  return kron(a, b);
}

/// A ∧ B = A⊗B − B⊗A
template <class S>
Matrix<S> wedge(const Matrix<S>& a, const Matrix<S>& b) {
  return tensor(a, b) - tensor(b, a);
}

/// r₁₂ ↦ r₂₁
template <class S>
Matrix<S> swap_factors(const Matrix<S>& t) {
  const std::size_t n = static_cast<std::size_t>(tensor_dim(t, 2));
  Matrix<S> out(t.rows(), t.cols());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t d = 0; d < n; ++d) out(a * n + c, b * n + d) = t(c * n + a, d * n + b);
  return out;
}

enum class Slot { s12, s13, s23 };

inline Slot parse_slot(const std::string& s) {
  if (s == "12") return Slot::s12;
  if (s == "13") return Slot::s13;
  if (s == "23") return Slot::s23;
  throw ArgumentError("embed3: invalid slot '" + s + "'");
}

/// Places a two-factor tensor into the named pair of three factors.
template <class S>
Matrix<S> embed3(const Matrix<S>& t, Slot slot) {
  const std::size_t n = static_cast<std::size_t>(tensor_dim(t, 2));
  const auto id = Matrix<S>::identity(n);
  switch (slot) {
    case Slot::s12:
      return kron(t, id);
    case Slot::s23:
      return kron(id, t);
    case Slot::s13: {
      Matrix<S> out(n * n * n, n * n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t b = 0; b < n; ++b)
            for (std::size_t d = 0; d < n; ++d) {
              const S& v = t(a * n + c, b * n + d);
              if (ScalarTraits<S>::is_zero(v)) continue;
              for (std::size_t x = 0; x < n; ++x) out((a * n + x) * n + c, (b * n + x) * n + d) = v;
            }
      return out;
    }
  }
  throw ArgumentError("embed3: invalid slot");
}

/// (tr ⊗ id) t
template <class S>
Matrix<S> partial_trace_first(const Matrix<S>& t) {
  const std::size_t n = static_cast<std::size_t>(tensor_dim(t, 2));
  Matrix<S> out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) out(c, d) += t(a * n + c, a * n + d);
  return out;
}

/// (id ⊗ tr) t
template <class S>
Matrix<S> partial_trace_second(const Matrix<S>& t) {
  const std::size_t n = static_cast<std::size_t>(tensor_dim(t, 2));
  Matrix<S> out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) out(a, b) += t(a * n + c, b * n + c);
  return out;
}

/// (g⊗g) t (g⊗g)⁻¹, using g⁻¹ ⊗ g⁻¹ for the inverse.
template <class S>
Matrix<S> conjugate(const Matrix<S>& t, const Matrix<S>& g, const Matrix<S>& g_inv) {
  return kron(g, g) * t * kron(g_inv, g_inv);
}

template <class S>
Matrix<S> conjugate(const Matrix<S>& t, const Matrix<S>& g) {
  return conjugate(t, g, g.inverse());
}

/// (f⊗f) t for a linear map f on gl_n.
template <class S, class F>
Matrix<S> map_factors(const Matrix<S>& t, F&& f) {
  const int n = tensor_dim(t, 2);
  std::vector<Matrix<S>> image;
  image.reserve(static_cast<std::size_t>(n * n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) image.push_back(f(basis_e<S>(a, b, n)));
  const auto nn = static_cast<std::size_t>(n);
  Matrix<S> out(t.rows(), t.cols());
  for (std::size_t a = 0; a < nn; ++a)
    for (std::size_t b = 0; b < nn; ++b)
      for (std::size_t c = 0; c < nn; ++c)
        for (std::size_t d = 0; d < nn; ++d) {
          const S& v = t(a * nn + c, b * nn + d);
          if (ScalarTraits<S>::is_zero(v)) continue;
          out += v * kron(image[a * nn + b], image[c * nn + d]);
        }
  return out;
}

/// σ(e_ij) = e_{n+1−i, n+1−j}
template <class S>
Matrix<S> apply_sigma(const Matrix<S>& m) {
  const std::size_t n = m.rows();
  Matrix<S> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(n - 1 - i, n - 1 - j) = m(i, j);
  return out;
}

/// (σ⊗σ) t. Because σ reverses indices, this is reversal of the n²-index.
template <class S>
Matrix<S> apply_sigma_sigma(const Matrix<S>& t) {
  tensor_dim(t, 2);
  return apply_sigma(t);
}

/// (T⊗T) t with T = transposition; equal to the transpose of the Kronecker image.
template <class S>
Matrix<S> transpose_factors(const Matrix<S>& t) {
  tensor_dim(t, 2);
  return t.transpose();
}

/// (†⊗†) t; equal to the adjoint of the Kronecker image.
template <class S>
Matrix<S> adjoint_factors(const Matrix<S>& t) {
  tensor_dim(t, 2);
  return t.adjoint();
}

}  // namespace cmr
