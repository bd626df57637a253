#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "cmr/matrix.hpp"

namespace cmr {

namespace detail {

template <class S>
double norm_one(const Matrix<S>& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += ScalarTraits<S>::magnitude(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace detail

/// exp(A) by scaling and squaring with a diagonal (6,6) Padé approximant.
/// Float-like scalars only.
template <class S>
Matrix<S> expm_pade(const Matrix<S>& a) {
  static_assert(!is_exact_v<S>, "expm_pade needs a floating-point scalar");
  using T = ScalarTraits<S>;
  if (!a.square()) throw ArgumentError("expm: matrix is not square");
  const std::size_t n = a.rows();
  // c_k = (2q−k)! q! / ((2q)! k! (q−k)!) for q = 6
  constexpr std::array<long, 7> den_k = {1, 2, 44, 66, 792, 15840, 665280};
  constexpr std::array<long, 7> num_k = {1, 1, 5, 1, 1, 1, 1};
  const double nrm = detail::norm_one(a);
  int squarings = 0;
  if (nrm > 0.5) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / 0.5))));
  const Matrix<S> x = a * (T::from_int(1) / T::from_int(1L << squarings));

  const Matrix<S> id = Matrix<S>::identity(n);
  Matrix<S> num = id;
  Matrix<S> den = id;
  Matrix<S> power = id;
  for (std::size_t k = 1; k < den_k.size(); ++k) {
    power = power * x;
    const Matrix<S> term = power * (T::from_int(num_k[k]) / T::from_int(den_k[k]));
    num += term;
    if (k % 2 == 0) {
      den += term;
    } else {
      den -= term;
    }
  }
  Matrix<S> e = den.inverse() * num;
  for (int s = 0; s < squarings; ++s) e = e * e;
  return e;
}

/// exp(A) = Σ_{j<n} A^j / j! for nilpotent A. Throws ArgumentError if A^n ≠ 0
/// (exactly in exact mode, above 1e-12 relative in float mode).
template <class S>
Matrix<S> expm_nilpotent(const Matrix<S>& a) {
  using T = ScalarTraits<S>;
  const std::size_t n = a.rows();
  Matrix<S> sum = Matrix<S>::identity(n);
  Matrix<S> term = Matrix<S>::identity(n);
  for (std::size_t j = 1; j <= n; ++j) {
    term = term * a;
    if (j == n) break;
    term *= T::from_int(1) / T::from_int(static_cast<long>(j));
    sum += term;
  }
  const bool nilpotent = is_exact_v<S> ? term.is_zero() : frobenius_norm(term) <= 1e-12 * (1.0 + frobenius_norm(a));
  if (!nilpotent) throw ArgumentError("expm_nilpotent: matrix is not nilpotent");
  return sum;
}

/// Float mode: Padé. Exact mode: the finite nilpotent series.
template <class S>
Matrix<S> expm(const Matrix<S>& a) {
  if constexpr (is_exact_v<S>) {
    return expm_nilpotent(a);
  } else {
    return expm_pade(a);
  }
}

}  // namespace cmr
