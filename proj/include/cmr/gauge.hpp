#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "cmr/constr.hpp"
#include "cmr/dynr.hpp"
#include "cmr/expm.hpp"
#include "cmr/lax.hpp"
#include "cmr/matrix.hpp"
#include "cmr/tensor.hpp"

namespace cmr {

/// Minimum separation of single-particle F values accepted by build_phi (float mode).
inline constexpr double kDegeneracyTolerance = 1e-9;

namespace detail {

template <class S>
std::vector<S> single_particle_F(const ModelCase& c, const std::vector<real_t<S>>& q) {
  std::vector<S> F;
  for (const auto& x : q) F.push_back(ScalarTraits<S>::from_real(eval_F(c, real_t<S>(x))));
  return F;
}

template <class R>
void require_family_with_gauge(Family f) {
  if (f == Family::avan_talon) throw ArgumentError("gauge potentials exist only for families I and II");
}

}  // namespace detail

/// Gauge potentials A_1 … A_n at q (θ = 0). Case I: Cartan part
/// A_k^l = F_{λl−λk} + Ω Σ_{m≠l} F_{λl−λm}, root part w_α (δ_km + Ω) for
/// α = λm − λl. Case II is the †-dual: A_k ↦ −A_k†.
template <class S>
std::vector<Matrix<S>> build_A(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec) {
  using T = ScalarTraits<S>;
  detail::require_family_with_gauge<real_t<S>>(spec.family);
  PhasePoint<real_t<S>> pt{q, std::vector<real_t<S>>(q.size(), real_t<S>(0))};
  require_admissible_point(c, pt);
  const std::size_t n = q.size();
  const S omega = T::from_real(spec.omega);
  Matrix<S> Fm(n, n), Wm(n, n);  // F_{λl−λm}, w_{λl−λm}
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      if (l != m) {
        Fm(l, m) = T::from_real(eval_F(c, real_t<S>(q[l] - q[m])));
        Wm(l, m) = T::from_real(eval_w(c, real_t<S>(q[l] - q[m])));
      }
  std::vector<Matrix<S>> A;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<S> a(n, n);
    for (std::size_t l = 0; l < n; ++l) {
      S cart = Fm(l, k);
      for (std::size_t m = 0; m < n; ++m)
        if (m != l) cart += omega * Fm(l, m);
      a(l, l) = cart;
      for (std::size_t m = 0; m < n; ++m)
        if (m != l) a(l, m) = Wm(l, m) * ((l == k ? T::from_int(1) : T::from_int(0)) + omega);
    }
    A.push_back(spec.family == Family::caseI ? a : Matrix<S>(-a.adjoint()));
  }
  return A;
}

/// ∂A_k/∂q_j for all k, from F′ = −w² and w′ = −F·w.
template <class S>
std::vector<Matrix<S>> build_dA(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                                std::size_t j) {
  using T = ScalarTraits<S>;
  detail::require_family_with_gauge<real_t<S>>(spec.family);
  const std::size_t n = q.size();
  if (j >= n) throw ArgumentError("build_dA: direction out of range");
  const S omega = T::from_real(spec.omega);
  auto delta = [](std::size_t a, std::size_t b) { return ScalarTraits<S>::from_int(a == b ? 1 : 0); };
  // d/dq_j of f(q_l − q_m) is f′(q_l − q_m)(δ_jl − δ_jm)
  Matrix<S> dF(n, n), dW(n, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      if (l != m) {
        const real_t<S> x = q[l] - q[m];
        const S w = T::from_real(eval_w(c, x));
        const S chain = delta(j, l) - delta(j, m);
        dF(l, m) = -w * w * chain;
        dW(l, m) = T::from_real(eval_dw(c, x)) * chain;
      }
  std::vector<Matrix<S>> out;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<S> a(n, n);
    for (std::size_t l = 0; l < n; ++l) {
      S cart = dF(l, k);
      for (std::size_t m = 0; m < n; ++m)
        if (m != l) cart += omega * dF(l, m);
      a(l, l) = cart;
      for (std::size_t m = 0; m < n; ++m)
        if (m != l) a(l, m) = dW(l, m) * (delta(l, k) + omega);
    }
    out.push_back(spec.family == Family::caseI ? a : Matrix<S>(-a.adjoint()));
  }
  return out;
}

/// φ with its closed-form inverse: φ_{nk} = 1, φ_{jk} = e_{n−j}(F_l : l ≠ k),
/// (φ⁻¹)_{jk} = (−F_j)^{k−1} Π_{l≠j} 1/(F_l − F_j).
template <class S>
std::pair<Matrix<S>, Matrix<S>> build_phi(const ModelCase& c, const std::vector<real_t<S>>& q) {
  using T = ScalarTraits<S>;
  const std::size_t n = q.size();
  const auto F = detail::single_particle_F<S>(c, q);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const S d = F[i] - F[j];
      const bool degenerate = is_exact_v<S> ? T::is_zero(d) : T::magnitude(d) < kDegeneracyTolerance;
      if (degenerate) throw DegeneracyError("build_phi: coinciding single-particle F values");
    }
  Matrix<S> phi(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    // e[d] = elementary symmetric polynomial of degree d in {F_l : l ≠ k}
    std::vector<S> e(n, T::from_int(0));
    e[0] = T::from_int(1);
    std::size_t used = 0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      ++used;
      for (std::size_t d = used; d >= 1; --d) e[d] += F[l] * e[d - 1];
    }
    for (std::size_t j = 1; j <= n; ++j) phi(j - 1, k) = e[n - j];
  }
  Matrix<S> inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    S denom = T::from_int(1);
    for (std::size_t l = 0; l < n; ++l)
      if (l != j) denom *= F[l] - F[j];
    S power = T::from_int(1);
    for (std::size_t k = 0; k < n; ++k) {
      inv(j, k) = power / denom;
      power *= -F[j];
    }
  }
  return {std::move(phi), std::move(inv)};
}

/// Diagonal χ_kk = Π_{l≠k} 1/w(q_l).
template <class S>
Matrix<S> build_chi(const ModelCase& c, const std::vector<real_t<S>>& q) {
  using T = ScalarTraits<S>;
  const std::size_t n = q.size();
  std::vector<S> w;
  for (const auto& x : q) {
    const S v = T::from_real(eval_w(c, real_t<S>(x)));
    if (T::is_zero(v)) throw DomainError("build_chi: w(q_l) = 0");
    w.push_back(v);
  }
  Matrix<S> chi(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    S p = T::from_int(1);
    for (std::size_t l = 0; l < n; ++l)
      if (l != k) p /= w[l];
    chi(k, k) = p;
  }
  return chi;
}

/// exp(−X nΩ Σq_i)
template <class S>
Matrix<S> build_h_factor(const ModelCase& c, const std::vector<real_t<S>>& q, const real_t<S>& omega) {
  using T = ScalarTraits<S>;
  const int n = static_cast<int>(q.size());
  real_t<S> sum = 0;
  for (const auto& x : q) sum += x;
  const S coef = -T::from_int(n) * T::from_real(omega) * T::from_real(sum);
  return expm(Matrix<S>(coef * build_X<S>(c, n)));
}

/// One factor of g together with its inverse.
template <class S>
struct GaugeFactor {
  Matrix<S> m;
  Matrix<S> inv;
};

/// Factors of g, outermost first: g0, exp(−X nΩ Σq), φ, χ for case I. Case II
/// replaces each non-g0 factor f by (f†)⁻¹. Inverses come from closed forms so
/// that badly conditioned exponentials are never inverted numerically.
template <class S>
std::vector<GaugeFactor<S>> build_g_factors(const ModelCase& c, const std::vector<real_t<S>>& q,
                                            const RSpec<real_t<S>>& spec, const Matrix<S>& g0) {
  using T = ScalarTraits<S>;
  detail::require_family_with_gauge<real_t<S>>(spec.family);
  const std::size_t n = q.size();
  if (!g0.square() || g0.rows() != n) throw ArgumentError("build_g: g0 must be n×n");
  real_t<S> sum = 0;
  for (const auto& x : q) sum += x;
  const S coef = -T::from_int(static_cast<long>(n)) * T::from_real(spec.omega) * T::from_real(sum);
  const Matrix<S> X = build_X<S>(c, static_cast<int>(n));
  auto [phi, phi_inv] = build_phi<S>(c, q);
  const Matrix<S> chi = build_chi<S>(c, q);
  Matrix<S> chi_inv(n, n);
  for (std::size_t k = 0; k < n; ++k) chi_inv(k, k) = T::from_int(1) / chi(k, k);
  std::vector<GaugeFactor<S>> f;
  f.push_back({g0, g0.inverse()});
  f.push_back({expm(Matrix<S>(coef * X)), expm(Matrix<S>(-coef * X))});
  f.push_back({std::move(phi), std::move(phi_inv)});
  f.push_back({chi, chi_inv});
  if (spec.family == Family::caseII)
    for (std::size_t i = 1; i < f.size(); ++i) f[i] = {f[i].inv.adjoint(), f[i].m.adjoint()};
  return f;
}

/// g = g0 · exp(−X nΩ Σq) · φ · χ for case I; case II uses g0 · (g_I†)⁻¹
/// with g_I built at g0 = 1.
template <class S>
Matrix<S> build_g(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                  const Matrix<S>& g0) {
  const auto f = build_g_factors<S>(c, q, spec, g0);
  Matrix<S> g = f.front().m;
  for (std::size_t i = 1; i < f.size(); ++i) g = g * f[i].m;
  return g;
}

template <class S>
Matrix<S> build_g_inverse(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                          const Matrix<S>& g0) {
  const auto f = build_g_factors<S>(c, q, spec, g0);
  Matrix<S> gi = f.back().inv;
  for (std::size_t i = f.size() - 1; i-- > 0;) gi = gi * f[i].inv;
  return gi;
}

/// ∂g/∂q_k in closed form: the exponential factor contributes −nΩX,
/// φ through ∂e_d/∂F_k = e_{d−1} and F′ = −w², χ through ∂χ_mm/∂q_k = F_k χ_mm (m ≠ k).
template <class S>
Matrix<S> build_dg(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                   const Matrix<S>& g0, std::size_t k) {
  using T = ScalarTraits<S>;
  const std::size_t n = q.size();
  if (k >= n) throw ArgumentError("build_dg: direction out of range");
  RSpec<real_t<S>> first{Family::caseI, spec.omega};
  const auto f = build_g_factors<S>(c, q, first, Matrix<S>::identity(n));
  const Matrix<S>& h = f[1].m;
  const Matrix<S>& phi = f[2].m;
  const Matrix<S>& chi = f[3].m;
  const auto F = detail::single_particle_F<S>(c, q);
  const S wk = T::from_real(eval_w(c, q[k]));
  const S dFk = -wk * wk;

  const Matrix<S> dh = (-T::from_int(static_cast<long>(n)) * T::from_real(spec.omega)) * (build_X<S>(c, static_cast<int>(n)) * h);
  Matrix<S> dphi(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    if (m == k) continue;
    // e[d] over {F_l : l ≠ m, l ≠ k}
    std::vector<S> e(n, T::from_int(0));
    e[0] = T::from_int(1);
    std::size_t used = 0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == m || l == k) continue;
      ++used;
      for (std::size_t d = used; d >= 1; --d) e[d] += F[l] * e[d - 1];
    }
    for (std::size_t j = 1; j < n; ++j) dphi(j - 1, m) = dFk * e[n - j - 1];
  }
  Matrix<S> dchi(n, n);
  for (std::size_t m = 0; m < n; ++m)
    if (m != k) dchi(m, m) = F[k] * chi(m, m);

  const Matrix<S> dgI = dh * phi * chi + h * dphi * chi + h * phi * dchi;
  if (spec.family == Family::caseI) return g0 * dgI;
  // g = g0 (g_I†)⁻¹  ⇒  ∂g = −g (∂g_I)† (g_I†)⁻¹
  // (g_I†)⁻¹ = (g_I⁻¹)† = (χ⁻¹φ⁻¹h⁻¹)†
  const Matrix<S> gIdag_inv = f[1].inv.adjoint() * f[2].inv.adjoint() * f[3].inv.adjoint();
  return -(g0 * gIdag_inv) * dgI.adjoint() * gIdag_inv;
}

/// r′ = (g⊗g)(r + Σ_k A_k⊗H_k)(g⊗g)⁻¹
template <class S>
Matrix<S> transform_r(const Matrix<S>& r, const std::vector<Matrix<S>>& A, const Matrix<S>& g) {
  const int n = tensor_dim(r, 2);
  if (A.size() != static_cast<std::size_t>(n)) throw ArgumentError("transform_r: need n gauge potentials");
  Matrix<S> core = r;
  for (int k = 1; k <= n; ++k) core += tensor(A[static_cast<std::size_t>(k - 1)], cartan_H<S>(k, n));
  return conjugate(core, g);
}

/// Full pipeline: dynamical r(q) of the family, its gauge potentials and g(q),
/// conjugating factor by factor from the innermost one outwards.
template <class S>
Matrix<S> transform_r(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                      const Matrix<S>& g0) {
  const int n = static_cast<int>(q.size());
  const auto A = build_A<S>(c, q, spec);
  Matrix<S> t = build_r_dynamical<S>(c, q, spec);
  for (int k = 1; k <= n; ++k) t += tensor(A[static_cast<std::size_t>(k - 1)], cartan_H<S>(k, n));
  const auto f = build_g_factors<S>(c, q, spec, g0);
  for (std::size_t i = f.size(); i-- > 0;) t = conjugate(t, f[i].m, f[i].inv);
  return t;
}

/// L′ = gLg⁻¹ with ∂L′/∂p_k = g H_k g⁻¹ and ∂L′/∂q_k = g(∂L/∂q_k + [L, A_k])g⁻¹,
/// which follows from ∂_k g = −g A_k.
template <class S>
LaxData<S> gauge_lax_data(const LaxData<S>& base, const Matrix<S>& g, const Matrix<S>& gi,
                          const std::vector<Matrix<S>>& A) {
  LaxData<S> out;
  out.L = g * base.L * gi;
  for (std::size_t k = 0; k < base.dL_dp.size(); ++k) {
    out.dL_dp.push_back(g * base.dL_dp[k] * gi);
    out.dL_dq.push_back(g * (base.dL_dq[k] + commutator(base.L, A[k])) * gi);
  }
  return out;
}

template <class S>
LaxData<S> gauge_lax_data(const LaxData<S>& base, const Matrix<S>& g, const std::vector<Matrix<S>>& A) {
  return gauge_lax_data(base, g, g.inverse(), A);
}

/// Central difference of a matrix-valued function of q along direction k.
/// With richardson set, two steps h and h/2 are combined to cancel the h² term.
template <class S, class Fn>
Matrix<S> central_difference(Fn&& f, const std::vector<real_t<S>>& q, std::size_t k, double h, bool richardson) {
  using T = ScalarTraits<S>;
  auto diff = [&](const real_t<S>& step) {
    auto qp = q;
    auto qm = q;
    qp[k] += step;
    qm[k] -= step;
    return Matrix<S>((f(qp) - f(qm)) * (T::from_int(1) / (T::from_int(2) * T::from_real(step))));
  };
  const real_t<S> step(h);
  if (!richardson) return diff(step);
  const auto coarse = diff(step);
  const auto fine = diff(real_t<S>(step / 2));
  return (T::from_int(4) * fine - coarse) * (T::from_int(1) / T::from_int(3));
}

/// max_{k,l} ‖∂_k A_l − ∂_l A_k + [A_l, A_k]‖ by finite differences.
template <class S>
double zero_curvature_residual(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                               double h = 1e-5, bool richardson = false) {
  const std::size_t n = q.size();
  const auto A = build_A<S>(c, q, spec);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      const auto dk_Al = central_difference<S>([&](const auto& x) { return build_A<S>(c, x, spec)[l]; }, q, k, h, richardson);
      const auto dl_Ak = central_difference<S>([&](const auto& x) { return build_A<S>(c, x, spec)[k]; }, q, l, h, richardson);
      worst = std::max(worst, frobenius_norm(Matrix<S>(dk_Al - dl_Ak + commutator(A[l], A[k]))));
    }
  return worst;
}

/// max_k ‖∂_k g + g A_k‖ by finite differences.
template <class S>
double gauge_ode_residual(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                          const Matrix<S>& g0, double h = 1e-5, bool richardson = false) {
  const auto A = build_A<S>(c, q, spec);
  const auto g = build_g<S>(c, q, spec, g0);
  double worst = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const auto dg = central_difference<S>([&](const auto& x) { return build_g<S>(c, x, spec, g0); }, q, k, h, richardson);
    worst = std::max(worst, frobenius_norm(Matrix<S>(dg + g * A[k])));
  }
  return worst;
}

/// ρ(q) written out in terms of single-particle F values.
template <class S>
Matrix<S> build_rho(const ModelCase& c, const std::vector<real_t<S>>& q) {
  const int n = static_cast<int>(q.size());
  const auto F = detail::single_particle_F<S>(c, q);
  const S B = B_scalar<S>(c);
  Matrix<S> rho(n * n, n * n);
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) {
      if (k == l) continue;
      const S& Fk = F[static_cast<std::size_t>(k - 1)];
      const S& Fl = F[static_cast<std::size_t>(l - 1)];
      const auto left = basis_e<S>(k, l, n) - basis_e<S>(l, l, n);
      const auto right = basis_e<S>(l, k, n) - basis_e<S>(k, k, n);
      const S coef = (Fk * Fl - B) / (Fk - Fl);
      rho += coef * tensor(left, right);
      rho += Fk * tensor(basis_e<S>(k, k, n), basis_e<S>(k, l, n));
      rho -= Fl * tensor(basis_e<S>(l, k, n), basis_e<S>(l, l, n));
    }
  return rho;
}

/// (φ⊗φ)ρ − r̃′(φ⊗φ)
template <class S>
Matrix<S> appendixC_defect(const ModelCase& c, const std::vector<real_t<S>>& q) {
  const int n = static_cast<int>(q.size());
  const auto phi = build_phi<S>(c, q).first;
  const auto pp = kron(phi, phi);
  return pp * build_rho<S>(c, q) - build_tilde_r_prime<S>(c, n) * pp;
}

template <class S>
double appendixC_residual(const ModelCase& c, const std::vector<real_t<S>>& q) {
  return frobenius_norm(appendixC_defect<S>(c, q));
}

/// 𝒜̃ = g̃ 𝒜 g̃⁻¹ with g̃ = φχ.
template <class S>
Matrix<S> build_calA_tilde(const ModelCase& c, const std::vector<real_t<S>>& q) {
  const Matrix<S> gt = build_phi<S>(c, q).first * build_chi<S>(c, q);
  return gt * build_calA<S>(c, q) * gt.inverse();
}

}  // namespace cmr
