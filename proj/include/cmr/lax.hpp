#pragma once

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "cmr/errors.hpp"
#include "cmr/matrix.hpp"
#include "cmr/potentials.hpp"
#include "cmr/tensor.hpp"

namespace cmr {

/// Particle coordinates and momenta; R is double, QuadReal or Rational.
template <class R>
struct PhasePoint {
  std::vector<R> q;
  std::vector<R> p;

  int n() const { return static_cast<int>(q.size()); }
};

template <class R>
void require_admissible_point(const ModelCase& c, const PhasePoint<R>& pt) {
  if (pt.q.size() < 2) throw ArgumentError("phase point needs at least two particles");
  if (pt.p.size() != pt.q.size()) throw ArgumentError("phase point: q and p differ in length");
  for (std::size_t k = 0; k < pt.q.size(); ++k)
    for (std::size_t l = k + 1; l < pt.q.size(); ++l) {
      const R d = pt.q[k] - pt.q[l];
      if constexpr (std::is_same_v<R, double>) {
        require_admissible(c, d);
      } else if constexpr (std::is_same_v<R, QuadReal>) {
        require_admissible(c, static_cast<double>(d));
      } else {
        if (c.kind != Kind::rational) throw ArgumentError("exact arithmetic is only available for the rational case");
        if (sgn(d) == 0) throw DomainError("coinciding coordinates");
      }
    }
}

/// Standard Lax matrix L = p + √−1 Σ_α w(α(q)) E_α.
template <class S>
Matrix<S> build_L(const ModelCase& c, const PhasePoint<real_t<S>>& pt) {
  using T = ScalarTraits<S>;
  require_admissible_point(c, pt);
  const std::size_t n = pt.q.size();
  Matrix<S> L(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    L(k, k) = T::from_real(pt.p[k]);
    for (std::size_t l = 0; l < n; ++l)
      if (k != l) L(k, l) = T::imag_unit() * T::from_real(eval_w(c, real_t<S>(pt.q[k] - pt.q[l])));
  }
  return L;
}

template <class R>
R hamiltonian(const ModelCase& c, const PhasePoint<R>& pt) {
  require_admissible_point(c, pt);
  R h = 0;
  for (const auto& pk : pt.p) h += pk * pk;
  h /= 2;
  for (std::size_t k = 0; k < pt.q.size(); ++k)
    for (std::size_t l = k + 1; l < pt.q.size(); ++l) h += eval_v(c, R(pt.q[k] - pt.q[l]));
  return h;
}

/// A Lax matrix with its analytic phase-space derivatives ∂L/∂p_k, ∂L/∂q_k.
template <class S>
struct LaxData {
  Matrix<S> L;
  std::vector<Matrix<S>> dL_dp;
  std::vector<Matrix<S>> dL_dq;
};

/// ∂L/∂p_k = H_k, ∂L/∂q_k = √−1 Σ_α w′(α(q)) α_k E_α.
template <class S>
LaxData<S> lax_data(const ModelCase& c, const PhasePoint<real_t<S>>& pt) {
  using T = ScalarTraits<S>;
  LaxData<S> d;
  d.L = build_L<S>(c, pt);
  const int n = pt.n();
  for (int k = 1; k <= n; ++k) {
    d.dL_dp.push_back(cartan_H<S>(k, n));
    Matrix<S> dq(n, n);
    for (const Root& a : roots(n)) {
      const int ak = a.component(k);
      if (ak == 0) continue;
      const S wprime = T::from_real(eval_dw(c, real_t<S>(pt.q[a.k - 1] - pt.q[a.l - 1])));
      dq(a.k - 1, a.l - 1) = T::imag_unit() * wprime * T::from_int(ak);
    }
    d.dL_dq.push_back(std::move(dq));
  }
  return d;
}

/// {L₁, L₂} = Σ_k (∂L/∂p_k ⊗ ∂L/∂q_k − ∂L/∂q_k ⊗ ∂L/∂p_k), from {p_k, q_l} = δ_kl.
template <class S>
Matrix<S> poisson_bracket(const LaxData<S>& d) {
  const std::size_t n = d.L.rows();
  Matrix<S> out(n * n, n * n);
  for (std::size_t k = 0; k < d.dL_dp.size(); ++k)
    out += tensor(d.dL_dp[k], d.dL_dq[k]) - tensor(d.dL_dq[k], d.dL_dp[k]);
  return out;
}

template <class S>
Matrix<S> poisson_bracket_LL(const ModelCase& c, const PhasePoint<real_t<S>>& pt) {
  return poisson_bracket(lax_data<S>(c, pt));
}

/// {L₁,L₂} − [r₁₂, L⊗1] + [r₂₁, 1⊗L]
template <class S>
Matrix<S> eq2_defect(const LaxData<S>& d, const Matrix<S>& r12) {
  const std::size_t n = d.L.rows();
  if (r12.rows() != n * n || r12.cols() != n * n) throw ArgumentError("eq2_residual: r-matrix dimension mismatch");
  const auto id = Matrix<S>::identity(n);
  return poisson_bracket(d) - commutator(r12, kron(d.L, id)) + commutator(swap_factors(r12), kron(id, d.L));
}

template <class S>
double eq2_residual(const LaxData<S>& d, const Matrix<S>& r12) {
  return frobenius_norm(eq2_defect(d, r12));
}

/// (tr L, tr L², …, tr L^kmax)
template <class S>
std::vector<S> trace_invariants(const Matrix<S>& L, int kmax) {
  if (kmax < 1) throw ArgumentError("trace_invariants: kmax must be at least 1");
  std::vector<S> out;
  Matrix<S> power = L;
  for (int k = 1; k <= kmax; ++k) {
    out.push_back(power.trace());
    if (k < kmax) power = power * L;
  }
  return out;
}

/// Hamilton's equations dq_k/dt = p_k, dp_k/dt = −Σ_{l≠k} v′(q_k − q_l).
PhasePoint<double> hamilton_rhs(const ModelCase& c, const PhasePoint<double>& pt);

/// Classic fixed-step RK4. The returned trajectory has steps + 1 points,
/// the first being the initial point. Throws EvolutionError when a stage
/// leaves the admissible domain or jumps across a singularity.
std::vector<PhasePoint<double>> evolve(const ModelCase& c, const PhasePoint<double>& start, double dt, std::size_t steps);

/// Sorted eigenvalues (lexicographic on real, then imaginary part).
std::vector<Complex> sorted_eigenvalues(const CMatrix& m);

/// Writes t, q₁…q_n, p₁…p_n, h, trL², trL³ rows.
std::string trajectory_csv(const ModelCase& c, const std::vector<PhasePoint<double>>& traj, double dt);

}  // namespace cmr
