#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmr/lax.hpp"
#include "cmr/matrix.hpp"
#include "cmr/potentials.hpp"
#include "cmr/tensor.hpp"

namespace cmr {

/// avan_talon: C ≡ 0, Q ≡ 0. caseI: C_α = −H_α. caseII: C_α = +H_α.
enum class Family { avan_talon, caseI, caseII };

std::string to_string(Family f);
Family parse_family(const std::string& s);

/// Free data of one dynamical r-matrix; θ and Q′ are fixed to zero.
template <class R>
struct RSpec {
  Family family = Family::caseI;
  R omega = 0;
};

/// 𝒜 = Σ_{l≠m} (F_{λl−λm} H_l + w_{λl−λm} E_{λl−λm})
template <class S>
Matrix<S> build_calA(const ModelCase& c, const std::vector<real_t<S>>& q) {
  using T = ScalarTraits<S>;
  const std::size_t n = q.size();
  Matrix<S> m(n, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k) {
      if (l == k) continue;
      const real_t<S> d = q[l] - q[k];
      m(l, l) += T::from_real(eval_F(c, d));
      m(l, k) = T::from_real(eval_w(c, d));
    }
  return m;
}

/// The C_α of a family, as a diagonal matrix.
template <class S>
Matrix<S> family_C(Family f, const Root& a, int n) {
  switch (f) {
    case Family::avan_talon:
      return Matrix<S>::zero(n);
    case Family::caseI:
      return -root_H<S>(a, n);
    case Family::caseII:
      return root_H<S>(a, n);
  }
  return Matrix<S>::zero(n);
}

/// Q(q) with θ = Q′ = 0: zero for Avan-Talon, −Ω𝒜 for case I, and the
/// †-dual −Ω(−𝒜†) for case II.
template <class S>
Matrix<S> build_Q(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec) {
  const std::size_t n = q.size();
  const S omega = ScalarTraits<S>::from_real(spec.omega);
  switch (spec.family) {
    case Family::avan_talon:
      return Matrix<S>::zero(n);
    case Family::caseI:
      return -omega * build_calA<S>(c, q);
    case Family::caseII:
      return omega * build_calA<S>(c, q).adjoint();
  }
  return Matrix<S>::zero(n);
}

/// r(q) = −Σ_α F_α E_α⊗E_{−α} + ½ Σ_α w_α (C_α − K_α)⊗E_α + 1⊗Q for
/// explicitly supplied C_α (indexed like roots(n)) and Q.
template <class S>
Matrix<S> build_r_general(const ModelCase& c, const std::vector<real_t<S>>& q, const std::vector<Matrix<S>>& C,
                          const Matrix<S>& Q) {
  using T = ScalarTraits<S>;
  const int n = static_cast<int>(q.size());
  const auto rs = roots(n);
  if (C.size() != rs.size()) throw ArgumentError("build_r: need one C_α per root");
  Matrix<S> r(n * n, n * n);
  const S half = T::from_int(1) / T::from_int(2);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Root& a = rs[i];
    const real_t<S> x = q[a.k - 1] - q[a.l - 1];
    const auto E = root_E<S>(a, n);
    r -= T::from_real(eval_F(c, x)) * tensor(E, root_E<S>(a.negated(), n));
    r += half * T::from_real(eval_w(c, x)) * tensor(C[i] - root_K<S>(a, n), E);
  }
  r += tensor(unit<S>(n), Q);
  return r;
}

/// The momentum-independent dynamical r-matrix of the chosen family.
template <class S>
Matrix<S> build_r_dynamical(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec) {
  PhasePoint<real_t<S>> pt{q, std::vector<real_t<S>>(q.size(), real_t<S>(0))};
  require_admissible_point(c, pt);
  const int n = static_cast<int>(q.size());
  std::vector<Matrix<S>> C;
  for (const Root& a : roots(n)) C.push_back(family_C<S>(spec.family, a, n));
  return build_r_general<S>(c, q, C, build_Q<S>(c, q, spec));
}

// Root-space bookkeeping for the constant-coefficient equations on b_k^α.

/// [E_α, E_β] = c E_{α+β}: returns c ∈ {−1, 0, 1} and sets sum when nonzero.
int structure_constant(const Root& a, const Root& b, Root& sum);

/// Unknowns of the (E_α⊗E_β) component equations: b[α][k] and the diagonal
/// entries C[α][i], both indexed by roots(n) order and 0-based k, i.
struct RootSystemUnknowns {
  int n = 2;
  std::vector<std::vector<double>> b;
  std::vector<std::vector<double>> C;
};

/// Family I/II coefficients b_k^{λm−λl} = δ_km + Ω (I) or δ_kl + Ω (II), with C = ∓H_α.
RootSystemUnknowns family_solution(int n, Family f, double omega);

/// Residual vector of the (E_α⊗E_β) component equations at coordinates q,
/// with A_k^α = w_α b_k^α and α·r^β = ½ w_β α(C_β − K_β).
std::vector<double> eq33_defect(const ModelCase& c, const std::vector<double>& q, const RootSystemUnknowns& u);

/// Same equations divided by w_α w_β, which makes them q-independent;
/// followed by the constraints tr C_α = 0, C_{−α} = −C_α, β(C_α) = α(C_β).
std::vector<double> eq33_normalized_defect(const RootSystemUnknowns& u);

double max_abs(const std::vector<double>& v);

struct FamilyCount {
  Family family = Family::caseI;
  double omega = 0.0;
  int count = 0;
};

struct ClassificationReport {
  int n = 2;
  ModelCase model;
  int trials = 0;
  int converged = 0;
  int other = 0;
  std::vector<FamilyCount> families;  // sorted by family, then Ω
  std::vector<RootSystemUnknowns> other_solutions;
};

/// Random-start damped Gauss-Newton probe of the constant-coefficient
/// equations. Starts are uniform in [−2, 2]; convergence at max-residual
/// < 1e−12 within 200 iterations; a solution is family I/II when every
/// coefficient matches the family formula within 1e−8 for a common Ω.
/// Starts that stall in a nonzero local minimum count as not converged.
/// Results do not depend on the thread count. Throws std::runtime_error if
/// no start converges.
ClassificationReport appendixB_solve(int n, const ModelCase& c, int trials, std::uint64_t seed, unsigned threads = 1);

/// Classifies one converged solution; returns false for OTHER.
bool classify_solution(const RootSystemUnknowns& u, FamilyCount& out, double tol = 1e-8);

std::string report_json(const ClassificationReport& r);

}  // namespace cmr
