#include "cmr/lax.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cmr {

PhasePoint<double> hamilton_rhs(const ModelCase& c, const PhasePoint<double>& pt) {
  const std::size_t n = pt.q.size();
  PhasePoint<double> d{pt.p, std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      const double f = eval_dv(c, pt.q[k] - pt.q[l]);
      d.p[k] -= f;
      d.p[l] += f;
    }
  return d;
}

namespace {

PhasePoint<double> axpy(const PhasePoint<double>& x, double h, const PhasePoint<double>& d) {
  PhasePoint<double> out = x;
  for (std::size_t i = 0; i < x.q.size(); ++i) {
    out.q[i] += h * d.q[i];
    out.p[i] += h * d.p[i];
  }
  return out;
}

/// Sign of the quantity whose zeros are the singular set: q_k − q_l, or
/// sin(a(q_k − q_l)) in the trigonometric case.
double branch(const ModelCase& c, double d) { return c.kind == Kind::trigonometric ? std::sin(c.a * d) : d; }

/// Admissible and on the same side of every singular hyperplane as ref; a
/// step that jumps across a singularity has left the domain.
bool same_chamber(const ModelCase& c, const PhasePoint<double>& ref, const PhasePoint<double>& pt) {
  for (std::size_t k = 0; k < pt.q.size(); ++k) {
    if (!std::isfinite(pt.p[k])) return false;
    for (std::size_t l = k + 1; l < pt.q.size(); ++l) {
      const double d = pt.q[k] - pt.q[l];
      if (!admissible(c, d)) return false;
      if ((branch(c, d) > 0) != (branch(c, ref.q[k] - ref.q[l]) > 0)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<PhasePoint<double>> evolve(const ModelCase& c, const PhasePoint<double>& start, double dt,
                                       std::size_t steps) {
  if (!(dt > 0.0)) throw ArgumentError("evolve: dt must be positive");
  require_admissible_point(c, start);
  std::vector<PhasePoint<double>> traj;
  traj.reserve(steps + 1);
  traj.push_back(start);
  PhasePoint<double> x = start;
  for (std::size_t s = 0; s < steps; ++s) {
    const PhasePoint<double> prev = x;
    auto stage = [&](double h, const PhasePoint<double>& d) {
      auto y = axpy(prev, h, d);
      if (!same_chamber(c, prev, y)) throw EvolutionError("evolve: a stage crossed a singularity", s);
      return y;
    };
    try {
      const auto k1 = hamilton_rhs(c, prev);
      const auto k2 = hamilton_rhs(c, stage(dt / 2, k1));
      const auto k3 = hamilton_rhs(c, stage(dt / 2, k2));
      const auto k4 = hamilton_rhs(c, stage(dt, k3));
      for (std::size_t i = 0; i < x.q.size(); ++i) {
        x.q[i] += dt / 6 * (k1.q[i] + 2 * k2.q[i] + 2 * k3.q[i] + k4.q[i]);
        x.p[i] += dt / 6 * (k1.p[i] + 2 * k2.p[i] + 2 * k3.p[i] + k4.p[i]);
      }
    } catch (const DomainError& e) {
      throw EvolutionError(std::string("evolve: left the admissible domain: ") + e.what(), s);
    }
    if (!same_chamber(c, prev, x)) throw EvolutionError("evolve: left the admissible domain", s);
    traj.push_back(x);
  }
  return traj;
}

std::vector<Complex> sorted_eigenvalues(const CMatrix& m) {
  if (!m.square()) throw ArgumentError("eigenvalues: matrix is not square");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd em(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) em(i, j) = m(i, j);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(em, false);
  std::vector<Complex> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

std::string trajectory_csv(const ModelCase& c, const std::vector<PhasePoint<double>>& traj, double dt) {
  std::ostringstream os;
  if (traj.empty()) return {};
  const int n = traj.front().n();
  os << "t";
  for (int k = 1; k <= n; ++k) os << ",q" << k;
  for (int k = 1; k <= n; ++k) os << ",p" << k;
  os << ",h,trL2,trL3\n";
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
  };
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const auto& pt = traj[s];
    put(static_cast<double>(s) * dt);
    for (double x : pt.q) os << ',', put(x);
    for (double x : pt.p) os << ',', put(x);
    const auto tr = trace_invariants(build_L<Complex>(c, pt), 3);
    os << ',', put(hamiltonian(c, pt));
    os << ',', put(tr[1].real());
    os << ',', put(tr[2].real());
    os << '\n';
  }
  return os.str();
}

}  // namespace cmr
