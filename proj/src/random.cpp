#include "cmr/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace cmr {

double Sampler::uniform(double lo, double hi) {
  // Built from raw 53-bit draws so that sequences do not depend on the
  // standard library's distribution implementation.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<double> Sampler::coordinates(const ModelCase& c, int n) {
  constexpr double lo = 0.1;
  constexpr double hi = 2.0;
  constexpr double gap = 0.05;
  // Uniform order statistics on the shrunken interval, then spread by the gap.
  const double span = hi - lo - gap * (n - 1);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (auto& x : u) x = uniform(0.0, span);
  std::sort(u.begin(), u.end());
  std::vector<double> q(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) q[i] = lo + u[i] + gap * static_cast<double>(i);
  if (c.kind == Kind::trigonometric) {
    const double scale = std::numbers::pi / (4.0 * c.a);
    for (auto& x : q) x *= scale;
  }
  return q;
}

PhasePoint<double> Sampler::phase_point(const ModelCase& c, int n) {
  PhasePoint<double> pt;
  pt.q = coordinates(c, n);
  pt.p.resize(pt.q.size());
  for (auto& x : pt.p) x = uniform(-1.0, 1.0);
  return pt;
}

Rational to_rational(double x, long denominator) {
  Rational r(static_cast<long>(std::lround(x * static_cast<double>(denominator))), denominator);
  r.canonicalize();
  return r;
}

PhasePoint<Rational> Sampler::rational_phase_point(int n) {
  const auto f = phase_point(ModelCase::rational(), n);
  PhasePoint<Rational> pt;
  for (double x : f.q) pt.q.push_back(to_rational(x));
  for (double x : f.p) pt.p.push_back(to_rational(x));
  return pt;
}

double condition_number(const CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd em(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) em(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(em);
  const auto& s = svd.singularValues();
  if (s(n - 1) == 0.0) return INFINITY;
  return s(0) / s(n - 1);
}

CMatrix Sampler::well_conditioned(int n) {
  for (;;) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = uniform(-1.0, 1.0);
    if (condition_number(m) < 50.0) return m;
  }
}

}  // namespace cmr
