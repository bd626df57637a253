#include "cmr/dynr.hpp"

#include <atomic>
#include <thread>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include <Eigen/Dense>
#include "json.hpp"

#include "cmr/random.hpp"

namespace cmr {

std::string to_string(Family f) {
  switch (f) {
    case Family::avan_talon:
      return "AT";
    case Family::caseI:
      return "I";
    case Family::caseII:
      return "II";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "AT") return Family::avan_talon;
  if (s == "I") return Family::caseI;
  if (s == "II") return Family::caseII;
  throw ArgumentError("unknown family '" + s + "'");
}

int structure_constant(const Root& a, const Root& b, Root& sum) {
  // [e_ij, e_kl] = δ_jk e_il − δ_li e_kj
  if (a.l == b.k && a.k != b.l) {
    sum = {a.k, b.l};
    return 1;
  }
  if (b.l == a.k && b.k != a.l) {
    sum = {b.k, a.l};
    return -1;
  }
  return 0;
}

namespace {

std::size_t root_index(const Root& a, int n) {
  // position in roots(n): rows k, skipping the diagonal
  const int k = a.k - 1;
  const int l = a.l - 1;
  return static_cast<std::size_t>(k * (n - 1) + (l < k ? l : l - 1));
}

double dot(const Root& a, const std::vector<double>& v) {
  return v[static_cast<std::size_t>(a.k - 1)] - v[static_cast<std::size_t>(a.l - 1)];
}

// α(C_β − K_β)
double alpha_C_minus_K(const Root& a, const Root& b, const std::vector<double>& Cb) {
  const double aK = (a.component(b.k) + a.component(b.l));
  return dot(a, Cb) - aK;
}

RootSystemUnknowns make_unknowns(int n) {
  RootSystemUnknowns u;
  u.n = n;
  const auto m = static_cast<std::size_t>(n * (n - 1));
  u.b.assign(m, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  u.C = u.b;
  return u;
}

std::vector<double> flatten(const RootSystemUnknowns& u) {
  std::vector<double> x;
  for (const auto& v : u.b) x.insert(x.end(), v.begin(), v.end());
  for (const auto& v : u.C) x.insert(x.end(), v.begin(), v.end());
  return x;
}

RootSystemUnknowns unflatten(int n, const std::vector<double>& x) {
  auto u = make_unknowns(n);
  std::size_t p = 0;
  for (auto& v : u.b)
    for (auto& e : v) e = x[p++];
  for (auto& v : u.C)
    for (auto& e : v) e = x[p++];
  return u;
}

// Shared core; weight(α, β) returns the factor multiplying the normalized
// equation and wab / wsum give w_α w_β / w_{α+β} on the second term.
template <class Weights>
void root_equations(const RootSystemUnknowns& u, Weights&& weights, std::vector<double>& out) {
  const int n = u.n;
  const auto rs = roots(n);
  for (const Root& a : rs) {
    const auto& ba = u.b[root_index(a, n)];
    for (const Root& b : rs) {
      const auto& bb = u.b[root_index(b, n)];
      const auto& Cb = u.C[root_index(b, n)];
      Root s;
      const int cs = structure_constant(a, b, s);
      const double beta_b_alpha = dot(b, ba);
      const double third = 0.5 * alpha_C_minus_K(a, b, Cb);
      const double wab = weights(a, b);
      for (int k = 1; k <= n; ++k) {
        const auto kk = static_cast<std::size_t>(k - 1);
        double e = third * ba[kk] + beta_b_alpha * bb[kk];
        if (b == a.negated()) e -= a.component(k);
        if (cs != 0) e -= cs * u.b[root_index(s, n)][kk];
        out.push_back(wab * e);
      }
    }
  }
}

}  // namespace

RootSystemUnknowns family_solution(int n, Family f, double omega) {
  if (f == Family::avan_talon) throw ArgumentError("family_solution: Avan-Talon has no constant gauge potential");
  auto u = make_unknowns(n);
  const auto rs = roots(n);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Root& a = rs[i];  // a = λ_m − λ_l with m = a.k, l = a.l
    for (int k = 1; k <= n; ++k) {
      const int hit = f == Family::caseI ? a.k : a.l;
      u.b[i][static_cast<std::size_t>(k - 1)] = (k == hit ? 1.0 : 0.0) + omega;
      u.C[i][static_cast<std::size_t>(k - 1)] = (f == Family::caseI ? -1.0 : 1.0) * a.component(k);
    }
  }
  return u;
}

std::vector<double> eq33_defect(const ModelCase& c, const std::vector<double>& q, const RootSystemUnknowns& u) {
  if (static_cast<int>(q.size()) != u.n) throw ArgumentError("eq33_defect: dimension mismatch");
  auto w = [&](const Root& a) { return eval_w(c, q[static_cast<std::size_t>(a.k - 1)] - q[static_cast<std::size_t>(a.l - 1)]); };
  std::vector<double> out;
  // Every term of the unnormalized equation carries w_α w_β (for β = −α,
  // α_k w_α² = −α_k w_α w_β), so the weighted form is exactly w_α w_β times
  // the normalized one.
  root_equations(u, [&](const Root& a, const Root& b) { return w(a) * w(b); }, out);
  return out;
}

std::vector<double> eq33_normalized_defect(const RootSystemUnknowns& u) {
  const int n = u.n;
  std::vector<double> out;
  root_equations(u, [](const Root&, const Root&) { return 1.0; }, out);
  const auto rs = roots(n);
  for (const Root& a : rs) {
    const auto& Ca = u.C[root_index(a, n)];
    double tr = 0.0;
    for (double x : Ca) tr += x;
    out.push_back(tr);
    const auto& Cm = u.C[root_index(a.negated(), n)];
    for (std::size_t i = 0; i < Ca.size(); ++i) out.push_back(Ca[i] + Cm[i]);
    for (const Root& b : rs) out.push_back(dot(b, Ca) - dot(a, u.C[root_index(b, n)]));
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool classify_solution(const RootSystemUnknowns& u, FamilyCount& out, double tol) {
  const auto rs = roots(u.n);
  for (Family f : {Family::caseI, Family::caseII}) {
    const auto base = family_solution(u.n, f, 0.0);
    const double omega = u.b[0][0] - base.b[0][0];
    bool ok = true;
    for (std::size_t i = 0; i < rs.size() && ok; ++i)
      for (std::size_t k = 0; k < u.b[i].size() && ok; ++k) {
        if (std::abs(u.b[i][k] - base.b[i][k] - omega) > tol) ok = false;
        if (std::abs(u.C[i][k] - base.C[i][k]) > tol) ok = false;
      }
    if (ok) {
      out = {f, omega, 1};
      return true;
    }
  }
  return false;
}

namespace {

struct NewtonResult {
  bool converged = false;
  RootSystemUnknowns solution;
};

// Residual: weighted root equations at a fixed admissible q plus the C constraints.
std::vector<double> probe_residual(const ModelCase& c, const std::vector<double>& q, int n, const std::vector<double>& x) {
  const auto u = unflatten(n, x);
  auto r = eq33_defect(c, q, u);
  const auto full = eq33_normalized_defect(u);
  const std::size_t root_part = r.size();
  r.insert(r.end(), full.begin() + static_cast<std::ptrdiff_t>(root_part), full.end());
  return r;
}

NewtonResult damped_newton(const ModelCase& c, const std::vector<double>& q, int n, std::vector<double> x) {
  constexpr int kMaxIter = 200;
  constexpr double kTol = 1e-12;
  // Equations are at most quadratic in the unknowns, so central differences
  // with a moderate step reproduce the Jacobian up to rounding.
  constexpr double kStep = 1e-3;
  auto r = probe_residual(c, q, n, x);
  auto sq = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return s;
  };
  double f = sq(r);
  const auto m = static_cast<Eigen::Index>(r.size());
  const auto u = static_cast<Eigen::Index>(x.size());
  for (int it = 0; it < kMaxIter; ++it) {
    if (max_abs(r) < kTol) return {true, unflatten(n, x)};
    Eigen::MatrixXd J(m, u);
    for (Eigen::Index j = 0; j < u; ++j) {
      auto xp = x;
      auto xm = x;
      xp[static_cast<std::size_t>(j)] += kStep;
      xm[static_cast<std::size_t>(j)] -= kStep;
      const auto rp = probe_residual(c, q, n, xp);
      const auto rm = probe_residual(c, q, n, xm);
      for (Eigen::Index i = 0; i < m; ++i)
        J(i, j) = (rp[static_cast<std::size_t>(i)] - rm[static_cast<std::size_t>(i)]) / (2 * kStep);
    }
    const Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(r.data(), m);
    const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-rv);
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 30; ++halving) {
      auto xn = x;
      for (Eigen::Index j = 0; j < u; ++j) xn[static_cast<std::size_t>(j)] += lambda * step(j);
      auto rn = probe_residual(c, q, n, xn);
      const double fn = sq(rn);
      if (fn < f || max_abs(rn) < kTol) {
        x = std::move(xn);
        r = std::move(rn);
        f = fn;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  if (max_abs(r) < kTol) return {true, unflatten(n, x)};
  return {false, {}};
}

}  // namespace

ClassificationReport appendixB_solve(int n, const ModelCase& c, int trials, std::uint64_t seed, unsigned threads) {
  if (n < 2 || n > 4) throw ArgumentError("appendixB_solve: n must be in {2, 3, 4}");
  if (trials < 100) throw ArgumentError("appendixB_solve: at least 100 trials are required");
  Sampler sampler(seed);
  const auto q = sampler.coordinates(c, n);
  const std::size_t dim = flatten(make_unknowns(n)).size();
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(trials), std::vector<double>(dim));
  for (auto& x0 : starts)
    for (auto& e : x0) e = sampler.uniform(-2.0, 2.0);

  std::vector<NewtonResult> results(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < starts.size(); t = next++) results[t] = damped_newton(c, q, n, starts[t]);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ClassificationReport rep;
  rep.n = n;
  rep.model = c;
  rep.trials = trials;
  std::vector<FamilyCount> found;
  for (auto& res : results) {
    if (!res.converged) continue;
    ++rep.converged;
    FamilyCount fc;
    if (classify_solution(res.solution, fc)) {
      found.push_back(fc);
    } else {
      ++rep.other;
      rep.other_solutions.push_back(std::move(res.solution));
    }
  }
  // Group converged solutions by family and Ω (to 1e-8).
  std::sort(found.begin(), found.end(), [](const FamilyCount& a, const FamilyCount& b) {
    return std::tie(a.family, a.omega) < std::tie(b.family, b.omega);
  });
  for (const auto& fc : found) {
    if (!rep.families.empty() && rep.families.back().family == fc.family &&
        std::abs(rep.families.back().omega - fc.omega) <= 1e-8) {
      ++rep.families.back().count;
    } else {
      rep.families.push_back(fc);
    }
  }
  if (rep.converged == 0) throw std::runtime_error("appendixB_solve: no Newton trial converged");
  return rep;
}

std::string report_json(const ClassificationReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["case"] = to_string(r.model.kind);
  j["trials"] = r.trials;
  j["converged"] = r.converged;
  j["families"] = nlohmann::ordered_json::array();
  for (const auto& f : r.families)
    j["families"].push_back({{"type", to_string(f.family)}, {"omega", f.omega}, {"count", f.count}});
  j["other"] = r.other;
  return j.dump(2);
}

}  // namespace cmr
