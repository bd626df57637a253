#include "cmr/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "cmr/constr.hpp"
#include "cmr/gauge.hpp"
#include "cmr/random.hpp"
#include "json.hpp"

namespace cmr {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "skipped";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"identities", "theorem1", "prop2",     "theorem3",
                                                 "prop4",      "prop5",    "theorem6",  "cg",
                                                 "cybe",       "appendixB", "appendixC"};
  return names;
}

unsigned thread_count_from_env() {
  if (const char* env = std::getenv("CMR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

using Q = QuadComplex;
using QR = QuadReal;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream per (suite, sample) so results do not depend on scheduling.
Sampler sampler_for(const VerifyConfig& cfg, std::uint64_t tag, std::uint64_t index) {
  return Sampler(splitmix(splitmix(cfg.seed ^ splitmix(tag)) + index));
}

std::uint64_t tag_of(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

template <class T, class Fn>
std::vector<T> parallel_map(int count, unsigned threads, Fn&& fn) {
  std::vector<T> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> err(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next++;
      if (i >= count) return;
      try {
        out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        err[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class Fn>
double parallel_max(int count, unsigned threads, Fn&& fn) {
  const auto v = parallel_map<double>(count, threads, std::forward<Fn>(fn));
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

/// Frobenius norm; an exact nonzero matrix never reports 0.
template <class S>
double measure(const Matrix<S>& m) {
  if constexpr (is_exact_v<S>) {
    return m.is_zero() ? 0.0 : std::max(frobenius_norm(m), DBL_MIN);
  } else {
    return frobenius_norm(m);
  }
}

/// Small-denominator rational when the float is one (e.g. 0.37, −0.25), else the exact binary value.
Rational omega_rational(double x) {
  for (long d = 1; d <= 1000; ++d) {
    const double num = std::round(x * static_cast<double>(d));
    if (std::abs(x * static_cast<double>(d) - num) <= 1e-12 * static_cast<double>(d)) {
      Rational r(static_cast<long>(num), d);
      r.canonicalize();
      return r;
    }
  }
  return Rational(x);
}

template <class S>
real_t<S> real_from(double x) {
  if constexpr (is_exact_v<S>) {
    return omega_rational(x);
  } else {
    return real_t<S>(x);
  }
}

template <class S>
PhasePoint<real_t<S>> sample_point(const VerifyConfig& cfg, Sampler& s) {
  if constexpr (is_exact_v<S>) {
    return s.rational_phase_point(cfg.n);
  } else if constexpr (std::is_same_v<S, Q>) {
    const auto f = s.phase_point(cfg.model, cfg.n);
    return {std::vector<QR>(f.q.begin(), f.q.end()), std::vector<QR>(f.p.begin(), f.p.end())};
  } else {
    return s.phase_point(cfg.model, cfg.n);
  }
}

template <class S>
Matrix<S> convert(const CMatrix& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if constexpr (is_exact_v<S>) {
        out(i, j) = GaussRational(to_rational(z.real()), to_rational(z.imag()));
      } else {
        out(i, j) = S(typename ScalarTraits<S>::Real(z.real()), typename ScalarTraits<S>::Real(z.imag()));
      }
    }
  return out;
}

template <class S>
RSpec<real_t<S>> spec_of(Family f, double omega) {
  return {f, real_from<S>(omega)};
}

class Runner {
public:
  Runner(const VerifyConfig& cfg, std::string suite, std::vector<CheckResult>& out)
      : cfg_(cfg), suite_(std::move(suite)), out_(out), threads_(cfg.threads ? cfg.threads : thread_count_from_env()),
        tag_(tag_of(suite_)) {}

  const VerifyConfig& cfg() const { return cfg_; }
  unsigned threads() const { return threads_; }
  int samples() const { return cfg_.samples; }
  Sampler sampler(std::uint64_t index, std::uint64_t salt = 0) const {
    return sampler_for(cfg_, tag_ + salt * 0x100000001b3ULL, index);
  }

  /// Runs fn; any exception marks the check failed with its message.
  void check(const std::string& name, double tol, const char* arithmetic, const std::function<double()>& fn,
             bool lower_bound = false, const std::string& note = "") {
    CheckResult r;
    r.suite = suite_;
    r.name = name;
    r.exact = std::string(arithmetic) == "exact";
    r.lower_bound = lower_bound;
    r.tol = r.exact ? 0.0 : tol;
    if (cfg_.tol && !r.exact && !lower_bound) r.tol = *cfg_.tol;
    r.note = note;
    r.arithmetic = arithmetic;
    try {
      r.residual = fn();
      bool ok = false;
      if (r.exact && !lower_bound) {
        ok = r.residual == 0.0;
      } else if (lower_bound) {
        ok = r.residual >= r.tol;
      } else {
        ok = std::isfinite(r.residual) && r.residual <= r.tol;
      }
      r.status = ok ? Status::pass : Status::fail;
    } catch (const std::exception& e) {
      r.residual = NAN;
      r.status = Status::fail;
      r.note = e.what();
    }
    out_.push_back(std::move(r));
  }

  void annotate_last(const std::string& note) {
    if (!out_.empty() && out_.back().note.empty()) out_.back().note = note;
  }

  void skip(const std::string& name, const std::string& note) {
    CheckResult r;
    r.suite = suite_;
    r.name = name;
    r.status = Status::skipped;
    r.residual = NAN;
    r.note = note;
    out_.push_back(std::move(r));
  }

private:
  const VerifyConfig& cfg_;
  std::string suite_;
  std::vector<CheckResult>& out_;
  unsigned threads_;
  std::uint64_t tag_;
};

const char* arith(const VerifyConfig& cfg) { return cfg.exact ? "exact" : "c64"; }

// ---------------------------------------------------------------------------

void suite_identities(Runner& run) {
  const auto& cfg = run.cfg();
  const ModelCase& c = cfg.model;
  const int count = std::max(cfg.samples, 1000);
  const double scale = c.kind == Kind::trigonometric ? std::acos(-1.0) / (4.0 * c.a) : 1.0;
  auto draw = [&](Sampler& s) {
    for (;;) {
      const double x = s.uniform(0.05, 2.0) * scale * (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
      const double y = s.uniform(0.05, 2.0) * scale * (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
      if (std::abs(x - y) >= 0.05 * scale && std::abs(x + y) >= 0.05 * scale) return std::pair{x, y};
    }
  };
  if (cfg.exact) {
    const auto all = [&](int which) {
      return parallel_max(count, run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        const auto [x, y] = draw(s);
        const auto r = check_identities_exact(c, to_rational(x), to_rational(y));
        return sgn(r[static_cast<std::size_t>(which)]) == 0 ? 0.0 : std::max(r[static_cast<std::size_t>(which)].get_d(), DBL_MIN);
      });
    };
    run.check("F' = -w^2", 0.0, "exact", [&] { return all(0); });
    run.check("F(x)+F(y) = w(x)w(y)/w(x+y)", 0.0, "exact", [&] { return all(1); });
    run.check("F(x-y)(F(x)-F(y)) + F(x)F(y) = B", 0.0, "exact", [&] { return all(2); });
    return;
  }
  const auto res = parallel_map<IdentityResiduals>(count, run.threads(), [&](int i) {
    auto s = run.sampler(static_cast<std::uint64_t>(i));
    const auto [x, y] = draw(s);
    return check_identities(c, x, y);
  });
  auto worst = [&](double IdentityResiduals::*m) {
    double w = 0.0;
    for (const auto& r : res) w = std::max(w, r.*m);
    return w;
  };
  run.check("F' = -w^2 (central differences)", 1e-6, "c64", [&] { return worst(&IdentityResiduals::derivative); });
  run.check("F(x)+F(y) = w(x)w(y)/w(x+y)", 1e-12, "c64", [&] { return worst(&IdentityResiduals::addition); });
  run.check("F(x-y)(F(x)-F(y)) + F(x)F(y) = B", 1e-12, "c64", [&] { return worst(&IdentityResiduals::three_term); });
}

// ---------------------------------------------------------------------------

template <class S>
void suite_theorem1_impl(Runner& run) {
  const auto& cfg = run.cfg();
  for (Family f : {Family::avan_talon, Family::caseI, Family::caseII}) {
    run.check("bracket relation, family " + to_string(f), 1e-9, ScalarTraits<S>::mode_name, [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        const auto pt = sample_point<S>(cfg, s);
        const auto r = build_r_dynamical<S>(cfg.model, pt.q, spec_of<S>(f, cfg.omega));
        return measure(eq2_defect(lax_data<S>(cfg.model, pt), r));
      });
    });
  }
}

// ---------------------------------------------------------------------------

template <class S>
Matrix<S> duality_defect(const ModelCase& c, const std::vector<real_t<S>>& q, const real_t<S>& omega) {
  const auto rI = build_r_dynamical<S>(c, q, {Family::caseI, omega});
  const auto rII = build_r_dynamical<S>(c, q, {Family::caseII, omega});
  return rII + adjoint_factors(rI);
}

void suite_prop2(Runner& run) {
  const auto& cfg = run.cfg();
  if (cfg.exact) {
    run.skip("component equations, family I", "the component equations are evaluated in floating point");
    run.skip("component equations, family II", "the component equations are evaluated in floating point");
    run.skip("component equations, random omega", "the component equations are evaluated in floating point");
    run.check("duality r_II = -(adj x adj) r_I", 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        const auto pt = s.rational_phase_point(cfg.n);
        return measure(duality_defect<GaussRational>(cfg.model, pt.q, omega_rational(cfg.omega)));
      });
    });
    return;
  }
  for (Family f : {Family::caseI, Family::caseII}) {
    run.check("component equations, family " + to_string(f), 1e-10, "c64", [&] {
      const auto u = family_solution(cfg.n, f, cfg.omega);
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        return max_abs(eq33_defect(cfg.model, s.coordinates(cfg.model, cfg.n), u));
      });
    });
  }
  run.check("component equations, random omega", 1e-10, "c64", [&] {
    return parallel_max(20, run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i), 1);
      const double omega = s.uniform(-2.0, 2.0);
      const auto q = s.coordinates(cfg.model, cfg.n);
      double w = 0.0;
      for (Family f : {Family::caseI, Family::caseII}) {
        const auto u = family_solution(cfg.n, f, omega);
        w = std::max({w, max_abs(eq33_defect(cfg.model, q, u)), max_abs(eq33_normalized_defect(u))});
      }
      return w;
    });
  });
  run.check("duality r_II = -(adj x adj) r_I", 1e-10, "c64", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return measure(duality_defect<Complex>(cfg.model, s.coordinates(cfg.model, cfg.n), cfg.omega));
    });
  });
}

// ---------------------------------------------------------------------------

template <class S>
double zero_curvature_analytic(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec) {
  const std::size_t n = q.size();
  const auto A = build_A<S>(c, q, spec);
  std::vector<std::vector<Matrix<S>>> dA;
  for (std::size_t j = 0; j < n; ++j) dA.push_back(build_dA<S>(c, q, spec, j));
  double w = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l)
      w = std::max(w, measure(Matrix<S>(dA[k][l] - dA[l][k] + commutator(A[l], A[k]))));
  return w;
}

/// A_k(Ω) − A_k(0) against Ω𝒜 (family I) or −Ω𝒜† (family II).
template <class S>
double omega_linearity(const ModelCase& c, const std::vector<real_t<S>>& q, Family f, const real_t<S>& omega) {
  using T = ScalarTraits<S>;
  const auto A = build_A<S>(c, q, {f, omega});
  const auto A0 = build_A<S>(c, q, {f, real_t<S>(0)});
  const auto calA = build_calA<S>(c, q);
  const Matrix<S> expected = f == Family::caseI ? Matrix<S>(T::from_real(omega) * calA)
                                                : Matrix<S>(-T::from_real(omega) * calA.adjoint());
  double w = 0.0;
  for (std::size_t k = 0; k < A.size(); ++k) w = std::max(w, measure(Matrix<S>(A[k] - A0[k] - expected)));
  return w;
}

void suite_theorem3(Runner& run) {
  const auto& cfg = run.cfg();
  const std::string fam = ", family " + to_string(cfg.family);
  if (cfg.exact) {
    run.skip("zero curvature (finite differences)" + fam, "finite differences are not exact");
    run.check("zero curvature (closed-form derivatives)" + fam, 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        const auto pt = s.rational_phase_point(cfg.n);
        return zero_curvature_analytic<GaussRational>(cfg.model, pt.q, spec_of<GaussRational>(cfg.family, cfg.omega));
      });
    });
    run.check("A(omega) - A(0) linear in omega" + fam, 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        const auto pt = s.rational_phase_point(cfg.n);
        return omega_linearity<GaussRational>(cfg.model, pt.q, cfg.family, omega_rational(cfg.omega));
      });
    });
    return;
  }
  const auto spec = spec_of<Complex>(cfg.family, cfg.omega);
  run.check("zero curvature (finite differences)" + fam, 1e-6, "c64", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return zero_curvature_residual<Complex>(cfg.model, s.coordinates(cfg.model, cfg.n), spec, 1e-5, true);
    });
  }, false, "Richardson-extrapolated central differences, step 1e-5");
  run.check("zero curvature (closed-form derivatives)" + fam, 1e-10, "c64", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return zero_curvature_analytic<Complex>(cfg.model, s.coordinates(cfg.model, cfg.n), spec);
    });
  });
  run.check("A(omega) - A(0) linear in omega" + fam, 1e-12, "c64", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return omega_linearity<Complex>(cfg.model, s.coordinates(cfg.model, cfg.n), cfg.family, cfg.omega);
    });
  });
}

// ---------------------------------------------------------------------------

template <class S>
double ode_analytic(const ModelCase& c, const std::vector<real_t<S>>& q, const RSpec<real_t<S>>& spec,
                    const Matrix<S>& g0) {
  const auto A = build_A<S>(c, q, spec);
  const auto g = build_g<S>(c, q, spec, g0);
  double w = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k)
    w = std::max(w, measure(Matrix<S>(build_dg<S>(c, q, spec, g0, k) + g * A[k])));
  return w;
}

template <class S>
double phi_inverse_defect(const ModelCase& c, const std::vector<real_t<S>>& q) {
  const auto [phi, inv] = build_phi<S>(c, q);
  return measure(Matrix<S>(phi * inv - Matrix<S>::identity(q.size())));
}

void suite_prop4(Runner& run) {
  const auto& cfg = run.cfg();
  const std::string fam = ", family " + to_string(cfg.family);
  if (cfg.exact) {
    using G = GaussRational;
    const auto spec = spec_of<G>(cfg.family, cfg.omega);
    run.skip("dg + gA = 0 (finite differences)" + fam, "finite differences are not exact");
    run.check("dg + gA = 0 (closed-form derivative)" + fam, 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        const auto pt = s.rational_phase_point(cfg.n);
        return ode_analytic<G>(cfg.model, pt.q, spec, QMatrix::identity(static_cast<std::size_t>(cfg.n)));
      });
    });
    run.check("phi times closed-form inverse", 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        return phi_inverse_defect<G>(cfg.model, s.rational_phase_point(cfg.n).q);
      });
    });
    return;
  }
  const auto spec = spec_of<Q>(cfg.family, cfg.omega);
  const auto g0 = Matrix<Q>::identity(static_cast<std::size_t>(cfg.n));
  run.check("dg + gA = 0 (finite differences)" + fam, 1e-6, "c128", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return gauge_ode_residual<Q>(cfg.model, sample_point<Q>(cfg, s).q, spec, g0, 1e-5, true);
    });
  }, false, "Richardson-extrapolated central differences, step 1e-5");
  run.check("dg + gA = 0 (closed-form derivative)" + fam, 1e-10, "c128", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return ode_analytic<Q>(cfg.model, sample_point<Q>(cfg, s).q, spec, g0);
    });
  });
  run.check("phi times closed-form inverse", 1e-12, "c64", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return phi_inverse_defect<Complex>(cfg.model, s.coordinates(cfg.model, cfg.n));
    });
  });
}

// ---------------------------------------------------------------------------

template <class S>
double commutes_with_X(const ModelCase& c, int n) {
  const auto X = build_X<S>(c, n);
  const auto id = unit<S>(n);
  return measure(commutator(Matrix<S>(kron(X, id) + kron(id, X)), build_tilde_r_prime_sl<S>(c, n)));
}

template <class S>
double frobenius_decomposition(const ModelCase& c, int n) {
  const auto b = build_b_gln<S>(n);
  return measure(Matrix<S>(build_tilde_r_prime<S>(c, n) - (B_scalar<S>(c) * b + apply_sigma_sigma(b))));
}

template <class S>
double gauge_image_at_zero(const ModelCase& c, const std::vector<real_t<S>>& q) {
  const int n = static_cast<int>(q.size());
  const auto rp = transform_r<S>(c, q, {Family::caseI, real_t<S>(0)}, Matrix<S>::identity(q.size()));
  return measure(Matrix<S>(rp - build_tilde_r_prime<S>(c, n)));
}

void suite_prop5(Runner& run) {
  const auto& cfg = run.cfg();
  const int n = cfg.n;
  if (cfg.exact) {
    using G = GaussRational;
    run.check("gauge image equals constant r~'", 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        return gauge_image_at_zero<G>(cfg.model, s.rational_phase_point(n).q);
      });
    });
    run.check("conjugated calA = nX", 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        const auto q = s.rational_phase_point(n).q;
        return measure(Matrix<G>(build_calA_tilde<G>(cfg.model, q) - G(n) * build_X<G>(cfg.model, n)));
      });
    });
    run.check("[X x 1 + 1 x X, r~'_sl] = 0", 0.0, "exact", [&] { return commutes_with_X<G>(cfg.model, n); });
    run.check("r~' = B b_gl + (sigma x sigma) b_gl", 0.0, "exact", [&] { return frobenius_decomposition<G>(cfg.model, n); });
    run.check("b_gl sum over S equals explicit double sum", 0.0, "exact",
              [&] { return measure(Matrix<G>(build_b_gln<G>(n) - build_b_gln_explicit<G>(n))); });
    return;
  }
  run.check("gauge image equals constant r~'", 1e-10, "c128", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return gauge_image_at_zero<Q>(cfg.model, sample_point<Q>(cfg, s).q);
    });
  });
  run.check("conjugated calA = nX", 1e-9, "c128", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      const auto q = sample_point<Q>(cfg, s).q;
      return measure(Matrix<Q>(build_calA_tilde<Q>(cfg.model, q) - Q(n) * build_X<Q>(cfg.model, n)));
    });
  });
  run.check("[X x 1 + 1 x X, r~'_sl] = 0", 1e-10, "c64", [&] { return commutes_with_X<Complex>(cfg.model, n); });
  run.check("r~' = B b_gl + (sigma x sigma) b_gl", 0.0, "c64", [&] { return frobenius_decomposition<Complex>(cfg.model, n); });
  run.check("b_gl sum over S equals explicit double sum", 0.0, "c64",
            [&] { return measure(CMatrix(build_b_gln<Complex>(n) - build_b_gln_explicit<Complex>(n))); });
}

// ---------------------------------------------------------------------------

/// Closed form of r′ for either family: case II is −(†⊗†) of case I at g0 = 1, then conjugated by g0.
template <class S>
Matrix<S> closed_form_r_prime(const ModelCase& c, int n, Family f, const real_t<S>& omega, const Matrix<S>& g0) {
  const S om = ScalarTraits<S>::from_real(omega);
  if (f == Family::caseI) return build_r_prime<S>(c, n, om, g0);
  const auto base = build_r_prime<S>(c, n, om, Matrix<S>::identity(static_cast<std::size_t>(n)));
  return conjugate(Matrix<S>(-adjoint_factors(base)), g0);
}

template <class S>
double partial_traces(const Matrix<S>& r) {
  return std::max(measure(partial_trace_first(r)), measure(partial_trace_second(r)));
}

template <class S>
double gauged_bracket(const ModelCase& c, const PhasePoint<real_t<S>>& pt, Family f, const real_t<S>& omega,
                      const Matrix<S>& g0) {
  const RSpec<real_t<S>> spec{f, omega};
  const auto A = build_A<S>(c, pt.q, spec);
  const auto g = build_g<S>(c, pt.q, spec, g0);
  const auto gi = build_g_inverse<S>(c, pt.q, spec, g0);
  const auto d = gauge_lax_data(lax_data<S>(c, pt), g, gi, A);
  return measure(eq2_defect(d, transform_r<S>(c, pt.q, spec, g0)));
}

template <class S>
void theorem6_checks(Runner& run) {
  const auto& cfg = run.cfg();
  const char* mode = ScalarTraits<S>::mode_name;
  const int n = cfg.n;
  const double tol_scale = is_exact_v<S> ? 0.0 : 1.0;
  const auto omega = real_from<S>(cfg.omega);
  const RSpec<real_t<S>> spec{cfg.family, omega};
  const auto id = Matrix<S>::identity(static_cast<std::size_t>(n));
  const std::string fam = ", family " + to_string(cfg.family);

  const auto rps = parallel_map<Matrix<S>>(std::max(run.samples(), 2), run.threads(), [&](int i) {
    auto s = run.sampler(static_cast<std::uint64_t>(i));
    return transform_r<S>(cfg.model, sample_point<S>(cfg, s).q, spec, id);
  });
  run.check("r' independent of q" + fam, 1e-8 * tol_scale, mode, [&] {
    double w = 0.0;
    for (std::size_t i = 1; i < rps.size(); ++i) w = std::max(w, measure(Matrix<S>(rps[i] - rps[0])));
    return w;
  });
  run.check("antisymmetry of r'" + fam, 1e-10 * tol_scale, mode, [&] {
    double w = 0.0;
    for (const auto& r : rps) w = std::max(w, measure(Matrix<S>(r + swap_factors(r))));
    return w;
  });
  run.check("r' equals closed form (random g0)" + fam, 1e-8 * tol_scale, mode, [&] {
    return parallel_max(std::min(run.samples(), 5), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i), 2);
      const auto g0 = convert<S>(s.well_conditioned(n));
      const auto q = sample_point<S>(cfg, s).q;
      return measure(Matrix<S>(transform_r<S>(cfg.model, q, spec, g0) - closed_form_r_prime<S>(cfg.model, n, cfg.family, omega, g0)));
    });
  });
  const real_t<S> sl_omega = real_t<S>(-1) / real_t<S>(n);
  run.check("partial traces vanish at omega = -1/n" + fam, 1e-10 * tol_scale, mode, [&] {
    auto s = run.sampler(0, 3);
    return partial_traces(transform_r<S>(cfg.model, sample_point<S>(cfg, s).q, {cfg.family, sl_omega}, id));
  });
  const double other = std::abs(cfg.omega + 1.0 / n) < 1e-9 ? 0.0 : cfg.omega;
  run.check("partial traces nonzero at omega != -1/n" + fam, 1e-10, mode, [&] {
    auto s = run.sampler(0, 4);
    return partial_traces(transform_r<S>(cfg.model, sample_point<S>(cfg, s).q, {cfg.family, real_from<S>(other)}, id));
  }, true);
  run.check("bracket relation for gL g^-1 and r'" + fam, 1e-8 * tol_scale, mode, [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i), 5);
      return gauged_bracket<S>(cfg.model, sample_point<S>(cfg, s), cfg.family, omega, id);
    });
  });
}

void suite_theorem6(Runner& run) {
  if (run.cfg().exact) {
    theorem6_checks<GaussRational>(run);
  } else {
    theorem6_checks<Q>(run);
  }
}

// ---------------------------------------------------------------------------

void suite_cg(Runner& run) {
  const auto& cfg = run.cfg();
  const auto rels = cfg.exact ? verify_cg_relations_exact(cfg.model, cfg.n) : verify_cg_relations(cfg.model, cfg.n, cfg.omega);
  for (const auto& r : rels) {
    if (r.skipped) {
      run.skip(r.name, r.note);
      continue;
    }
    run.check(r.name, 1e-9, arith(cfg), [&] { return cfg.exact ? (r.exact_zero ? 0.0 : std::max(r.value, DBL_MIN)) : r.value; });
  }
  if (cfg.exact) {
    run.skip("u-u+ conjugation", "a' is undefined for the rational case");
    run.skip("standard form", "a' is undefined for the rational case");
    run.check("(sigma x sigma) r_CG = -r_CG", 0.0, "exact", [&] {
      const auto r = build_r_cg<GaussRational>(cfg.n);
      return measure(QMatrix(apply_sigma_sigma(r) + r));
    });
  } else {
    run.check("(sigma x sigma) r_CG = -r_CG", 0.0, "c64", [&] {
      const auto r = build_r_cg<Complex>(cfg.n);
      return measure(CMatrix(apply_sigma_sigma(r) + r));
    });
  }
}

// ---------------------------------------------------------------------------

template <class S>
void cybe_checks(Runner& run) {
  const auto& cfg = run.cfg();
  const char* mode = ScalarTraits<S>::mode_name;
  const int n = cfg.n;
  const double ts = is_exact_v<S> ? 0.0 : 1.0;
  const S zero = ScalarTraits<S>::from_int(0);
  run.check("modified CYBE for r~'", 1e-9 * ts, mode,
            [&] { return cybe_residual(build_tilde_r_prime<S>(cfg.model, n), cfg.model); });
  run.check("modified CYBE for r' (random omega, g0)", 1e-9 * ts, mode, [&] {
    return parallel_max(std::min(run.samples(), 5), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      const double omega = i == 0 ? cfg.omega : s.uniform(-2.0, 2.0);
      const auto g0 = convert<S>(s.well_conditioned(n));
      const auto r = build_r_prime<S>(cfg.model, n, ScalarTraits<S>::from_real(real_from<S>(omega)), g0);
      return cybe_residual(r, cfg.model);
    });
  });
  run.check("classical CYBE for b_gl", 1e-10 * ts, mode, [&] { return cybe_residual(build_b_gln<S>(n), zero); });
  run.check("classical CYBE for b_CG+", 1e-10 * ts, mode, [&] { return cybe_residual(build_b_cg_plus<S>(n), zero); });
  run.check("classical CYBE for b_CG-", 1e-10 * ts, mode,
            [&] { return cybe_residual(apply_sigma_sigma(build_b_cg_plus<S>(n)), zero); });
  run.check("Fhat from gl_n and sl_n bases agree", 0.0, mode,
            [&] { return measure(Matrix<S>(build_Fhat<S>(n) - build_Fhat_sl<S>(n))); });
}

void suite_cybe(Runner& run) {
  if (run.cfg().exact) {
    cybe_checks<GaussRational>(run);
  } else {
    cybe_checks<Complex>(run);
  }
}

// ---------------------------------------------------------------------------

void suite_appendixB(Runner& run) {
  const auto& cfg = run.cfg();
  const std::string name = "random-start solutions are family I or II";
  if (cfg.exact) {
    run.skip(name, "the Newton probe runs in floating point");
    return;
  }
  if (cfg.n < 2 || cfg.n > 4) {
    run.skip(name, "the Newton probe is available for n = 2, 3, 4");
    return;
  }
  const int trials = std::max(200, cfg.samples);
  ClassificationReport rep;
  run.check(name, 0.0, "c64", [&] {
    rep = appendixB_solve(cfg.n, cfg.model, trials, cfg.seed, run.threads());
    return static_cast<double>(rep.other);
  });
  std::ostringstream note;
  int count_I = 0, count_II = 0;
  for (const auto& f : rep.families) (f.family == Family::caseI ? count_I : count_II) += f.count;
  note << rep.converged << " of " << rep.trials << " starts converged: family I x" << count_I << ", family II x" << count_II
       << ", other x" << rep.other;
  run.annotate_last(note.str());
}

void suite_appendixC(Runner& run) {
  const auto& cfg = run.cfg();
  if (cfg.exact) {
    run.check("(phi x phi) rho = r~' (phi x phi)", 0.0, "exact", [&] {
      return parallel_max(run.samples(), run.threads(), [&](int i) {
        auto s = run.sampler(static_cast<std::uint64_t>(i));
        return measure(appendixC_defect<GaussRational>(cfg.model, s.rational_phase_point(cfg.n).q));
      });
    });
    return;
  }
  run.check("(phi x phi) rho = r~' (phi x phi)", 1e-8, "c64", [&] {
    return parallel_max(run.samples(), run.threads(), [&](int i) {
      auto s = run.sampler(static_cast<std::uint64_t>(i));
      return appendixC_residual<Complex>(cfg.model, s.coordinates(cfg.model, cfg.n));
    });
  });
}

void validate(const VerifyConfig& cfg) {
  if (cfg.n < 2) throw ArgumentError("n must be at least 2");
  if (cfg.samples < 1) throw ArgumentError("samples must be positive");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw ArgumentError("tol must be positive");
  if (!(cfg.model.a > 0.0)) throw ArgumentError("a must be positive");
  if (cfg.exact && cfg.model.kind != Kind::rational) throw ArgumentError("exact mode is only available for the rational case");
}

void run_one(const std::string& suite, const VerifyConfig& cfg, std::vector<CheckResult>& out) {
  Runner run(cfg, suite, out);
  const bool gauge_suite = suite == "theorem3" || suite == "prop4" || suite == "theorem6";
  if (gauge_suite && cfg.family == Family::avan_talon) {
    run.skip("gauge potentials", "family AT has no gauge transformation");
    return;
  }
  if (suite == "identities") {
    suite_identities(run);
  } else if (suite == "theorem1") {
    if (cfg.exact) {
      suite_theorem1_impl<GaussRational>(run);
    } else {
      suite_theorem1_impl<Complex>(run);
    }
  } else if (suite == "prop2") {
    suite_prop2(run);
  } else if (suite == "theorem3") {
    suite_theorem3(run);
  } else if (suite == "prop4") {
    suite_prop4(run);
  } else if (suite == "prop5") {
    suite_prop5(run);
  } else if (suite == "theorem6") {
    suite_theorem6(run);
  } else if (suite == "cg") {
    suite_cg(run);
  } else if (suite == "cybe") {
    suite_cybe(run);
  } else if (suite == "appendixB") {
    suite_appendixB(run);
  } else if (suite == "appendixC") {
    suite_appendixC(run);
  } else {
    throw ArgumentError("unknown suite: " + suite);
  }
}

}  // namespace

std::vector<CheckResult> run_verification(const std::string& suite, const VerifyConfig& cfg) {
  validate(cfg);
  std::vector<CheckResult> out;
  if (suite == "all") {
    for (const auto& s : suite_names()) run_one(s, cfg, out);
  } else {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw ArgumentError("unknown suite: " + suite);
    run_one(suite, cfg, out);
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == Status::fail; });
}

namespace {

std::string residual_text(const CheckResult& r) {
  if (r.status == Status::skipped || std::isnan(r.residual)) return "";
  if (r.exact && r.residual == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r.residual);
  return buf;
}

}  // namespace

std::string report_json(const VerifyConfig& cfg, const std::vector<CheckResult>& results) {
  nlohmann::json j;
  j["schema"] = "cmr-report/1";
  j["config"] = {{"case", to_string(cfg.model.kind)},
                 {"a", cfg.model.a},
                 {"n", cfg.n},
                 {"omega", cfg.omega},
                 {"family", to_string(cfg.family)},
                 {"seed", cfg.seed},
                 {"mode", cfg.exact ? "exact" : "float"},
                 {"samples", cfg.samples}};
  if (cfg.tol) j["config"]["tol"] = *cfg.tol;
  auto checks = nlohmann::json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    nlohmann::json c;
    c["suite"] = r.suite;
    c["name"] = r.name;
    c["status"] = to_string(r.status);
    if (r.status == Status::skipped) {
      c["residual"] = nullptr;
    } else if (r.exact) {
      c["residual"] = residual_text(r);
    } else if (std::isnan(r.residual)) {
      c["residual"] = nullptr;
    } else {
      c["residual"] = r.residual;
    }
    c["tol"] = r.tol;
    c["comparison"] = r.lower_bound ? ">=" : "<=";
    c["arithmetic"] = r.arithmetic;
    if (!r.note.empty()) c["note"] = r.note;
    checks.push_back(std::move(c));
    (r.status == Status::pass ? passed : r.status == Status::fail ? failed : skipped)++;
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"total", results.size()}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
  j["passed"] = failed == 0;
  return j.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckResult>& results) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "suite,name,residual,tol,comparison,status,arithmetic\n";
  for (const auto& r : results) {
    char tol[32];
    std::snprintf(tol, sizeof tol, "%.3e", r.tol);
    os << r.suite << ',' << quote(r.name) << ',' << residual_text(r) << ',' << tol << ',' << (r.lower_bound ? ">=" : "<=")
       << ',' << to_string(r.status) << ',' << r.arithmetic << '\n';
  }
  return os.str();
}

}  // namespace cmr
