#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmr/constr.hpp"
#include "cmr/gauge.hpp"
#include "cmr/json_io.hpp"
#include "cmr/random.hpp"
#include "cmr/verify.hpp"

namespace {

using namespace cmr;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kind = "rational";
  double a = 1.0;
  int n = 0;
  double omega = 0.37;
  std::string family = "I";
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string mode = "float";
  int samples = 20;
  std::string format = "json";
  std::string out;
  std::string suite = "all";
  std::string object;
  std::string q;
  std::string p;
  bool random = false;
  double dt = 1e-3;
  std::size_t steps = 10000;
};

ModelCase model_of(const Options& o) {
  const Kind k = parse_kind(o.kind);
  if (!(o.a > 0.0)) throw UsageError("--a must be positive");
  switch (k) {
    case Kind::rational:
      return ModelCase::rational();
    case Kind::hyperbolic:
      return ModelCase::hyperbolic(o.a);
    case Kind::trigonometric:
      return ModelCase::trigonometric(o.a);
  }
  return ModelCase::rational();
}

bool exact_mode(const Options& o) {
  if (o.mode == "exact") {
    if (parse_kind(o.kind) != Kind::rational) throw UsageError("exact mode is only available for the rational case");
    return true;
  }
  return false;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

/// "p/q", integers, or decimals such as "-0.25".
Rational parse_exact(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_fraction(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("malformed number: " + text);
  if (digits.front() == '+') digits.erase(0, 1);
  std::string den = "1" + std::string(text.size() - dot - 1, '0');
  return parse_fraction(digits + "/" + den);
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + o.out);
  f << text;
}

// ---------------------------------------------------------------------------

int cmd_verify(const Options& o) {
  VerifyConfig cfg;
  cfg.model = model_of(o);
  cfg.n = o.n == 0 ? 3 : o.n;
  cfg.omega = o.omega;
  cfg.family = parse_family(o.family);
  cfg.seed = o.seed;
  cfg.tol = o.tol;
  cfg.exact = exact_mode(o);
  cfg.samples = o.samples;
  if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
  const auto results = run_verification(o.suite, cfg);
  write_output(o, o.format == "json" ? report_json(cfg, results) : report_csv(results));
  return all_passed(results) ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

template <class R>
PhasePoint<R> point_from_flags(const Options& o, const ModelCase& c, int& n) {
  PhasePoint<R> pt;
  if (o.random) {
    if (!o.q.empty() || !o.p.empty()) throw UsageError("--random excludes --q/--p");
    if (n == 0) n = 3;
    Sampler s(o.seed);
    if constexpr (std::is_same_v<R, Rational>) {
      return s.rational_phase_point(n);
    } else {
      return s.phase_point(c, n);
    }
  }
  if (o.q.empty()) throw UsageError("coordinates required: pass --q (and --p) or --random");
  for (const auto& x : split(o.q)) {
    if constexpr (std::is_same_v<R, Rational>) {
      pt.q.push_back(parse_exact(x));
    } else {
      pt.q.push_back(std::stod(x));
    }
  }
  if (o.p.empty()) {
    pt.p.assign(pt.q.size(), R(0));
  } else {
    for (const auto& x : split(o.p)) {
      if constexpr (std::is_same_v<R, Rational>) {
        pt.p.push_back(parse_exact(x));
      } else {
        pt.p.push_back(std::stod(x));
      }
    }
  }
  if (pt.p.size() != pt.q.size()) throw UsageError("--q and --p differ in length");
  if (n != 0 && static_cast<std::size_t>(n) != pt.q.size()) throw UsageError("--n disagrees with the number of coordinates");
  n = static_cast<int>(pt.q.size());
  require_admissible_point(c, pt);
  return pt;
}

std::string matrices_json(const std::vector<std::string>& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + "]";
}

template <class S>
std::string build_object(const Options& o) {
  using R = real_t<S>;
  const ModelCase c = model_of(o);
  int n = o.n;
  const std::string& obj = o.object;
  auto need_n = [&] {
    if (n == 0) n = 3;
    if (n < 2) throw UsageError("--n must be at least 2");
    return n;
  };
  R omega;
  if constexpr (is_exact_v<S>) {
    std::ostringstream os;
    os.precision(17);
    os << o.omega;
    omega = parse_exact(os.str());
  } else {
    omega = o.omega;
  }
  const RSpec<R> spec{parse_family(o.family), omega};
  auto out = [&](const Matrix<S>& m) { return matrix_to_json(m, n) + "\n"; };

  if (obj == "L") {
    const auto pt = point_from_flags<R>(o, c, n);
    return out(build_L<S>(c, pt));
  }
  if (obj == "r_dyn") {
    const auto pt = point_from_flags<R>(o, c, n);
    return out(build_r_dynamical<S>(c, pt.q, spec));
  }
  if (obj == "A") {
    const auto pt = point_from_flags<R>(o, c, n);
    std::vector<std::string> parts;
    for (const auto& a : build_A<S>(c, pt.q, spec)) parts.push_back(matrix_to_json(a, n));
    return matrices_json(parts) + "\n";
  }
  if (obj == "phi") {
    const auto pt = point_from_flags<R>(o, c, n);
    return out(build_phi<S>(c, pt.q).first);
  }
  if (obj == "chi") {
    const auto pt = point_from_flags<R>(o, c, n);
    return out(build_chi<S>(c, pt.q));
  }
  if (obj == "g") {
    const auto pt = point_from_flags<R>(o, c, n);
    return out(build_g<S>(c, pt.q, spec, Matrix<S>::identity(static_cast<std::size_t>(n))));
  }
  if (obj == "r_tilde_prime") return out(build_tilde_r_prime<S>(c, need_n()));
  if (obj == "r_prime") {
    need_n();
    return out(build_r_prime<S>(c, n, ScalarTraits<S>::from_real(omega), Matrix<S>::identity(static_cast<std::size_t>(n))));
  }
  if (obj == "b_gln") return out(build_b_gln<S>(need_n()));
  if (obj == "X") return out(build_X<S>(c, need_n()));
  if (obj == "r_cg") return out(build_r_cg<S>(need_n()));
  if (obj == "b_cg_plus") return out(build_b_cg_plus<S>(need_n()));
  if (obj == "b_cg_minus") return out(apply_sigma_sigma(build_b_cg_plus<S>(need_n())));
  if (obj == "Fhat") return out(build_Fhat<S>(need_n()));
  throw UsageError("unknown object: " + obj);
}

int cmd_build(const Options& o) {
  if (o.format != "json") throw UsageError("build writes json only");
  const std::string text = exact_mode(o) ? build_object<GaussRational>(o) : build_object<Complex>(o);
  write_output(o, text);
  return kExitPass;
}

// ---------------------------------------------------------------------------

int cmd_evolve(const Options& o) {
  if (exact_mode(o)) throw UsageError("evolve runs in floating point only");
  if (!(o.dt > 0.0)) throw UsageError("--dt must be positive");
  const ModelCase c = model_of(o);
  int n = o.n;
  const auto start = point_from_flags<double>(o, c, n);
  std::vector<PhasePoint<double>> traj;
  int code = kExitPass;
  try {
    traj = evolve(c, start, o.dt, o.steps);
  } catch (const EvolutionError& e) {
    std::cerr << "cmr evolve: " << e.what() << "\n";
    traj = evolve(c, start, o.dt, e.last_valid_step());
    code = kExitFail;
  }
  write_output(o, trajectory_csv(c, traj, o.dt));

  const auto inv0 = trace_invariants(build_L<Complex>(c, traj.front()), 3);
  double p0 = 0.0;
  for (double x : traj.front().p) p0 += x;
  const double h0 = hamiltonian(c, traj.front());
  double d2 = 0.0, d3 = 0.0, dh = 0.0, dp = 0.0;
  for (const auto& pt : traj) {
    const auto inv = trace_invariants(build_L<Complex>(c, pt), 3);
    double ps = 0.0;
    for (double x : pt.p) ps += x;
    d2 = std::max(d2, std::abs(inv[1] - inv0[1]));
    d3 = std::max(d3, std::abs(inv[2] - inv0[2]));
    dh = std::max(dh, std::abs(hamiltonian(c, pt) - h0));
    dp = std::max(dp, std::abs(ps - p0));
  }
  std::fprintf(stderr, "steps=%zu max drift: trL2=%.3e trL3=%.3e h=%.3e sum_p=%.3e\n", traj.size() - 1, d2, d3, dh, dp);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calogero-Moser r-matrix toolkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--case", o.kind, "rational | hyperbolic | trigonometric")
        ->check(CLI::IsMember({"rational", "hyperbolic", "trigonometric"}));
    sub->add_option("--a", o.a, "coupling a > 0");
    sub->add_option("--n", o.n, "number of particles")->check(CLI::Range(2, 64));
    sub->add_option("--omega", o.omega, "parameter Omega");
    sub->add_option("--family", o.family, "I | II | AT")->check(CLI::IsMember({"I", "II", "AT"}));
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--mode", o.mode, "float | exact")->check(CLI::IsMember({"float", "exact"}));
    sub->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "output path (default stdout)");
  };

  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify);
  verify->add_option("--suite", o.suite, "suite name or all");
  verify->add_option("--tol", o.tol, "override every tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--samples", o.samples, "random points per check")->check(CLI::Range(1, 1000000));

  auto* build = app.add_subcommand("build", "export an object as json");
  common(build);
  build->add_option("object", o.object, "L r_dyn A phi chi g r_tilde_prime r_prime b_gln X r_cg b_cg_plus b_cg_minus Fhat")
      ->required();
  build->add_option("--q", o.q, "comma-separated coordinates");
  build->add_option("--p", o.p, "comma-separated momenta");
  build->add_flag("--random", o.random, "sample the phase point from --seed");

  auto* ev = app.add_subcommand("evolve", "integrate the flow with RK4 and write csv");
  common(ev);
  ev->add_option("--q", o.q, "comma-separated coordinates");
  ev->add_option("--p", o.p, "comma-separated momenta");
  ev->add_flag("--random", o.random, "sample the initial point from --seed");
  ev->add_option("--dt", o.dt, "time step");
  ev->add_option("--steps", o.steps, "number of steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(o);
    if (build->parsed()) return cmd_build(o);
    if (ev->parsed()) return cmd_evolve(o);
  } catch (const UsageError& e) {
    std::cerr << "cmr: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "cmr: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "cmr: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cmr: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cmr: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
