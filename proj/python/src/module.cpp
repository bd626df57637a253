#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmr/constr.hpp"
#include "cmr/gauge.hpp"
#include "cmr/verify.hpp"

namespace py = pybind11;
using namespace cmr;

namespace {

ModelCase model(const std::string& kind, double a) {
  if (!(a > 0.0)) throw ArgumentError("a must be positive");
  return {parse_kind(kind), a};
}

py::array_t<Complex> to_numpy(const CMatrix& m) {
  py::array_t<Complex> out({m.rows(), m.cols()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j);
  return out;
}

CMatrix from_numpy(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw ArgumentError("expected a 2-d array");
  CMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto v = a.unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = v(i, j);
  return m;
}

PhasePoint<double> point(const ModelCase& c, const std::vector<double>& q, const std::vector<double>& p) {
  PhasePoint<double> pt{q, p.empty() ? std::vector<double>(q.size(), 0.0) : p};
  if (pt.p.size() != pt.q.size()) throw ArgumentError("q and p differ in length");
  require_admissible_point(c, pt);
  return pt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Calogero-Moser Lax matrices, dynamical r-matrices and their gauge transforms";
  py::register_exception<EvolutionError>(m, "EvolutionError", PyExc_RuntimeError);

  m.def(
      "build_L", [](const std::string& kind, const std::vector<double>& q, const std::vector<double>& p, double a) {
        const auto c = model(kind, a);
        return to_numpy(build_L<Complex>(c, point(c, q, p)));
      },
      py::arg("kind"), py::arg("q"), py::arg("p") = std::vector<double>{}, py::arg("a") = 1.0);

  m.def(
      "hamiltonian",
      [](const std::string& kind, const std::vector<double>& q, const std::vector<double>& p, double a) {
        const auto c = model(kind, a);
        return hamiltonian(c, point(c, q, p));
      },
      py::arg("kind"), py::arg("q"), py::arg("p"), py::arg("a") = 1.0);

  m.def(
      "r_dynamical",
      [](const std::string& kind, const std::vector<double>& q, const std::string& family, double omega, double a) {
        const auto c = model(kind, a);
        point(c, q, {});
        return to_numpy(build_r_dynamical<Complex>(c, q, {parse_family(family), omega}));
      },
      py::arg("kind"), py::arg("q"), py::arg("family") = "I", py::arg("omega") = 0.37, py::arg("a") = 1.0);

  m.def(
      "gauge",
      [](const std::string& kind, const std::vector<double>& q, const std::string& family, double omega, double a) {
        const auto c = model(kind, a);
        point(c, q, {});
        return to_numpy(build_g<Complex>(c, q, {parse_family(family), omega}, CMatrix::identity(q.size())));
      },
      py::arg("kind"), py::arg("q"), py::arg("family") = "I", py::arg("omega") = 0.37, py::arg("a") = 1.0);

  m.def(
      "r_tilde_prime", [](const std::string& kind, int n, double a) { return to_numpy(build_tilde_r_prime<Complex>(model(kind, a), n)); },
      py::arg("kind"), py::arg("n"), py::arg("a") = 1.0);

  m.def(
      "r_prime",
      [](const std::string& kind, int n, double omega, double a) {
        return to_numpy(build_r_prime<Complex>(model(kind, a), n, Complex(omega), CMatrix::identity(static_cast<std::size_t>(n))));
      },
      py::arg("kind"), py::arg("n"), py::arg("omega") = 0.37, py::arg("a") = 1.0);

  m.def(
      "X", [](const std::string& kind, int n, double a) { return to_numpy(build_X<Complex>(model(kind, a), n)); }, py::arg("kind"),
      py::arg("n"), py::arg("a") = 1.0);

  m.def(
      "cybe_residual",
      [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& r, const std::string& kind, double a) {
        return cybe_residual(from_numpy(r), model(kind, a));
      },
      py::arg("r"), py::arg("kind"), py::arg("a") = 1.0);

  m.def(
      "evolve",
      [](const std::string& kind, const std::vector<double>& q, const std::vector<double>& p, double dt, std::size_t steps, double a) {
        const auto c = model(kind, a);
        const auto traj = evolve(c, point(c, q, p), dt, steps);
        const auto n = q.size();
        py::array_t<double> qs({traj.size(), n}), ps({traj.size(), n});
        auto qv = qs.mutable_unchecked<2>();
        auto pv = ps.mutable_unchecked<2>();
        for (std::size_t t = 0; t < traj.size(); ++t)
          for (std::size_t k = 0; k < n; ++k) {
            qv(t, k) = traj[t].q[k];
            pv(t, k) = traj[t].p[k];
          }
        return py::make_tuple(qs, ps);
      },
      py::arg("kind"), py::arg("q"), py::arg("p"), py::arg("dt") = 1e-3, py::arg("steps") = 1000, py::arg("a") = 1.0);

  m.def(
      "verify_json",
      [](const std::string& suite, const std::string& kind, int n, double a, double omega, const std::string& family, std::uint64_t seed,
         std::optional<double> tol, bool exact, int samples, unsigned threads) {
        VerifyConfig cfg;
        cfg.model = model(kind, a);
        cfg.n = n;
        cfg.omega = omega;
        cfg.family = parse_family(family);
        cfg.seed = seed;
        cfg.tol = tol;
        cfg.exact = exact;
        cfg.samples = samples;
        cfg.threads = threads;
        std::vector<CheckResult> results;
        {
          py::gil_scoped_release release;
          results = run_verification(suite, cfg);
        }
        return report_json(cfg, results);
      },
      py::arg("suite") = "all", py::arg("kind") = "rational", py::arg("n") = 3, py::arg("a") = 1.0, py::arg("omega") = 0.37,
      py::arg("family") = "I", py::arg("seed") = 1, py::arg("tol") = py::none(), py::arg("exact") = false, py::arg("samples") = 20,
      py::arg("threads") = 0);

  m.attr("suites") = suite_names();
}
