#include "cmr/constr.hpp"
#include "cmr/dynr.hpp"
#include "cmr/random.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cmr;

namespace {

const ModelCase kCases[] = {ModelCase::rational(), ModelCase::hyperbolic(1.0), ModelCase::trigonometric(1.0)};

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("AT") == Family::avan_talon);
  CHECK(parse_family("II") == Family::caseII);
  CHECK(to_string(Family::caseI) == "I");
  CHECK_THROWS_AS(parse_family("III"), ArgumentError);
}

TEST_CASE("root structure constants") {
  Root sum;
  CHECK(structure_constant(Root{1, 2}, Root{2, 3}, sum) == 1);
  CHECK(sum == Root{1, 3});
  CHECK(structure_constant(Root{2, 3}, Root{1, 2}, sum) == -1);
  CHECK(sum == Root{1, 3});
  CHECK(structure_constant(Root{1, 2}, Root{1, 3}, sum) == 0);
  // against explicit commutators
  for (const Root& a : roots(4))
    for (const Root& b : roots(4)) {
      const auto comm = commutator(root_E<Complex>(a, 4), root_E<Complex>(b, 4));
      const int c = structure_constant(a, b, sum);
      if (c == 0 || a == b.negated()) {
        if (!(a == b.negated())) CHECK(comm.is_zero());
      } else {
        CHECK(residual(comm, Complex(c) * root_E<Complex>(sum, 4)) == 0.0);
      }
    }
}

TEST_CASE("family solutions solve the component equations for any omega") {
  Sampler s(21);
  for (const auto& c : kCases)
    for (int n = 2; n <= 4; ++n)
      for (Family f : {Family::caseI, Family::caseII}) {
        const double omega = s.uniform(-2, 2);
        const auto u = family_solution(n, f, omega);
        CHECK(max_abs(eq33_defect(c, s.coordinates(c, n), u)) < 1e-10);
        CHECK(max_abs(eq33_normalized_defect(u)) < 1e-12);
      }
}

TEST_CASE("perturbed coefficients violate the component equations") {
  auto u = family_solution(3, Family::caseI, 0.25);
  u.b[0][1] += 0.1;
  CHECK(max_abs(eq33_normalized_defect(u)) > 1e-3);
  const auto c = ModelCase::hyperbolic(1.0);
  Sampler s(22);
  CHECK(max_abs(eq33_defect(c, s.coordinates(c, 3), u)) > 1e-4);
}

TEST_CASE("classification round-trips the family formulas") {
  for (int n = 2; n <= 4; ++n)
    for (Family f : {Family::caseI, Family::caseII})
      for (double omega : {-1.5, -1.0 / n, 0.0, 0.7}) {
        FamilyCount fc;
        REQUIRE(classify_solution(family_solution(n, f, omega), fc));
        CHECK(fc.family == f);
        CHECK(fc.omega == doctest::Approx(omega).epsilon(1e-12));
      }
  auto u = family_solution(3, Family::caseII, 0.4);
  u.C[0][0] += 1e-3;
  FamilyCount fc;
  CHECK_FALSE(classify_solution(u, fc));
}

TEST_CASE("case II is the adjoint dual of case I") {
  Sampler s(23);
  for (const auto& c : kCases)
    for (int n = 2; n <= 4; ++n) {
      const auto q = s.coordinates(c, n);
      const double omega = s.uniform(-2, 2);
      const auto rI = build_r_dynamical<Complex>(c, q, {Family::caseI, omega});
      const auto rII = build_r_dynamical<Complex>(c, q, {Family::caseII, omega});
      CHECK(residual(rII, -adjoint_factors(rI)) < 1e-12);
    }
}

TEST_CASE("dynamical r-matrices are q-dependent and not antisymmetric") {
  const auto c = ModelCase::rational();
  const auto r1 = build_r_dynamical<Complex>(c, {0.1, 0.5, 0.9}, {Family::caseI, 0.0});
  const auto r2 = build_r_dynamical<Complex>(c, {0.1, 0.6, 0.9}, {Family::caseI, 0.0});
  CHECK(residual(r1, r2) > 1e-3);
  CHECK(antisymmetry_residual(r1) > 1e-3);
  CHECK_THROWS_AS(build_r_dynamical<Complex>(c, {0.1, 0.1}, {Family::caseI, 0.0}), DomainError);
}

TEST_CASE("random-start probe finds only the two families") {
  const auto rep = appendixB_solve(2, ModelCase::hyperbolic(1.0), 120, 5);
  CHECK(rep.trials == 120);
  CHECK(rep.converged > 0);
  CHECK(rep.other == 0);
  int counted = 0;
  for (const auto& f : rep.families) counted += f.count;
  CHECK(counted == rep.converged);
  CHECK_THROWS_AS(appendixB_solve(5, ModelCase::rational(), 200, 1), ArgumentError);
  CHECK_THROWS_AS(appendixB_solve(2, ModelCase::rational(), 10, 1), ArgumentError);
}

TEST_CASE("probe results do not depend on the thread count") {
  const auto a = appendixB_solve(2, ModelCase::rational(), 100, 9, 1);
  const auto b = appendixB_solve(2, ModelCase::rational(), 100, 9, 4);
  CHECK(report_json(a) == report_json(b));
  const auto j = nlohmann::json::parse(report_json(a));
  CHECK(j.contains("families"));
}
