#include "cmr/constr.hpp"

namespace cmr {

std::vector<Quadruple> enumerate_S(int n) {
  std::vector<Quadruple> out;
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d)
          if (a + c + 1 == b + d && b <= a && a < n && b <= c && c < n) out.push_back({a, b, c, d});
  return out;
}

CMatrix cg_g0(const ModelCase& c, int n) {
  const Complex ap = c.a_prime();
  CMatrix J0, Jp, Jm;
  principal_sl2(n, J0, Jp, Jm);
  return expm_nilpotent(CMatrix(Jm.transpose() * (-ap / 2.0))) * expm_nilpotent(CMatrix(Jp.transpose() * (1.0 / ap)));
}

CMatrix cg_conjugation_defect(const ModelCase& c, int n) {
  const Complex ap = c.a_prime();
  const auto s = build_cg_suite<Complex>(n);
  const CMatrix um = expm_nilpotent(CMatrix(s.Jminus * (ap / 2.0)));
  const CMatrix up = expm_nilpotent(CMatrix(s.Jplus * (-1.0 / ap)));
  const CMatrix u = um * up;
  const CMatrix lhs = conjugate(transpose_factors(build_tilde_r_prime_sl<Complex>(c, n)), u);
  return lhs - ap * s.r_cg;
}

CMatrix cg_standard_form_defect(const ModelCase& c, int n, double omega) {
  const Complex ap = c.a_prime();
  const auto s = build_cg_suite<Complex>(n);
  const CMatrix rp = build_r_prime<Complex>(c, n, Complex(omega, 0.0), cg_g0(c, n));
  const Complex coef = 2.0 * (omega + 1.0 / n);
  const CMatrix target = ap * transpose_factors(CMatrix(s.r_cg + coef * wedge(s.J0, unit<Complex>(n))));
  return rp - target;
}

std::vector<NamedResidual> verify_cg_relations(const ModelCase& c, int n, double omega) {
  const auto s = build_cg_suite<Complex>(n);
  auto out = cg_module_relations(s);
  {
    const auto d = key_relation_defect<Complex>(c, n);
    out.push_back({"key relation", frobenius_norm(d), d.is_zero()});
  }
  if (c.kind == Kind::rational) {
    const std::string why = "a' is undefined for the rational case";
    out.push_back({"u-u+ conjugation", 0.0, false, true, why});
    out.push_back({"standard form", 0.0, false, true, why});
    return out;
  }
  out.push_back({"u-u+ conjugation", frobenius_norm(cg_conjugation_defect(c, n))});
  out.push_back({"standard form", frobenius_norm(cg_standard_form_defect(c, n, omega))});
  return out;
}

std::vector<NamedResidual> verify_cg_relations_exact(const ModelCase& c, int n) {
  const auto s = build_cg_suite<GaussRational>(n);
  auto out = cg_module_relations(s);
  const auto d = key_relation_defect<GaussRational>(c, n);
  out.push_back({"key relation", frobenius_norm(d), d.is_zero()});
  return out;
}

}  // namespace cmr
