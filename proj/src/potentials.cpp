#include "cmr/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "cmr/errors.hpp"

namespace cmr {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::rational:
      return "rational";
    case Kind::hyperbolic:
      return "hyperbolic";
    case Kind::trigonometric:
      return "trigonometric";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "rational") return Kind::rational;
  if (s == "hyperbolic") return Kind::hyperbolic;
  if (s == "trigonometric") return Kind::trigonometric;
  throw ArgumentError("unknown case '" + s + "'");
}

double ModelCase::B() const {
  switch (kind) {
    case Kind::rational:
      return 0.0;
    case Kind::hyperbolic:
      return a * a;
    case Kind::trigonometric:
      return -a * a;
  }
  return 0.0;
}

Complex ModelCase::a_prime() const {
  switch (kind) {
    case Kind::hyperbolic:
      return {a, 0.0};
    case Kind::trigonometric:
      return {0.0, a};
    case Kind::rational:
      break;
  }
  throw UnsupportedCaseError("a' is undefined for the rational case");
}

long ModelCase::B_int() const {
  const double b = B();
  if (b != std::round(b)) throw ArgumentError("B is not an integer for a = " + std::to_string(a));
  return static_cast<long>(b);
}

bool admissible(const ModelCase& c, double x) {
  if (!std::isfinite(x) || std::abs(x) < kDomainTolerance) return false;
  if (c.kind == Kind::trigonometric) return std::abs(std::sin(c.a * x)) >= kDomainTolerance;
  return true;
}

void require_admissible(const ModelCase& c, double x) {
  if (!admissible(c, x))
    throw DomainError(to_string(c.kind) + " potential: argument " + std::to_string(x) + " is not admissible");
}

double eval_w(const ModelCase& c, double x) {
  require_admissible(c, x);
  switch (c.kind) {
    case Kind::rational:
      return 1.0 / x;
    case Kind::hyperbolic:
      return c.a / std::sinh(c.a * x);
    case Kind::trigonometric:
      return c.a / std::sin(c.a * x);
  }
  return 0.0;
}

double eval_v(const ModelCase& c, double x) {
  const double w = eval_w(c, x);
  return w * w;
}

double eval_F(const ModelCase& c, double x) {
  require_admissible(c, x);
  switch (c.kind) {
    case Kind::rational:
      return 1.0 / x;
    case Kind::hyperbolic:
      return c.a / std::tanh(c.a * x);
    case Kind::trigonometric:
      return c.a / std::tan(c.a * x);
  }
  return 0.0;
}

QuadReal eval_w(const ModelCase& c, const QuadReal& x) {
  require_admissible(c, static_cast<double>(x));
  const QuadReal a(c.a);
  switch (c.kind) {
    case Kind::rational:
      return 1 / x;
    case Kind::hyperbolic:
      return a / sinh(a * x);
    case Kind::trigonometric:
      return a / sin(a * x);
  }
  return 0;
}

QuadReal eval_F(const ModelCase& c, const QuadReal& x) {
  require_admissible(c, static_cast<double>(x));
  const QuadReal a(c.a);
  switch (c.kind) {
    case Kind::rational:
      return 1 / x;
    case Kind::hyperbolic:
      return a / tanh(a * x);
    case Kind::trigonometric:
      return a / tan(a * x);
  }
  return 0;
}

QuadReal eval_dw(const ModelCase& c, const QuadReal& x) { return -eval_F(c, x) * eval_w(c, x); }

double eval_dw(const ModelCase& c, double x) { return -eval_F(c, x) * eval_w(c, x); }

double eval_dv(const ModelCase& c, double x) { return -2.0 * eval_F(c, x) * eval_v(c, x); }

namespace {

void require_exact_rational(const ModelCase& c, const Rational& x) {
  if (c.kind != Kind::rational) throw ArgumentError("exact arithmetic is only available for the rational case");
  if (sgn(x) == 0) throw DomainError("rational potential: argument 0 is not admissible");
}

}  // namespace

Rational eval_w(const ModelCase& c, const Rational& x) {
  require_exact_rational(c, x);
  return Rational(1) / x;
}

Rational eval_v(const ModelCase& c, const Rational& x) {
  const Rational w = eval_w(c, x);
  return w * w;
}

Rational eval_F(const ModelCase& c, const Rational& x) { return eval_w(c, x); }

Rational eval_dw(const ModelCase& c, const Rational& x) { return -eval_F(c, x) * eval_w(c, x); }

IdentityResiduals check_identities(const ModelCase& c, double x, double y, double h) {
  for (double arg : {x, y, x + y, x - y}) require_admissible(c, arg);
  IdentityResiduals r;
  const double Fx = eval_F(c, x);
  const double Fy = eval_F(c, y);
  const double dF = (eval_F(c, x + h) - eval_F(c, x - h)) / (2.0 * h);
  const double v = eval_v(c, x);
  r.derivative = std::abs(dF + v) / std::max(1.0, v);
  const double wxy = eval_w(c, x) * eval_w(c, y) / eval_w(c, x + y);
  r.addition = std::abs(Fx + Fy - wxy) / std::max({1.0, std::abs(Fx) + std::abs(Fy), std::abs(wxy)});
  const double t1 = eval_F(c, x - y) * (Fx - Fy);
  const double t2 = Fx * Fy;
  r.three_term = std::abs(t1 + t2 - c.B()) / std::max({1.0, std::abs(t1), std::abs(t2), std::abs(c.B())});
  return r;
}

std::array<Rational, 3> check_identities_exact(const ModelCase& c, const Rational& x, const Rational& y) {
  for (const Rational& arg : {x, y, Rational(x + y), Rational(x - y)}) require_exact_rational(c, arg);
  const Rational dF = -Rational(1) / (x * x);
  Rational r1 = dF + eval_v(c, x);
  Rational r2 = eval_F(c, x) + eval_F(c, y) - eval_w(c, x) * eval_w(c, y) / eval_w(c, x + y);
  Rational r3 = eval_F(c, x - y) * (eval_F(c, x) - eval_F(c, y)) + eval_F(c, x) * eval_F(c, y);
  return {abs(r1), abs(r2), abs(r3)};
}

}  // namespace cmr
