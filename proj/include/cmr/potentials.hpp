#pragma once

#include <array>
#include <string>

#include "cmr/scalar.hpp"

namespace cmr {

enum class Kind { rational, hyperbolic, trigonometric };

std::string to_string(Kind k);
Kind parse_kind(const std::string& s);

/// One of the three degenerate potentials with its coupling a > 0.
struct ModelCase {
  Kind kind = Kind::rational;
  double a = 1.0;

  static ModelCase rational() { return {Kind::rational, 1.0}; }
  static ModelCase hyperbolic(double a) { return {Kind::hyperbolic, a}; }
  static ModelCase trigonometric(double a) { return {Kind::trigonometric, a}; }

  /// 𝓑 ∈ {0, a², −a²}
  double B() const;
  /// a′ with a′² = 𝓑: a (hyperbolic), i·a (trigonometric). Throws for rational.
  Complex a_prime() const;
  /// 𝓑 as an integer when exact arithmetic needs it (rational: 0).
  long B_int() const;
};

/// Rejection threshold for |w argument| and |sin(a·x)| in float mode.
inline constexpr double kDomainTolerance = 1e-9;

bool admissible(const ModelCase& c, double x);
void require_admissible(const ModelCase& c, double x);

double eval_v(const ModelCase& c, double x);
double eval_w(const ModelCase& c, double x);
double eval_F(const ModelCase& c, double x);
/// w′ = −F·w
double eval_dw(const ModelCase& c, double x);
/// v′ = −2F·w²
double eval_dv(const ModelCase& c, double x);

// Extended-precision overloads; admissibility is judged on the rounded argument.
QuadReal eval_w(const ModelCase& c, const QuadReal& x);
QuadReal eval_F(const ModelCase& c, const QuadReal& x);
QuadReal eval_dw(const ModelCase& c, const QuadReal& x);

// Exact overloads exist only for the rational potential.
Rational eval_v(const ModelCase& c, const Rational& x);
Rational eval_w(const ModelCase& c, const Rational& x);
Rational eval_F(const ModelCase& c, const Rational& x);
Rational eval_dw(const ModelCase& c, const Rational& x);

/// Residuals of F′ = −w², F(x)+F(y) = w(x)w(y)/w(x+y) and
/// F(x−y)(F(x)−F(y)) + F(x)F(y) = 𝓑, each divided by max(1, size of the
/// largest term).
struct IdentityResiduals {
  double derivative = 0.0;
  double addition = 0.0;
  double three_term = 0.0;
};

/// F′ is taken by central differences with step h.
IdentityResiduals check_identities(const ModelCase& c, double x, double y, double h = 1e-5);

/// Exact residuals for the rational case; the derivative identity uses the
/// closed form F′ = −1/x².
std::array<Rational, 3> check_identities_exact(const ModelCase& c, const Rational& x, const Rational& y);

}  // namespace cmr
