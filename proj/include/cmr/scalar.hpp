#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <gmpxx.h>

namespace cmr {

using Complex = std::complex<double>;
using Rational = mpq_class;

/// Exact complex number with arbitrary-precision rational real and imaginary parts.
class GaussRational {
public:
  GaussRational() = default;
  GaussRational(long v) : re_(v) {}  // NOLINT: implicit from integers is intended
  GaussRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
    if (sgn(o.im_) == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    const Rational d = o.norm();
    Rational re = (re_ * o.re_ + im_ * o.im_) / d;
    Rational im = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

private:
  Rational re_{0};
  Rational im_{0};
};

/// Per-field properties used by the generic matrix code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "c64";
  static Complex from_real(double x) { return {x, 0.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex imag_unit() { return {0.0, 1.0}; }
  static bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
  static double magnitude(const Complex& z) { return std::abs(z); }
  static double abs2(const Complex& z) { return std::norm(z); }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static Complex to_complex(const Complex& z) { return z; }
};

/// Extended precision (113-bit mantissa) used where double-precision
/// conjugations lose too many digits.
using QuadReal = boost::multiprecision::cpp_bin_float_quad;
using QuadComplex = boost::multiprecision::cpp_complex_quad;

template <>
struct ScalarTraits<QuadComplex> {
  using Real = QuadReal;
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "c128";
  static QuadComplex from_real(const QuadReal& x) { return QuadComplex(x); }
  static QuadComplex from_int(long v) { return QuadComplex(v); }
  static QuadComplex imag_unit() { return QuadComplex(0, 1); }
  static bool is_zero(const QuadComplex& z) { return z.real() == 0 && z.imag() == 0; }
  static double magnitude(const QuadComplex& z) { return static_cast<double>(abs(z)); }
  static double abs2(const QuadComplex& z) {
    return static_cast<double>(QuadReal(z.real() * z.real() + z.imag() * z.imag()));
  }
  static QuadComplex conj(const QuadComplex& z) { return QuadComplex(z.real(), -z.imag()); }
  static Complex to_complex(const QuadComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
};

template <>
struct ScalarTraits<GaussRational> {
  using Real = Rational;
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";
  static GaussRational from_real(const Rational& x) { return GaussRational(x); }
  static GaussRational from_int(long v) { return GaussRational(v); }
  static GaussRational imag_unit() { return {Rational(0), Rational(1)}; }
  static bool is_zero(const GaussRational& z) { return z.is_zero(); }
  static double magnitude(const GaussRational& z) { return std::sqrt(z.norm().get_d()); }
  static double abs2(const GaussRational& z) { return z.norm().get_d(); }
  static GaussRational conj(const GaussRational& z) { return z.conj(); }
  static Complex to_complex(const GaussRational& z) { return z.to_complex(); }
};

template <class S>
using real_t = typename ScalarTraits<S>::Real;

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

/// Serializes a rational as "p/q" (the denominator is always written).
inline std::string to_fraction_string(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p/q" or "p"; throws std::invalid_argument on malformed text.
inline Rational parse_fraction(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed fraction: " + s);
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

}  // namespace cmr
