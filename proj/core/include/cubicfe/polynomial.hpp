#pragma once

#include <array>
#include <complex>
#include <span>
#include <stdexcept>

namespace cubicfe {

/// Thrown when the leading coefficient of a cubic or quadratic is zero.
/// Callers that want to fall back to a lower degree catch this one.
class NotCubicError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when any coefficient is infinite or NaN.
class NonFiniteCoefficientError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One root of a real polynomial, possibly complex.
struct ComplexRoot {
  double re = 0.0;
  double im = 0.0;

  [[nodiscard]] std::complex<double> value() const { return {re, im}; }
  [[nodiscard]] bool is_real() const { return im == 0.0; }
  static ComplexRoot from(std::complex<double> z) { return {z.real(), z.imag()}; }

  friend bool operator==(const ComplexRoot&, const ComplexRoot&) = default;
};

/// a*x^3 + b*x^2 + c*x + d with a != 0 and every coefficient finite.
class Cubic {
 public:
  Cubic(double a, double b, double c, double d);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] double d() const { return d_; }

  /// {a, b, c, d}
  [[nodiscard]] std::array<double, 4> descending() const { return {a_, b_, c_, d_}; }
  /// {d, c, b, a}
  [[nodiscard]] std::array<double, 4> ascending() const { return {d_, c_, b_, a_}; }

  /// max(|a|, |b|, |c|, |d|)
  [[nodiscard]] double coefficient_scale() const;

  friend bool operator==(const Cubic&, const Cubic&) = default;

 private:
  double a_, b_, c_, d_;
};

/// a*x^2 + b*x + c with a != 0 and every coefficient finite.
class Quadratic {
 public:
  Quadratic(double a, double b, double c);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double c() const { return c_; }

  [[nodiscard]] std::array<double, 3> descending() const { return {a_, b_, c_}; }
  [[nodiscard]] double coefficient_scale() const;

  friend bool operator==(const Quadratic&, const Quadratic&) = default;

 private:
  double a_, b_, c_;
};

/// The inflection abscissa z (where f''(z) = 0) together with f(z)/a and
/// f'(z)/a. Every closed-form formula downstream reads only these three
/// numbers, so the monic case is assumed from here on.
struct EvalPoint {
  double z = 0.0;
  double fz = 0.0;
  double fpz = 0.0;
};

// Horner evaluation.
double eval(const Cubic& f, double x);
std::complex<double> eval(const Cubic& f, std::complex<double> x);
double eval(const Quadratic& f, double x);

/// 3a*x^2 + 2b*x + c
double eval_derivative(const Cubic& f, double x);
std::complex<double> eval_derivative(const Cubic& f, std::complex<double> x);

/// Horner evaluation of an arbitrary coefficient vector given in ascending
/// powers. An empty span evaluates to zero.
double eval_ascending(std::span<const double> coefficients, double x);

/// z = -b/(3a), fz = f(z)/a, fpz = f'(z)/a.
EvalPoint inflection_point(const Cubic& f);

/// g(x) = f(x + h). The coefficients of g are the Taylor coefficients of f at
/// h: a, f''(h)/2, f'(h), f(h).
Cubic shift(const Cubic& f, double h);

/// |f(x)| / (coefficient_scale * max(1, |x|)^3)
double normalized_residual(const Cubic& f, ComplexRoot x);

}  // namespace cubicfe
