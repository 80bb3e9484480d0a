#include "cubicfe/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace cubicfe {

namespace {

void require_finite(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFiniteCoefficientError("polynomial coefficients must be finite");
  }
}

}  // namespace

Cubic::Cubic(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  require_finite({a, b, c, d});
  if (a == 0.0) throw NotCubicError("leading coefficient of a cubic must be nonzero");
}

double Cubic::coefficient_scale() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

Quadratic::Quadratic(double a, double b, double c) : a_(a), b_(b), c_(c) {
  require_finite({a, b, c});
  if (a == 0.0) throw NotCubicError("leading coefficient of a quadratic must be nonzero");
}

double Quadratic::coefficient_scale() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_)});
}

double eval(const Cubic& f, double x) { return ((f.a() * x + f.b()) * x + f.c()) * x + f.d(); }

std::complex<double> eval(const Cubic& f, std::complex<double> x) {
  return ((f.a() * x + f.b()) * x + f.c()) * x + f.d();
}

double eval(const Quadratic& f, double x) { return (f.a() * x + f.b()) * x + f.c(); }

double eval_derivative(const Cubic& f, double x) {
  return (3.0 * f.a() * x + 2.0 * f.b()) * x + f.c();
}

std::complex<double> eval_derivative(const Cubic& f, std::complex<double> x) {
  return (3.0 * f.a() * x + 2.0 * f.b()) * x + f.c();
}

double eval_ascending(std::span<const double> coefficients, double x) {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

EvalPoint inflection_point(const Cubic& f) {
  const double z = -f.b() / (3.0 * f.a());
  // Fused Horner: one rounding per step.
  const double fz = std::fma(std::fma(std::fma(f.a(), z, f.b()), z, f.c()), z, f.d());
  const double fpz = std::fma(std::fma(3.0 * f.a(), z, 2.0 * f.b()), z, f.c());
  return {z, fz / f.a(), fpz / f.a()};
}

Cubic shift(const Cubic& f, double h) {
  const double second = 3.0 * f.a() * h + f.b();
  return Cubic(f.a(), second, eval_derivative(f, h), eval(f, h));
}

double normalized_residual(const Cubic& f, ComplexRoot x) {
  const double mag = std::max(1.0, std::abs(x.value()));
  return std::abs(eval(f, x.value())) / (f.coefficient_scale() * mag * mag * mag);
}

}  // namespace cubicfe
