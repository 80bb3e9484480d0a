#include "cubicfe/classic_solver.hpp"

#include <cmath>

namespace cubicfe {

std::pair<DepressedCubic, double> depress(const Cubic& f) {
  const double b = f.b() / f.a();
  const double c = f.c() / f.a();
  const double d = f.d() / f.a();
  DepressedCubic dc;
  dc.p = c - b * b / 3.0;
  dc.q = d - b * c / 3.0 + 2.0 * b * b * b / 27.0;
  return {dc, -f.b() / (3.0 * f.a())};
}

std::complex<double> principal_cbrt(std::complex<double> z) {
  if (z.imag() == 0.0) {
    if (z.real() >= 0.0) return {std::cbrt(z.real()), 0.0};
    // Negative real axis: argument pi maps to pi/3.
    const double m = std::cbrt(-z.real());
    return {0.5 * m, 0.5 * std::numbers::sqrt3 * m};
  }
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

CardanoRadicals cardano_radicals(const DepressedCubic& dc) {
  CardanoRadicals out;
  const double p3 = dc.p / 3.0;
  const double q2 = dc.q / 2.0;
  out.discriminant = p3 * p3 * p3 + q2 * q2;

  const std::complex<double> root_r = std::sqrt(std::complex<double>(out.discriminant, 0.0));
  std::complex<double> plus = -q2 + root_r;
  std::complex<double> minus = -q2 - root_r;
  if (std::abs(minus) > std::abs(plus)) std::swap(plus, minus);

  out.a = principal_cbrt(plus);
  out.b = out.a != 0.0 ? -p3 / out.a : principal_cbrt(minus);
  return out;
}

RootSet solve_classic(const Cubic& f) {
  const auto [dc, shift] = depress(f);
  const auto rad = cardano_radicals(dc);
  const auto w = kOmega;
  const auto w2 = std::conj(kOmega);

  RootSet rs;
  rs.roots = {ComplexRoot::from(rad.a + rad.b + shift), ComplexRoot::from(w * rad.a + w2 * rad.b + shift),
              ComplexRoot::from(w * rad.b + w2 * rad.a + shift)};
  rs.classification = classify_by_geometry(rs.roots);
  order_for_output(rs.roots, rs.classification);
  for (std::size_t i = 0; i < 3; ++i) rs.residuals[i] = normalized_residual(f, rs.roots[i]);
  return rs;
}

}  // namespace cubicfe
