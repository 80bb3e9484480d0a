#pragma once

// Textbook Cardano reduction, kept independent of fe_solver so the two can be
// checked against each other.
//
//   x = y - b/3   turns the monic cubic into   y^3 + p y + q
//   p = c - b^2/3,   q = d - bc/3 + 2b^3/27
//   R = (p/3)^3 + (q/2)^2
//   A = cbrt(-q/2 + sqrt(R)),   B = cbrt(-q/2 - sqrt(R)),   A*B = -p/3
//   y1 = A + B,   y2 = wA + w^2 B,   y3 = wB + w^2 A

#include <complex>
#include <numbers>
#include <utility>

#include "cubicfe/polynomial.hpp"
#include "cubicfe/root_set.hpp"

namespace cubicfe {

/// Primitive cube root of unity, -1/2 + (sqrt(3)/2) i.
inline constexpr std::complex<double> kOmega{-0.5, 0.5 * std::numbers::sqrt3};

struct DepressedCubic {
  double p = 0.0;
  double q = 0.0;
};

struct CardanoRadicals {
  std::complex<double> a;
  std::complex<double> b;
  double discriminant = 0.0;  // (p/3)^3 + (q/2)^2
};

/// Normalizes to monic, then returns (p, q) and the shift -b/(3a) that maps
/// depressed roots back to the original variable.
std::pair<DepressedCubic, double> depress(const Cubic& f);

/// A is the principal complex cube root (argument in (-pi/3, pi/3]) of
/// whichever of -q/2 +- sqrt(R) has the larger modulus; B = -p/(3A). When
/// A == 0, B is the cube root of the other radicand.
CardanoRadicals cardano_radicals(const DepressedCubic& dc);

/// Principal complex cube root.
std::complex<double> principal_cbrt(std::complex<double> z);

/// Roots through the radicals and the cube roots of unity. Imaginary parts
/// below 1e-9 of the root scale are snapped to zero and the classification is
/// read off the root geometry.
RootSet solve_classic(const Cubic& f);

}  // namespace cubicfe
