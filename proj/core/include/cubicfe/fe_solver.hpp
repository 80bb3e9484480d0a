#pragma once

// Closed-form cubic solver driven entirely by function evaluation.
//
// A cubic is reduced to three numbers taken at its inflection point z:
// z itself, f(z)/a and f'(z)/a. From those,
//
//   Q = f'(z) / (3a),   R = -f(z) / (2a),   D = Q^3 + R^2
//
// and the roots are
//
//   D < 0   x_k = z + 2 sqrt(-Q) cos((theta + 2 pi k) / 3),
//           theta = acos(R / sqrt(-Q^3))
//   D > 0   x_1 = z + B,  B = cbrt(R + sqrt(D)) + cbrt(R - sqrt(D))
//           x_2,3 = z - B/2 +- i (sqrt(3)/2) sqrt(B^2 + 4Q)
//   D = 0   x_1 = z + 2 cbrt(R),  x_2 = x_3 = z - cbrt(R)
//
// The coefficients never appear again once the EvalPoint has been formed.

#include <array>
#include <stdexcept>

#include "cubicfe/polynomial.hpp"
#include "cubicfe/root_set.hpp"

namespace cubicfe {

/// A solution path was invoked on invariants outside its domain.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ReducedInvariants {
  double q = 0.0;             // f'(z) / (3a)
  double r = 0.0;             // -f(z) / (2a)
  double discriminant = 0.0;  // q^3 + r^2
};

struct SolveOptions {
  bool polish = true;
  /// Relative width of the band around D = 0 treated as a repeated root.
  double tol_d = 1e-12;
  /// Normalized residual above which a root is reported as inaccurate.
  double residual_tol = 1e-10;
};

/// Everything the solver computed on the way to the roots.
struct Solution {
  EvalPoint point;
  ReducedInvariants invariants;
  /// Trigonometric angle, set on the three-distinct-real-roots path.
  std::optional<double> theta;
  /// Sum of the two real cube roots, set on the one-real-root path.
  std::optional<double> cardano_b;
  RootSet roots;

  /// True when every residual is at most the configured residual_tol.
  bool residuals_within_tolerance = true;
};

ReducedInvariants reduced_invariants(const EvalPoint& ep);

/// thresh = tol_d * (|Q|^3 + R^2 + 10 * DBL_MIN)
/// D < -thresh: three distinct real roots; D > thresh: one real root;
/// otherwise a triple root when |Q| <= tol_d, else a double root.
Classification classify(const ReducedInvariants& inv, double tol_d);

/// R / sqrt((-Q)^3) before clamping. Requires Q < 0.
double trig_argument(const ReducedInvariants& inv);

/// acos of the clamped trig_argument. Throws ContractViolation when Q >= 0
/// or when the unclamped argument leaves [-1 - 1e-12, 1 + 1e-12].
double trig_angle(const ReducedInvariants& inv);

/// B = cbrt(R + sqrt(D)) + cbrt(R - sqrt(D)), evaluated as u - Q/u with u the
/// larger-magnitude cube root. Requires D > 0.
double cardano_b(const ReducedInvariants& inv);

/// Three distinct real roots (D < 0).
RootSet solve_trig(const EvalPoint& ep, const ReducedInvariants& inv);

/// One real root and a conjugate pair (D > 0).
RootSet solve_cardano(const EvalPoint& ep, const ReducedInvariants& inv);

/// D = 0: a double root or a triple root at the inflection point.
RootSet solve_repeated(const EvalPoint& ep, const ReducedInvariants& inv, Classification cls);

Solution solve_traced(const Cubic& f, const SolveOptions& options = {});

RootSet solve(const Cubic& f, const SolveOptions& options = {});

/// Same idea for a quadratic: evaluate at the stationary point z = -b/(2a),
/// then x = z +- sqrt(-f(z)/a).
std::array<ComplexRoot, 2> solve_quadratic_fe(const Quadratic& f);

}  // namespace cubicfe
