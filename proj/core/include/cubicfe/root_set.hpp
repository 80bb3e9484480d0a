#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "cubicfe/polynomial.hpp"

namespace cubicfe {

enum class Classification { ThreeRealDistinct, OneRealTwoComplex, RealWithDouble, TripleRoot };

/// Stable snake_case tag used in reports ("three_real_distinct", ...).
std::string_view to_string(Classification c);
std::optional<Classification> classification_from_string(std::string_view tag);

/// Three roots with multiplicity.
///
/// Output order: for OneRealTwoComplex the real root comes first, followed by
/// the conjugate pair with the positive imaginary part first. Every other
/// classification lists its (real) roots by descending value.
struct RootSet {
  std::array<ComplexRoot, 3> roots{};
  Classification classification = Classification::ThreeRealDistinct;
  std::array<double, 3> residuals{};
};

/// Puts roots into the output order described on RootSet.
void order_for_output(std::array<ComplexRoot, 3>& roots, Classification c);

/// Ascending real part, then ascending imaginary part.
std::array<ComplexRoot, 3> canonical_sorted(std::array<ComplexRoot, 3> roots);

/// Largest |x_i - y_i| over an optimal pairing of two equally long root
/// lists, divided by max(1, largest root modulus in either list).
///
/// The pairing minimizes the worst pair, so a canonical sort that happens to
/// swap two near-conjugate roots does not register as a disagreement.
double max_matched_distance(std::span<const ComplexRoot> lhs, std::span<const ComplexRoot> rhs);

/// Classifies a root triple from its geometry: imaginary parts below
/// snap_tol * max(1, max|x|) are zeroed in place, then real roots closer than
/// equal_tol * max(1, max|x|) count as repeated. Used by the solvers that have
/// no discriminant of their own.
Classification classify_by_geometry(std::array<ComplexRoot, 3>& roots, double snap_tol = 1e-9,
                                    double equal_tol = 1e-9);

}  // namespace cubicfe
