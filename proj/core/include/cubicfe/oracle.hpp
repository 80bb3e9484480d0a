#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "cubicfe/polynomial.hpp"

namespace cubicfe {

struct OracleConfig {
  int max_iterations = 500;
  /// Stop once the largest update is at most convergence_tol * (1 + max|x|).
  double convergence_tol = 1e-14;
};

struct OracleResult {
  /// Canonically sorted: ascending real part, then imaginary part.
  std::vector<ComplexRoot> roots;
  int iterations = 0;
  /// Two or more roots lie within kClusterTolerance of each other. Iteration
  /// converges only linearly there, so those roots are good to about 1e-4.
  bool clustered = false;

  static constexpr double kClusterTolerance = 1e-4;
};

/// Iteration budget ran out before the update size fell below tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(std::vector<ComplexRoot> last_estimate, int iterations);

  [[nodiscard]] const std::vector<ComplexRoot>& last_estimate() const { return last_; }
  [[nodiscard]] int iterations() const { return iterations_; }

 private:
  std::vector<ComplexRoot> last_;
  int iterations_;
};

/// Durand-Kerner (Weierstrass) simultaneous iteration on a degree 2 or 3
/// polynomial, coefficients given in descending powers. Starts from
/// (0.4 + 0.9i)^k and iterates in extended precision.
///
/// Throws std::invalid_argument for a bad degree, zero leading coefficient,
/// non-finite coefficients or a bad config; NonConvergence when the budget
/// is exhausted.
OracleResult durand_kerner(std::span<const double> descending, const OracleConfig& cfg = {});

/// Same iteration from caller-supplied starting points, one per root.
OracleResult durand_kerner(std::span<const double> descending, std::span<const std::complex<double>> initial,
                           const OracleConfig& cfg = {});

}  // namespace cubicfe
