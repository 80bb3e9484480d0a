#include "cubicfe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace cubicfe {

namespace {

using ext = long double;
using cext = std::complex<ext>;

std::vector<ComplexRoot> to_roots(const std::vector<cext>& xs) {
  std::vector<ComplexRoot> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    out.push_back({static_cast<double>(x.real()), static_cast<double>(x.imag())});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return out;
}

}  // namespace

NonConvergence::NonConvergence(std::vector<ComplexRoot> last_estimate, int iterations)
    : std::runtime_error("Durand-Kerner iteration did not converge within " +
                         std::to_string(iterations) + " iterations"),
      last_(std::move(last_estimate)),
      iterations_(iterations) {}

OracleResult durand_kerner(std::span<const double> descending, const OracleConfig& cfg) {
  std::vector<std::complex<double>> initial(descending.empty() ? 0 : descending.size() - 1);
  const std::complex<double> seed{0.4, 0.9};
  std::complex<double> power{1.0, 0.0};
  for (auto& x : initial) {
    x = power;
    power *= seed;
  }
  return durand_kerner(descending, initial, cfg);
}

OracleResult durand_kerner(std::span<const double> descending, std::span<const std::complex<double>> initial,
                           const OracleConfig& cfg) {
  if (descending.size() != 3 && descending.size() != 4) {
    throw std::invalid_argument("durand_kerner supports degree 2 or 3 only");
  }
  if (cfg.max_iterations < 1 || !(cfg.convergence_tol > 0.0)) {
    throw std::invalid_argument("OracleConfig needs max_iterations >= 1 and convergence_tol > 0");
  }
  for (double c : descending) {
    if (!std::isfinite(c)) throw std::invalid_argument("coefficients must be finite");
  }
  if (descending[0] == 0.0) throw std::invalid_argument("leading coefficient must be nonzero");

  const std::size_t n = descending.size() - 1;
  std::vector<ext> monic(descending.size());
  for (std::size_t i = 0; i < descending.size(); ++i) {
    monic[i] = static_cast<ext>(descending[i]) / static_cast<ext>(descending[0]);
  }
  auto eval_monic = [&](cext x) {
    cext acc{1.0L, 0.0L};
    for (std::size_t i = 1; i < monic.size(); ++i) acc = acc * x + monic[i];
    return acc;
  };

  if (initial.size() != n) throw std::invalid_argument("need one starting point per root");
  std::vector<cext> xs;
  xs.reserve(n);
  for (const auto& x : initial) xs.emplace_back(x.real(), x.imag());

  OracleResult result;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    ext max_step = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      cext denom{1.0L, 0.0L};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) denom *= xs[k] - xs[j];
      }
      if (denom == cext{0.0L, 0.0L}) continue;
      const cext step = eval_monic(xs[k]) / denom;
      xs[k] -= step;
      max_step = std::max(max_step, std::abs(step));
    }

    ext magnitude = 0.0L;
    for (const auto& x : xs) magnitude = std::max(magnitude, std::abs(x));
    if (max_step <= static_cast<ext>(cfg.convergence_tol) * (1.0L + magnitude)) {
      result.iterations = iter;
      result.roots = to_roots(xs);
      const double cluster = OracleResult::kClusterTolerance * (1.0 + static_cast<double>(magnitude));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (std::abs(result.roots[i].value() - result.roots[j].value()) <= cluster) {
            result.clustered = true;
          }
        }
      }
      return result;
    }
  }
  throw NonConvergence(to_roots(xs), cfg.max_iterations);
}

}  // namespace cubicfe
