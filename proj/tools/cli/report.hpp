#pragma once

// Report model shared by the solve, batch and compare subcommands, with its
// JSON and text renderings.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cubicfe/cubicfe.hpp"
#include "json.hpp"

namespace cubicfe::cli {

enum class Method { Fe, Classic, Oracle, All };

std::string_view to_string(Method m);

/// A polynomial as given on the command line or in a batch line.
struct Input {
  std::string source;
  /// Ascending powers, trailing zeros trimmed.
  std::vector<double> ascending;

  [[nodiscard]] int degree() const { return static_cast<int>(ascending.size()) - 1; }
};

struct OracleStatus {
  int iterations = 0;
  bool converged = true;
  bool clustered = false;
};

/// One solver run on one input.
struct MethodReport {
  Method method = Method::Fe;
  Input input;
  EvalPoint eval_point;
  /// Absent on the quadratic path.
  std::optional<ReducedInvariants> invariants;
  std::string classification;
  /// Output order: real root first, then the pair with positive imaginary
  /// part first; all-real results by descending value.
  std::vector<ComplexRoot> roots;
  std::vector<double> residuals;
  std::optional<double> elapsed_us;
  std::optional<bool> residuals_within_tolerance;
  std::optional<OracleStatus> oracle;
};

/// Reports of several methods on the same input.
struct ComparisonReport {
  Input input;
  std::vector<MethodReport> reports;
  double max_pairwise_root_distance = 0.0;
  /// Set by the compare subcommand only.
  std::optional<double> agree_tol;
  std::optional<bool> agree;
};

struct SolveSettings {
  SolveOptions options;
  bool allow_quadratic = false;
  bool timing = true;
};

/// Thrown when the input degree is not accepted by the settings.
class DegreeGateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one method. Throws DegreeGateError for inputs of degree other than 3
/// (or 2 with allow_quadratic).
MethodReport run_method(Method method, const Input& input, const SolveSettings& settings);

/// Runs fe, classic and oracle and measures how far apart their roots are.
/// Non-convergent oracle runs are reported but left out of the distance.
ComparisonReport run_all(const Input& input, const SolveSettings& settings);

/// Largest normalized matched distance over method pairs whose results
/// participate in the comparison.
double max_pairwise_distance(const std::vector<MethodReport>& reports);

/// Whether every participating pair is within tolerance. Pairs involving a
/// clustered oracle result are judged against the oracle's cluster tolerance
/// when that is looser.
bool methods_agree(const std::vector<MethodReport>& reports, double agree_tol);

nlohmann::ordered_json to_json(const Input& input);
nlohmann::ordered_json to_json(const MethodReport& report);
nlohmann::ordered_json to_json(const ComparisonReport& report);

void write_text(std::ostream& os, const MethodReport& report);
void write_text(std::ostream& os, const ComparisonReport& report);

/// Text number: 12 significant digits, unless that would print a value that
/// is not bit-exact as something that looks exact, in which case the
/// shortest round-trip form is used.
std::string format_text_number(double v);

}  // namespace cubicfe::cli
