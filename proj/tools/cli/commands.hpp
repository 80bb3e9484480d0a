#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "report.hpp"

namespace cubicfe::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitDegreeGate = 2,
  kExitDisagreement = 3,
};

/// Why a polynomial could not be read. position is a byte offset into text.
struct InputError {
  std::string kind;
  std::string message;
  std::size_t position = 0;
  std::string text;
};

/// Polynomial expression, at most cubic.
std::variant<Input, InputError> input_from_expression(std::string_view text);

/// Comma-separated coefficients in descending powers, e.g. "1,-6,11,-6".
std::variant<Input, InputError> input_from_coefficient_list(std::string_view text);

/// Error line with a caret under the offending byte.
void write_input_error(std::ostream& err, const InputError& e);

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubicfe::cli
