#pragma once

// Polynomial source text to coefficient vector.
//
//   poly   := ws [sign] ws term (ws ("+"|"-") ws term)* ws
//   term   := number | [number] ["*"] var ["^" uint]
//   var    := one ASCII letter, the same letter throughout the input
//   number := decimal literal with optional fraction and exponent,
//             or "num/den" with den != 0
//
// Like powers accumulate ("x + x" is 2x).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cubicfe {

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct ParsedPolynomial {
  /// Indexed by power, ascending. Trailing zeros are trimmed, so the last
  /// entry is nonzero unless the polynomial is identically zero ({0}).
  std::vector<double> coefficients{0.0};
  int degree = 0;
  /// The variable letter, if the input named one.
  std::optional<char> variable;
  SourceSpan source_span;
};

enum class ParseErrorKind {
  UnexpectedToken,
  EmptyInput,
  UnsupportedVariable,
  DuplicateVariable,
  MalformedNumber,
  DegreeTooHigh,
};

std::string_view to_string(ParseErrorKind kind);

struct ParseError {
  /// Byte offset into the input; equal to the input length when the problem
  /// is a premature end of input.
  std::size_t position = 0;
  ParseErrorKind kind = ParseErrorKind::UnexpectedToken;
  std::string message;
};

class ParseResult {
 public:
  ParseResult(ParsedPolynomial p) : value_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  ParseResult(ParseError e) : value_(std::move(e)) {}        // NOLINT(google-explicit-constructor)

  [[nodiscard]] bool ok() const { return std::holds_alternative<ParsedPolynomial>(value_); }
  explicit operator bool() const { return ok(); }

  [[nodiscard]] const ParsedPolynomial& value() const { return std::get<ParsedPolynomial>(value_); }
  [[nodiscard]] const ParseError& error() const { return std::get<ParseError>(value_); }

 private:
  std::variant<ParsedPolynomial, ParseError> value_;
};

ParseResult parse(std::string_view text, int max_degree = 3);

/// Canonical text such as "2*x^3 - 6*x^2 + 11*x - 6". Coefficients are
/// written with the shortest round-trip representation, so parsing the result
/// reproduces the coefficients bit for bit.
std::string format_polynomial(const ParsedPolynomial& p, char variable = 'x');

}  // namespace cubicfe
