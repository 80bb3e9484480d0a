#include "cubicfe/expr_parser.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

namespace cubicfe {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_ascii_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_non_ascii(char c) { return static_cast<unsigned char>(c) >= 0x80; }

struct Failure {
  ParseError error;
};

class Parser {
 public:
  Parser(std::string_view text, int max_degree) : text_(text), max_degree_(max_degree) {
    coefficients_.assign(static_cast<std::size_t>(max_degree) + 1, 0.0);
  }

  ParsedPolynomial run() {
    skip_ws();
    if (at_end()) fail(0, ParseErrorKind::EmptyInput, "input contains no polynomial");
    const std::size_t begin = pos_;

    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
    }
    term(sign);

    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(pos_, ParseErrorKind::UnexpectedToken, "expected '+' or '-'");
      ++pos_;
      skip_ws();
      term(c == '-' ? -1.0 : 1.0);
    }

    ParsedPolynomial out;
    while (coefficients_.size() > 1 && coefficients_.back() == 0.0) coefficients_.pop_back();
    out.coefficients = std::move(coefficients_);
    out.degree = static_cast<int>(out.coefficients.size()) - 1;
    out.variable = variable_;
    out.source_span = {begin, last_token_end_};
    return out;
  }

 private:
  [[noreturn]] void fail(std::size_t position, ParseErrorKind kind, std::string message) const {
    throw Failure{ParseError{position, kind, std::move(message)}};
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char peek_at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void skip_ws() {
    while (!at_end() && is_space(text_[pos_])) ++pos_;
  }

  void term(double sign) {
    if (at_end()) fail(pos_, ParseErrorKind::UnexpectedToken, "expected a term");

    double coefficient = 1.0;
    bool has_number = false;
    if (is_digit(peek()) || peek() == '.') {
      coefficient = number();
      has_number = true;
      skip_ws();
    }

    bool has_star = false;
    if (peek() == '*') {
      if (!has_number) fail(pos_, ParseErrorKind::UnexpectedToken, "'*' must follow a coefficient");
      has_star = true;
      ++pos_;
      last_token_end_ = pos_;
      skip_ws();
    }

    int power = 0;
    if (is_ascii_letter(peek())) {
      variable();
      power = exponent();
    } else if (is_non_ascii(peek())) {
      fail(pos_, ParseErrorKind::UnsupportedVariable, "variables must be a single ASCII letter");
    } else if (has_star) {
      fail(pos_, ParseErrorKind::UnexpectedToken, "expected a variable after '*'");
    } else if (!has_number) {
      fail(pos_, ParseErrorKind::UnexpectedToken, "expected a number or a variable");
    }

    coefficients_[static_cast<std::size_t>(power)] += sign * coefficient;
  }

  void variable() {
    const std::size_t start = pos_;
    const char name = text_[pos_];
    if (is_ascii_letter(peek_at(start + 1)) || is_non_ascii(peek_at(start + 1))) {
      fail(start, ParseErrorKind::UnsupportedVariable, "variables must be a single ASCII letter");
    }
    if (variable_ && *variable_ != name) {
      fail(start, ParseErrorKind::DuplicateVariable,
           std::string("second variable '") + name + "' in a single-variable polynomial");
    }
    variable_ = name;
    ++pos_;
    last_token_end_ = pos_;
  }

  int exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    skip_ws();
    if (!is_digit(peek())) fail(pos_, ParseErrorKind::UnexpectedToken, "expected an exponent after '^'");
    const std::size_t start = pos_;
    long long value = 0;
    bool overflow = false;
    while (is_digit(peek())) {
      if (value <= max_degree_) value = value * 10 + (peek() - '0');
      if (value > max_degree_) overflow = true;
      ++pos_;
    }
    last_token_end_ = pos_;
    if (overflow) {
      fail(start, ParseErrorKind::DegreeTooHigh,
           "exponent exceeds the maximum degree " + std::to_string(max_degree_));
    }
    return static_cast<int>(value);
  }

  // digits ['.' digits] [exponent], with at least one digit.
  double decimal(std::size_t number_start) {
    const std::size_t start = pos_;
    std::size_t digits = 0;
    while (is_digit(peek())) ++pos_, ++digits;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_, ++digits;
    }
    if (digits == 0) fail(number_start, ParseErrorKind::MalformedNumber, "number has no digits");
    if (peek() == 'e' || peek() == 'E') {
      std::size_t look = pos_ + 1;
      if (peek_at(look) == '+' || peek_at(look) == '-') ++look;
      if (is_digit(peek_at(look))) {
        pos_ = look;
        while (is_digit(peek())) ++pos_;
      }
    }
    if (peek() == '.') fail(number_start, ParseErrorKind::MalformedNumber, "malformed number");

    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
      fail(number_start, ParseErrorKind::MalformedNumber, "number out of range");
    }
    return value;
  }

  double number() {
    const std::size_t start = pos_;
    double value = decimal(start);
    if (peek() == '/') {
      ++pos_;
      if (!is_digit(peek()) && peek() != '.') {
        fail(start, ParseErrorKind::MalformedNumber, "rational literal needs a denominator");
      }
      const double den = decimal(start);
      if (den == 0.0) fail(start, ParseErrorKind::MalformedNumber, "zero denominator");
      if (peek() == '/') fail(start, ParseErrorKind::MalformedNumber, "malformed rational literal");
      value /= den;
      if (!std::isfinite(value)) fail(start, ParseErrorKind::MalformedNumber, "number out of range");
    }
    last_token_end_ = pos_;
    return value;
  }

  std::string_view text_;
  int max_degree_;
  std::size_t pos_ = 0;
  std::size_t last_token_end_ = 0;
  std::vector<double> coefficients_;
  std::optional<char> variable_;
};

std::string shortest(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

}  // namespace

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnexpectedToken: return "UnexpectedToken";
    case ParseErrorKind::EmptyInput: return "EmptyInput";
    case ParseErrorKind::UnsupportedVariable: return "UnsupportedVariable";
    case ParseErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ParseErrorKind::MalformedNumber: return "MalformedNumber";
    case ParseErrorKind::DegreeTooHigh: return "DegreeTooHigh";
  }
  return "Unknown";
}

ParseResult parse(std::string_view text, int max_degree) {
  if (max_degree < 1) {
    return ParseError{0, ParseErrorKind::DegreeTooHigh, "max_degree must be at least 1"};
  }
  try {
    return Parser(text, max_degree).run();
  } catch (const Failure& f) {
    return f.error;
  }
}

std::string format_polynomial(const ParsedPolynomial& p, char variable) {
  std::string out;
  for (std::size_t i = p.coefficients.size(); i-- > 0;) {
    const double c = p.coefficients[i];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0.0) out += '-';
    } else {
      out += c < 0.0 ? " - " : " + ";
    }
    if (i == 0) {
      out += shortest(mag);
      continue;
    }
    if (mag != 1.0) out += shortest(mag) + "*";
    out += variable;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace cubicfe
