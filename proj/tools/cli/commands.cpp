#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace cubicfe::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct CommonOptions {
  std::string polynomial;
  std::string coeffs;
  std::string format = "text";
  std::string method = "fe";
  std::string input_path;
  std::string output_path;
  bool no_polish = false;
  double tol_d = SolveOptions{}.tol_d;
  double agree_tol = 1e-8;
  bool allow_quadratic = false;
  int jobs = 1;
  bool no_timing = false;

  [[nodiscard]] SolveSettings settings() const {
    SolveSettings s;
    s.options.polish = !no_polish;
    s.options.tol_d = tol_d;
    s.allow_quadratic = allow_quadratic;
    s.timing = !no_timing;
    return s;
  }
};

Method method_from(const std::string& name) {
  if (name == "classic") return Method::Classic;
  if (name == "oracle") return Method::Oracle;
  if (name == "all") return Method::All;
  return Method::Fe;
}

Input input_from_descending(std::string source, std::vector<double> descending) {
  auto first = std::find_if(descending.begin(), descending.end(), [](double c) { return c != 0.0; });
  Input in;
  in.source = std::move(source);
  in.ascending.assign(descending.rbegin(), std::make_reverse_iterator(first));
  if (in.ascending.empty()) in.ascending.push_back(0.0);
  return in;
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t");
  return std::string(s.substr(begin, end - begin + 1));
}

void add_polynomial_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("polynomial", o.polynomial, "Polynomial expression, e.g. \"x^3 - 6x^2 + 11x - 6\"");
  cmd.add_option("--coeffs", o.coeffs, "Coefficients in descending powers, e.g. 1,-6,11,-6");
  cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd.add_option("--output", o.output_path, "Write the report to this file");
}

void add_solver_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_flag("--no-polish", o.no_polish, "Skip Newton polishing of the closed-form roots");
  cmd.add_option("--tol-d", o.tol_d, "Relative band around D = 0 treated as a repeated root")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--allow-quadratic", o.allow_quadratic, "Accept degree-2 input");
  cmd.add_flag("--no-timing", o.no_timing, "Report elapsed_us as null for reproducible output");
}

// Opens --output or falls back to the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      stream_ = &file_;
    }
  }
  [[nodiscard]] bool ok() const { return stream_->good(); }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::optional<Input> read_single_input(const CommonOptions& o, std::ostream& err) {
  if (o.polynomial.empty() == o.coeffs.empty()) {
    err << "error: give exactly one polynomial, either as an expression or with --coeffs\n";
    return std::nullopt;
  }
  auto res = o.coeffs.empty() ? input_from_expression(o.polynomial) : input_from_coefficient_list(o.coeffs);
  if (const auto* e = std::get_if<InputError>(&res)) {
    write_input_error(err, *e);
    return std::nullopt;
  }
  return std::get<Input>(std::move(res));
}

int cmd_solve(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto input = read_single_input(o, err);
  if (!input) return kExitInputError;
  Sink sink(o.output_path, out);
  if (!sink.ok()) {
    err << "error: cannot open output file " << o.output_path << '\n';
    return kExitInputError;
  }
  const bool json = o.format == "json";
  try {
    if (method_from(o.method) == Method::All) {
      const auto report = run_all(*input, o.settings());
      if (json) {
        sink.stream() << to_json(report).dump(2) << '\n';
      } else {
        write_text(sink.stream(), report);
      }
    } else {
      const auto report = run_method(method_from(o.method), *input, o.settings());
      if (json) {
        sink.stream() << to_json(report).dump(2) << '\n';
      } else {
        write_text(sink.stream(), report);
      }
    }
  } catch (const DegreeGateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegreeGate;
  }
  return kExitOk;
}

int cmd_compare(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto input = read_single_input(o, err);
  if (!input) return kExitInputError;
  Sink sink(o.output_path, out);
  if (!sink.ok()) {
    err << "error: cannot open output file " << o.output_path << '\n';
    return kExitInputError;
  }
  ComparisonReport report;
  try {
    report = run_all(*input, o.settings());
  } catch (const DegreeGateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegreeGate;
  }
  report.agree_tol = o.agree_tol;
  report.agree = methods_agree(report.reports, o.agree_tol);
  if (o.format == "json") {
    sink.stream() << to_json(report).dump(2) << '\n';
  } else {
    write_text(sink.stream(), report);
  }
  return *report.agree ? kExitOk : kExitDisagreement;
}

struct LineOutcome {
  std::string json;
  std::optional<std::string> classification;
  double max_residual = 0.0;
  bool has_residual = false;
  bool error = false;
  bool malformed = false;
};

ojson error_object(const std::string& kind, const std::string& message, std::optional<std::size_t> position) {
  ojson e{{"kind", kind}, {"message", message}};
  e["position"] = position ? ojson(*position) : ojson(nullptr);
  return e;
}

LineOutcome process_line(const std::string& line, std::size_t line_number, Method method,
                         const SolveSettings& settings) {
  LineOutcome outcome;
  ojson record;
  const auto fail = [&](const std::string& kind, const std::string& message, std::optional<std::size_t> position) {
    record["line"] = line_number;
    record["error"] = error_object(kind, message, position);
    outcome.error = true;
    outcome.json = record.dump();
    return outcome;
  };

  ojson parsed;
  try {
    parsed = ojson::parse(line);
  } catch (const ojson::parse_error& e) {
    outcome.malformed = true;
    return fail("MalformedLine", "line is not valid JSON", e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!parsed.is_object()) {
    outcome.malformed = true;
    return fail("MalformedLine", "line must be a JSON object", std::nullopt);
  }
  if (parsed.contains("id")) record["id"] = parsed["id"];

  const bool has_poly = parsed.contains("poly");
  const bool has_coeffs = parsed.contains("coeffs");
  if (has_poly == has_coeffs) return fail("InvalidLine", "line needs exactly one of \"poly\" or \"coeffs\"", std::nullopt);

  std::variant<Input, InputError> res;
  if (has_poly) {
    if (!parsed["poly"].is_string()) return fail("InvalidLine", "\"poly\" must be a string", std::nullopt);
    res = input_from_expression(parsed["poly"].get<std::string>());
  } else {
    const auto& arr = parsed["coeffs"];
    if (!arr.is_array() || arr.empty()) {
      return fail("InvalidLine", "\"coeffs\" must be a non-empty array of numbers", std::nullopt);
    }
    if (arr.size() > 4) {
      return fail("DegreeTooHigh", "at most 4 coefficients (a cubic) are accepted", std::nullopt);
    }
    std::vector<double> descending;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) return fail("MalformedNumber", "coefficient is not a number", i);
      descending.push_back(arr[i].get<double>());
    }
    res = input_from_descending(arr.dump(), std::move(descending));
  }
  if (const auto* e = std::get_if<InputError>(&res)) return fail(e->kind, e->message, e->position);
  const auto& input = std::get<Input>(res);

  try {
    std::vector<const MethodReport*> reports;
    ojson body;
    ComparisonReport all;
    MethodReport single;
    if (method == Method::All) {
      all = run_all(input, settings);
      body = to_json(all);
      for (const auto& r : all.reports) reports.push_back(&r);
    } else {
      single = run_method(method, input, settings);
      body = to_json(single);
      reports.push_back(&single);
    }
    for (auto& [key, value] : body.items()) record[key] = value;
    outcome.classification = reports.front()->classification;
    for (const auto* r : reports) {
      for (double x : r->residuals) {
        outcome.max_residual = std::max(outcome.max_residual, x);
        outcome.has_residual = true;
      }
    }
  } catch (const DegreeGateError& e) {
    return fail("DegreeGate", e.what(), std::nullopt);
  }
  outcome.json = record.dump();
  return outcome;
}

int cmd_batch(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  if (o.format != "json" && o.format != "text") return kExitInputError;
  std::ifstream in(o.input_path, std::ios::binary);
  if (!in) {
    err << "error: cannot read input file " << o.input_path << '\n';
    return kExitInputError;
  }
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.emplace_back(n, line);
  }
  if (in.bad()) {
    err << "error: failed while reading " << o.input_path << '\n';
    return kExitInputError;
  }

  Sink sink(o.output_path, out);
  if (!sink.ok()) {
    err << "error: cannot open output file " << o.output_path << '\n';
    return kExitInputError;
  }

  const Method method = method_from(o.method);
  const SolveSettings settings = o.settings();
  std::vector<LineOutcome> outcomes(lines.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) {
      outcomes[i] = process_line(lines[i].second, lines[i].first, method, settings);
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, o.jobs));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(workers, std::max<std::size_t>(lines.size(), 1)); ++t) {
      pool.emplace_back(worker);
    }
  }

  std::map<std::string, std::size_t> counts;
  for (Classification c : {Classification::ThreeRealDistinct, Classification::OneRealTwoComplex,
                           Classification::RealWithDouble, Classification::TripleRoot}) {
    counts[std::string(to_string(c))] = 0;
  }
  std::size_t errors = 0;
  bool malformed = false;
  double max_residual = 0.0;
  bool any_residual = false;
  for (const auto& oc : outcomes) {
    sink.stream() << oc.json << '\n';
    if (oc.error) ++errors;
    malformed = malformed || oc.malformed;
    if (oc.classification) ++counts[*oc.classification];
    if (oc.has_residual) {
      max_residual = std::max(max_residual, oc.max_residual);
      any_residual = true;
    }
  }
  ojson summary;
  summary["lines"] = outcomes.size();
  summary["solved"] = outcomes.size() - errors;
  summary["errors"] = errors;
  ojson count_obj;
  for (const auto& [tag, n] : counts) count_obj[tag] = n;
  summary["classification_counts"] = std::move(count_obj);
  summary["max_residual"] = any_residual ? ojson(max_residual) : ojson(nullptr);
  sink.stream() << ojson{{"summary", std::move(summary)}}.dump() << '\n';
  sink.stream().flush();
  if (!sink.ok()) {
    err << "error: failed while writing output\n";
    return kExitInputError;
  }
  if (malformed) {
    err << "error: " << o.input_path << " contains lines that are not JSON objects\n";
    return kExitInputError;
  }
  return kExitOk;
}

// An expression such as "-x^3 + 1" would be read as a short option. Any
// single-dash argument that is not an option value is moved behind "--".
std::vector<std::string> protect_negative_positionals(const std::vector<std::string>& args) {
  static const std::vector<std::string> takes_value = {"--coeffs", "--format", "--method", "--input", "--output",
                                                       "--tol-d",  "--agree-tol", "--jobs"};
  std::vector<std::string> head;
  std::vector<std::string> tail;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--") {
      tail.insert(tail.end(), args.begin() + static_cast<std::ptrdiff_t>(i) + 1, args.end());
      break;
    }
    const bool value_of_previous =
        i > 0 && std::find(takes_value.begin(), takes_value.end(), args[i - 1]) != takes_value.end();
    const bool single_dash = a.size() > 1 && a[0] == '-' && a[1] != '-' && a != "-h";
    if (single_dash && !value_of_previous) {
      tail.push_back(a);
    } else {
      head.push_back(a);
    }
  }
  if (!tail.empty()) {
    head.emplace_back("--");
    head.insert(head.end(), tail.begin(), tail.end());
  }
  return head;
}

}  // namespace

std::variant<Input, InputError> input_from_expression(std::string_view text) {
  const auto res = parse(text, 3);
  if (!res.ok()) {
    const auto& e = res.error();
    return InputError{std::string(to_string(e.kind)), e.message, e.position, std::string(text)};
  }
  Input in;
  in.source = std::string(text);
  in.ascending = res.value().coefficients;
  return in;
}

std::variant<Input, InputError> input_from_coefficient_list(std::string_view text) {
  std::vector<double> descending;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view raw = text.substr(start, comma - start);
    const auto lead = raw.find_first_not_of(" \t");
    const std::size_t pos = start + (lead == std::string_view::npos ? raw.size() : lead);
    std::string field = trim(raw);
    if (!field.empty() && field.front() == '+') field.erase(0, 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
      return InputError{"MalformedNumber", "coefficient is not a finite number", pos, std::string(text)};
    }
    descending.push_back(value);
    if (comma == text.size()) break;
    start = comma + 1;
  }
  if (descending.size() > 4) {
    return InputError{"DegreeTooHigh", "at most 4 coefficients (a cubic) are accepted", 0, std::string(text)};
  }
  return input_from_descending(std::string(text), std::move(descending));
}

void write_input_error(std::ostream& err, const InputError& e) {
  err << "error: " << e.kind << " at position " << e.position << ": " << e.message << '\n';
  err << "  " << e.text << '\n';
  err << "  " << std::string(e.position, ' ') << "^\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form cubic solver"};
  app.name("cubicfe");
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions o;
  auto* solve = app.add_subcommand("solve", "Solve one polynomial");
  add_polynomial_options(*solve, o);
  add_solver_options(*solve, o);
  solve->add_option("--method", o.method, "Solver")->check(CLI::IsMember({"fe", "classic", "oracle", "all"}));

  auto* batch = app.add_subcommand("batch", "Solve every line of a JSON-lines file");
  batch->add_option("--input", o.input_path, "JSON-lines input file")->required();
  batch->add_option("--output", o.output_path, "Write reports here instead of standard output");
  batch->add_option("--format", o.format, "Output format (batch output is always JSON lines)")
      ->check(CLI::IsMember({"json"}));
  batch->add_option("--method", o.method, "Solver")->check(CLI::IsMember({"fe", "classic", "oracle", "all"}));
  batch->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  add_solver_options(*batch, o);

  auto* compare = app.add_subcommand("compare", "Run every method and check that they agree");
  add_polynomial_options(*compare, o);
  add_solver_options(*compare, o);
  compare->add_option("--agree-tol", o.agree_tol, "Largest normalized root distance counted as agreement")
      ->check(CLI::NonNegativeNumber);

  const auto prepared = protect_negative_positionals(args);
  std::vector<std::string> reversed(prepared.rbegin(), prepared.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*solve) return cmd_solve(o, out, err);
  if (*batch) return cmd_batch(o, out, err);
  return cmd_compare(o, out, err);
}

}  // namespace cubicfe::cli
