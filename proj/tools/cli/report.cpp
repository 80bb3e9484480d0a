#include "report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cubicfe::cli {

namespace {

using Clock = std::chrono::steady_clock;
using ojson = nlohmann::ordered_json;

constexpr double kSnapTol = 1e-9;

template <class F>
auto timed(F&& fn, std::optional<double>& elapsed_us, bool timing) {
  const auto start = Clock::now();
  auto result = fn();
  if (timing) elapsed_us = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  return result;
}

double scale_of(std::span<const double> ascending) {
  double s = 0.0;
  for (double c : ascending) s = std::max(s, std::abs(c));
  return s;
}

double residual(const Input& input, ComplexRoot x) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = input.ascending.size(); i-- > 0;) acc = acc * x.value() + input.ascending[i];
  const double mag = std::max(1.0, std::abs(x.value()));
  return std::abs(acc) / (scale_of(input.ascending) * std::pow(mag, input.degree()));
}

std::vector<double> residuals_of(const Input& input, const std::vector<ComplexRoot>& roots) {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(residual(input, r));
  return out;
}

std::vector<double> descending_of(const Input& input) {
  return {input.ascending.rbegin(), input.ascending.rend()};
}

Cubic cubic_of(const Input& input) {
  const auto& c = input.ascending;
  return Cubic(c[3], c[2], c[1], c[0]);
}

Quadratic quadratic_of(const Input& input) {
  const auto& c = input.ascending;
  return Quadratic(c[2], c[1], c[0]);
}

EvalPoint quadratic_eval_point(const Quadratic& f) {
  const double z = -f.b() / (2.0 * f.a());
  return {z, eval(f, z) / f.a(), (2.0 * f.a() * z + f.b()) / f.a()};
}

// Two roots: snap tiny imaginary parts, then name the configuration.
std::string classify_quadratic(std::vector<ComplexRoot>& roots, double tol) {
  const double scale = std::max({1.0, std::abs(roots[0].value()), std::abs(roots[1].value())});
  for (auto& r : roots) {
    if (std::abs(r.im) <= tol * scale) r.im = 0.0;
  }
  if (roots[0].im != 0.0 || roots[1].im != 0.0) {
    if (roots[0].im < roots[1].im) std::swap(roots[0], roots[1]);
    return "complex_pair";
  }
  if (roots[0].re < roots[1].re) std::swap(roots[0], roots[1]);
  return roots[0].re - roots[1].re <= tol * scale ? "double_real" : "two_real_distinct";
}

MethodReport run_fe(const Input& input, const SolveSettings& s, MethodReport r) {
  if (input.degree() == 2) {
    const auto f = quadratic_of(input);
    r.eval_point = quadratic_eval_point(f);
    const auto roots = timed([&] { return solve_quadratic_fe(f); }, r.elapsed_us, s.timing);
    r.roots.assign(roots.begin(), roots.end());
    r.classification = classify_quadratic(r.roots, kSnapTol);
    r.residuals = residuals_of(input, r.roots);
    return r;
  }
  const auto f = cubic_of(input);
  const auto sol = timed([&] { return solve_traced(f, s.options); }, r.elapsed_us, s.timing);
  r.eval_point = sol.point;
  r.invariants = sol.invariants;
  r.classification = std::string(to_string(sol.roots.classification));
  r.roots.assign(sol.roots.roots.begin(), sol.roots.roots.end());
  r.residuals.assign(sol.roots.residuals.begin(), sol.roots.residuals.end());
  r.residuals_within_tolerance = sol.residuals_within_tolerance;
  return r;
}

MethodReport run_classic(const Input& input, const SolveSettings& s, MethodReport r) {
  if (input.degree() == 2) {
    const auto f = quadratic_of(input);
    const double z = -f.b() / (2.0 * f.a());
    r.eval_point = {z, f.c() / f.a() - z * z, 0.0};
    const auto roots = timed(
        [&] {
          const std::complex<double> disc = std::sqrt(std::complex<double>(f.b() * f.b() - 4.0 * f.a() * f.c()));
          return std::vector<ComplexRoot>{ComplexRoot::from((-f.b() + disc) / (2.0 * f.a())),
                                          ComplexRoot::from((-f.b() - disc) / (2.0 * f.a()))};
        },
        r.elapsed_us, s.timing);
    r.roots = roots;
    r.classification = classify_quadratic(r.roots, kSnapTol);
    r.residuals = residuals_of(input, r.roots);
    return r;
  }
  const auto f = cubic_of(input);
  const auto [dc, shift] = depress(f);
  const auto rad = cardano_radicals(dc);
  r.eval_point = {shift, dc.q, dc.p};
  r.invariants = ReducedInvariants{dc.p / 3.0, -dc.q / 2.0, rad.discriminant};
  const auto rs = timed([&] { return solve_classic(f); }, r.elapsed_us, s.timing);
  r.classification = std::string(to_string(rs.classification));
  r.roots.assign(rs.roots.begin(), rs.roots.end());
  r.residuals.assign(rs.residuals.begin(), rs.residuals.end());
  return r;
}

MethodReport run_oracle(const Input& input, const SolveSettings& s, MethodReport r) {
  const auto descending = descending_of(input);
  OracleStatus status;
  const auto roots = timed(
      [&] {
        try {
          const auto res = durand_kerner(descending);
          status.iterations = res.iterations;
          status.clustered = res.clustered;
          return res.roots;
        } catch (const NonConvergence& e) {
          status.iterations = e.iterations();
          status.converged = false;
          return e.last_estimate();
        }
      },
      r.elapsed_us, s.timing);
  r.oracle = status;
  r.roots = roots;
  const double tol = status.clustered ? OracleResult::kClusterTolerance : kSnapTol;

  if (input.degree() == 2) {
    r.eval_point = quadratic_eval_point(quadratic_of(input));
    r.classification = classify_quadratic(r.roots, tol);
  } else {
    const auto f = cubic_of(input);
    r.eval_point = inflection_point(f);
    r.invariants = reduced_invariants(r.eval_point);
    std::array<ComplexRoot, 3> three{roots[0], roots[1], roots[2]};
    r.classification = std::string(to_string(classify_by_geometry(three, tol, tol)));
    r.roots.assign(three.begin(), three.end());
  }
  r.residuals = residuals_of(input, r.roots);
  return r;
}

bool participates(const MethodReport& r) { return !r.oracle || r.oracle->converged; }

double pair_tolerance(const MethodReport& lhs, const MethodReport& rhs, double agree_tol) {
  const bool clustered = (lhs.oracle && lhs.oracle->clustered) || (rhs.oracle && rhs.oracle->clustered);
  return clustered ? std::max(agree_tol, OracleResult::kClusterTolerance) : agree_tol;
}

std::string shortest(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("nan");
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_text_number(xs[i]);
  }
  return out;
}

std::string format_root(const ComplexRoot& r) {
  if (r.im == 0.0) return format_text_number(r.re);
  return format_text_number(r.re) + (r.im < 0.0 ? " - " : " + ") + format_text_number(std::abs(r.im)) + "i";
}

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Fe: return "fe";
    case Method::Classic: return "classic";
    case Method::Oracle: return "oracle";
    case Method::All: return "all";
  }
  return "unknown";
}

MethodReport run_method(Method method, const Input& input, const SolveSettings& settings) {
  const int degree = input.degree();
  if (degree != 3 && !(degree == 2 && settings.allow_quadratic)) {
    throw DegreeGateError(degree == 2 ? "input is a quadratic; pass --allow-quadratic to solve it"
                                      : "input has degree " + std::to_string(degree) + ", expected a cubic");
  }
  MethodReport r;
  r.method = method;
  r.input = input;
  switch (method) {
    case Method::Fe: return run_fe(input, settings, std::move(r));
    case Method::Classic: return run_classic(input, settings, std::move(r));
    case Method::Oracle: return run_oracle(input, settings, std::move(r));
    case Method::All: break;
  }
  throw std::invalid_argument("run_method needs a single method");
}

ComparisonReport run_all(const Input& input, const SolveSettings& settings) {
  ComparisonReport out;
  out.input = input;
  for (Method m : {Method::Fe, Method::Classic, Method::Oracle}) out.reports.push_back(run_method(m, input, settings));
  out.max_pairwise_root_distance = max_pairwise_distance(out.reports);
  return out;
}

double max_pairwise_distance(const std::vector<MethodReport>& reports) {
  double worst = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      if (!participates(reports[i]) || !participates(reports[j])) continue;
      worst = std::max(worst, max_matched_distance(reports[i].roots, reports[j].roots));
    }
  }
  return worst;
}

bool methods_agree(const std::vector<MethodReport>& reports, double agree_tol) {
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      if (!participates(reports[i]) || !participates(reports[j])) continue;
      const double d = max_matched_distance(reports[i].roots, reports[j].roots);
      if (!(d <= pair_tolerance(reports[i], reports[j], agree_tol))) return false;
    }
  }
  return true;
}

ojson to_json(const Input& input) {
  ojson coeffs = ojson::array();
  for (double c : input.ascending) coeffs.push_back(c);
  return {{"source", input.source},
          {"coefficients_ascending", std::move(coeffs)},
          {"coefficient_order", "ascending"},
          {"degree", input.degree()}};
}

ojson to_json(const MethodReport& r) {
  ojson out;
  out["method"] = std::string(to_string(r.method));
  out["input"] = to_json(r.input);
  out["eval_point"] = {{"z", number_or_null(r.eval_point.z)},
                       {"fz", number_or_null(r.eval_point.fz)},
                       {"fpz", number_or_null(r.eval_point.fpz)}};
  if (r.invariants) {
    out["invariants"] = {{"Q", number_or_null(r.invariants->q)},
                         {"R", number_or_null(r.invariants->r)},
                         {"D", number_or_null(r.invariants->discriminant)}};
  } else {
    out["invariants"] = {{"Q", nullptr}, {"R", nullptr}, {"D", nullptr}};
  }
  out["classification"] = r.classification;
  ojson roots = ojson::array();
  for (const auto& x : r.roots) roots.push_back({{"re", number_or_null(x.re)}, {"im", number_or_null(x.im)}});
  out["roots"] = std::move(roots);
  ojson residuals = ojson::array();
  for (double x : r.residuals) residuals.push_back(number_or_null(x));
  out["residuals"] = std::move(residuals);
  out["elapsed_us"] = r.elapsed_us ? ojson(*r.elapsed_us) : ojson(nullptr);
  if (r.residuals_within_tolerance) out["residuals_within_tolerance"] = *r.residuals_within_tolerance;
  if (r.oracle) {
    out["oracle"] = {{"iterations", r.oracle->iterations},
                     {"converged", r.oracle->converged},
                     {"clustered", r.oracle->clustered}};
  }
  return out;
}

ojson to_json(const ComparisonReport& r) {
  ojson out;
  out["method"] = "all";
  out["input"] = to_json(r.input);
  ojson reports = ojson::array();
  for (const auto& m : r.reports) reports.push_back(to_json(m));
  out["reports"] = std::move(reports);
  out["max_pairwise_root_distance"] = number_or_null(r.max_pairwise_root_distance);
  if (r.agree_tol) out["agree_tol"] = *r.agree_tol;
  if (r.agree) out["agree"] = *r.agree;
  return out;
}

std::string format_text_number(double v) {
  if (v == 0.0) return "0";
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", v);
  const std::string text(buf.data());
  const bool looks_integral = text.find_first_of(".e") == std::string::npos;
  if (looks_integral && std::strtod(text.c_str(), nullptr) != v) return shortest(v);
  return text;
}

void write_text(std::ostream& os, const MethodReport& r) {
  os << "method: " << to_string(r.method) << '\n';
  os << "input: " << r.input.source << '\n';
  os << "coefficients (ascending): " << join_numbers(r.input.ascending) << '\n';
  os << "z = " << format_text_number(r.eval_point.z) << '\n';
  os << "f(z)/a = " << format_text_number(r.eval_point.fz) << '\n';
  os << "f'(z)/a = " << format_text_number(r.eval_point.fpz) << '\n';
  if (r.invariants) {
    os << "Q = " << format_text_number(r.invariants->q) << '\n';
    os << "R = " << format_text_number(r.invariants->r) << '\n';
    os << "D = " << format_text_number(r.invariants->discriminant) << '\n';
  }
  os << "classification: " << r.classification << '\n';
  os << "roots:\n";
  for (std::size_t i = 0; i < r.roots.size(); ++i) os << "  x" << i + 1 << " = " << format_root(r.roots[i]) << '\n';
  os << "residuals: " << join_numbers(r.residuals) << '\n';
  if (r.oracle) {
    os << "oracle: " << r.oracle->iterations << " iterations"
       << (r.oracle->converged ? "" : ", did not converge") << (r.oracle->clustered ? ", clustered roots" : "")
       << '\n';
  }
  if (r.elapsed_us) os << "elapsed_us: " << format_text_number(*r.elapsed_us) << '\n';
}

void write_text(std::ostream& os, const ComparisonReport& r) {
  for (std::size_t i = 0; i < r.reports.size(); ++i) {
    if (i > 0) os << '\n';
    write_text(os, r.reports[i]);
  }
  os << "\nmax pairwise root distance: " << format_text_number(r.max_pairwise_root_distance) << '\n';
  if (r.agree && r.agree_tol) {
    os << (*r.agree ? "methods agree within " : "methods disagree beyond ") << format_text_number(*r.agree_tol)
       << '\n';
  }
}

}  // namespace cubicfe::cli
