#include "cubicfe/fe_solver.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

namespace cubicfe {

namespace {

constexpr double kTrigArgumentSlack = 1e-12;
constexpr double kDiscriminantFloor = 10.0 * DBL_MIN;
constexpr int kMaxPolishSteps = 2;

using cext = std::complex<long double>;

cext eval_ext(const Cubic& f, cext x) {
  return ((static_cast<long double>(f.a()) * x + static_cast<long double>(f.b())) * x +
          static_cast<long double>(f.c())) * x + static_cast<long double>(f.d());
}

cext slope_ext(const Cubic& f, cext x) {
  return (3.0L * static_cast<long double>(f.a()) * x + 2.0L * static_cast<long double>(f.b())) * x +
         static_cast<long double>(f.c());
}

// Complex Newton with f and f' evaluated in extended precision. A step is
// kept only if it does not increase |f|.
std::complex<double> polish_root(const Cubic& f, std::complex<double> start) {
  cext x{start.real(), start.imag()};
  long double best = std::abs(eval_ext(f, x));
  for (int step = 0; step < kMaxPolishSteps && best > 0.0L; ++step) {
    const cext slope = slope_ext(f, x);
    if (slope == cext{0.0L, 0.0L}) break;
    const cext candidate = x - eval_ext(f, x) / slope;
    const cext rounded{static_cast<double>(candidate.real()), static_cast<double>(candidate.imag())};
    const long double value = std::abs(eval_ext(f, rounded));
    if (!std::isfinite(value) || value > best) break;
    x = rounded;
    best = value;
  }
  return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

struct CubeRootPair {
  double u;
  double v;
};

// The two real cube roots of R +- sqrt(D). The larger-magnitude one is taken
// directly and the other recovered from u*v == -Q.
CubeRootPair cube_root_pair(const ReducedInvariants& inv) {
  if (!(inv.discriminant > 0.0)) throw ContractViolation("Cardano path requires D > 0");
  const double root_d = std::sqrt(inv.discriminant);
  const double u = std::cbrt(inv.r + std::copysign(root_d, inv.r));
  return {u, u != 0.0 ? -inv.q / u : 0.0};
}

void polish(const Cubic& f, RootSet& rs) {
  switch (rs.classification) {
    case Classification::ThreeRealDistinct:
      for (auto& r : rs.roots) r = {polish_root(f, r.re).real(), 0.0};
      break;
    case Classification::OneRealTwoComplex: {
      rs.roots[0] = {polish_root(f, rs.roots[0].re).real(), 0.0};
      const auto upper = polish_root(f, rs.roots[1].value());
      if (upper.imag() > 0.0) {
        rs.roots[1] = ComplexRoot::from(upper);
        rs.roots[2] = {upper.real(), -upper.imag()};
      }
      break;
    }
    case Classification::RealWithDouble:
    case Classification::TripleRoot:
      break;
  }
}

}  // namespace

ReducedInvariants reduced_invariants(const EvalPoint& ep) {
  const double q = ep.fpz / 3.0;
  const double r = -ep.fz / 2.0;
  // Q^3 and R^2 nearly cancel close to a repeated root; the extended sum keeps
  // D accurate to its own rounding.
  const long double lq = q;
  const long double lr = r;
  return {q, r, static_cast<double>(lq * lq * lq + lr * lr)};
}

Classification classify(const ReducedInvariants& inv, double tol_d) {
  const double q = inv.q;
  const double thresh = tol_d * (std::abs(q * q * q) + inv.r * inv.r + kDiscriminantFloor);
  if (inv.discriminant < -thresh) return Classification::ThreeRealDistinct;
  if (inv.discriminant > thresh) return Classification::OneRealTwoComplex;
  return std::abs(q) > tol_d ? Classification::RealWithDouble : Classification::TripleRoot;
}

double trig_argument(const ReducedInvariants& inv) {
  if (!(inv.q < 0.0)) throw ContractViolation("trigonometric path requires Q < 0");
  const double neg_q = -inv.q;
  return inv.r / (neg_q * std::sqrt(neg_q));
}

double trig_angle(const ReducedInvariants& inv) {
  const double arg = trig_argument(inv);
  if (!(std::abs(arg) <= 1.0 + kTrigArgumentSlack)) {
    throw ContractViolation("arccos argument outside [-1, 1] on the trigonometric path");
  }
  if (inv.discriminant >= 0.0 || std::abs(arg) >= 1.0) return std::acos(std::clamp(arg, -1.0, 1.0));
  // acos(R / sqrt(-Q^3)) written as atan2(sin, cos) with sin = sqrt(-D) / sqrt(-Q^3);
  // acos loses half its digits for arguments near +-1.
  return std::atan2(std::sqrt(-inv.discriminant), inv.r);
}

double cardano_b(const ReducedInvariants& inv) {
  const auto [u, v] = cube_root_pair(inv);
  return u + v;
}

RootSet solve_trig(const EvalPoint& ep, const ReducedInvariants& inv) {
  const double theta = trig_angle(inv);
  const double amplitude = 2.0 * std::sqrt(-inv.q);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  RootSet rs;
  rs.classification = Classification::ThreeRealDistinct;
  for (int k = 0; k < 3; ++k) {
    rs.roots[k] = {ep.z + amplitude * std::cos((theta + two_pi * k) / 3.0), 0.0};
  }
  order_for_output(rs.roots, rs.classification);
  return rs;
}

RootSet solve_cardano(const EvalPoint& ep, const ReducedInvariants& inv) {
  const auto [u, v] = cube_root_pair(inv);
  const double b = u + v;

  // sqrt(B^2 + 4Q) == |u - v| since u*v == -Q.
  const double half_width = 0.5 * std::sqrt(3.0) * std::abs(u - v);
  const double centre = ep.z - 0.5 * b;

  RootSet rs;
  rs.classification = Classification::OneRealTwoComplex;
  rs.roots = {ComplexRoot{ep.z + b, 0.0}, ComplexRoot{centre, half_width},
              ComplexRoot{centre, -half_width}};
  return rs;
}

RootSet solve_repeated(const EvalPoint& ep, const ReducedInvariants& inv, Classification cls) {
  RootSet rs;
  rs.classification = cls;
  switch (cls) {
    case Classification::TripleRoot:
      rs.roots.fill({ep.z, 0.0});
      return rs;
    case Classification::RealWithDouble: {
      const double c = std::cbrt(inv.r);
      rs.roots = {ComplexRoot{ep.z + 2.0 * c, 0.0}, ComplexRoot{ep.z - c, 0.0},
                  ComplexRoot{ep.z - c, 0.0}};
      order_for_output(rs.roots, cls);
      return rs;
    }
    default:
      throw ContractViolation("repeated-root path requires a D = 0 classification");
  }
}

Solution solve_traced(const Cubic& f, const SolveOptions& options) {
  Solution s;
  s.point = inflection_point(f);
  s.invariants = reduced_invariants(s.point);
  const Classification cls = classify(s.invariants, options.tol_d);

  switch (cls) {
    case Classification::ThreeRealDistinct:
      s.theta = trig_angle(s.invariants);
      s.roots = solve_trig(s.point, s.invariants);
      break;
    case Classification::OneRealTwoComplex:
      s.cardano_b = cardano_b(s.invariants);
      s.roots = solve_cardano(s.point, s.invariants);
      break;
    case Classification::RealWithDouble:
    case Classification::TripleRoot:
      s.roots = solve_repeated(s.point, s.invariants, cls);
      break;
  }

  if (options.polish) {
    polish(f, s.roots);
    order_for_output(s.roots.roots, cls);
  }

  for (std::size_t i = 0; i < 3; ++i) {
    s.roots.residuals[i] = normalized_residual(f, s.roots.roots[i]);
    if (!(s.roots.residuals[i] <= options.residual_tol)) s.residuals_within_tolerance = false;
  }
  return s;
}

RootSet solve(const Cubic& f, const SolveOptions& options) { return solve_traced(f, options).roots; }

std::array<ComplexRoot, 2> solve_quadratic_fe(const Quadratic& f) {
  const double z = -f.b() / (2.0 * f.a());
  const double v = -eval(f, z) / f.a();
  if (v < 0.0) {
    const double w = std::sqrt(-v);
    return {ComplexRoot{z, w}, ComplexRoot{z, -w}};
  }
  // Larger-magnitude root first; the other is (c/a) / big.
  const double big = z + std::copysign(std::sqrt(v), z);
  const double small = big != 0.0 ? (f.c() / f.a()) / big : 0.0;
  std::array<ComplexRoot, 2> roots{ComplexRoot{big, 0.0}, ComplexRoot{small, 0.0}};
  if (roots[0].re < roots[1].re) std::swap(roots[0], roots[1]);
  return roots;
}

}  // namespace cubicfe
