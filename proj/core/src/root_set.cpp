#include "cubicfe/root_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cubicfe {

namespace {

constexpr std::array<std::pair<Classification, std::string_view>, 4> kTags{{
    {Classification::ThreeRealDistinct, "three_real_distinct"},
    {Classification::OneRealTwoComplex, "one_real_two_complex"},
    {Classification::RealWithDouble, "real_with_double"},
    {Classification::TripleRoot, "triple_root"},
}};

double root_scale(const std::array<ComplexRoot, 3>& roots) {
  double m = 1.0;
  for (const auto& r : roots) m = std::max(m, std::abs(r.value()));
  return m;
}

}  // namespace

std::string_view to_string(Classification c) {
  for (const auto& [cls, tag] : kTags) {
    if (cls == c) return tag;
  }
  return "unknown";
}

std::optional<Classification> classification_from_string(std::string_view tag) {
  for (const auto& [cls, name] : kTags) {
    if (name == tag) return cls;
  }
  return std::nullopt;
}

void order_for_output(std::array<ComplexRoot, 3>& roots, Classification c) {
  if (c == Classification::OneRealTwoComplex) {
    auto real_it = std::min_element(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
      return std::abs(x.im) < std::abs(y.im);
    });
    std::iter_swap(roots.begin(), real_it);
    if (roots[1].im < roots[2].im) std::swap(roots[1], roots[2]);
    return;
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    if (x.re != y.re) return x.re > y.re;
    return x.im > y.im;
  });
}

std::array<ComplexRoot, 3> canonical_sorted(std::array<ComplexRoot, 3> roots) {
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    if (x.re != y.re) return x.re < y.re;
    return x.im < y.im;
  });
  return roots;
}

double max_matched_distance(std::span<const ComplexRoot> lhs, std::span<const ComplexRoot> rhs) {
  if (lhs.size() != rhs.size()) return INFINITY;
  double scale = 1.0;
  for (const auto& r : lhs) scale = std::max(scale, std::abs(r.value()));
  for (const auto& r : rhs) scale = std::max(scale, std::abs(r.value()));

  std::vector<std::size_t> perm(rhs.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      worst = std::max(worst, std::abs(lhs[i].value() - rhs[perm[i]].value()));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return lhs.empty() ? 0.0 : best / scale;
}

Classification classify_by_geometry(std::array<ComplexRoot, 3>& roots, double snap_tol,
                                    double equal_tol) {
  const double scale = root_scale(roots);
  int real_count = 0;
  for (auto& r : roots) {
    if (std::abs(r.im) <= snap_tol * scale) {
      r.im = 0.0;
      ++real_count;
    }
  }
  if (real_count < 3) {
    order_for_output(roots, Classification::OneRealTwoComplex);
    return Classification::OneRealTwoComplex;
  }

  order_for_output(roots, Classification::ThreeRealDistinct);
  const double tol = equal_tol * scale;
  const bool upper_pair = roots[0].re - roots[1].re <= tol;
  const bool lower_pair = roots[1].re - roots[2].re <= tol;
  if (upper_pair && lower_pair && roots[0].re - roots[2].re <= tol) return Classification::TripleRoot;
  if (upper_pair || lower_pair) return Classification::RealWithDouble;
  return Classification::ThreeRealDistinct;
}

}  // namespace cubicfe
