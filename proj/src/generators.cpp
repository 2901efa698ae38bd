#include "orbihear/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "exact_linalg.hpp"
#include "orbihear/error.hpp"
#include "orbihear/lattice.hpp"

namespace orbihear {

namespace {

constexpr int kMaxAttempts = 10000;

bool parallel_to_any(const std::vector<IntVector>& normals, const IntVector& u) {
  for (const auto& v : normals) {
    if (v == u) return true;
    IntVector neg = v;
    for (auto& x : neg) x = -x;
    if (neg == u) return true;
  }
  return false;
}

IntVector random_normal(int dim, std::mt19937_64& rng) {
  for (;;) {
    IntVector v(static_cast<std::size_t>(dim));
    if (dim == 2) {
      std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
      const double a = angle(rng);
      v[0] = std::llround(8.0 * std::cos(a));
      v[1] = std::llround(8.0 * std::sin(a));
    } else {
      std::uniform_int_distribution<int> entry(-3, 3);
      for (auto& x : v) x = entry(rng);
    }
    if (gcd_of(v) != 0) return primitive(v);
  }
}

// Drops halfspaces that are tight at no vertex of the intersection.
std::vector<LabeledHalfspace> irredundant(int dim, const std::vector<LabeledHalfspace>& hs) {
  std::vector<IntVector> normals;
  for (const auto& h : hs) normals.push_back(h.normal);
  const auto rows = detail::integer_rows(normals);
  std::vector<bool> used(hs.size(), false);
  detail::for_each_combination(static_cast<int>(hs.size()), dim, [&](const std::vector<int>& subset) {
    detail::RationalMatrix a;
    RationalPoint b;
    for (int i : subset) {
      a.push_back(rows[static_cast<std::size_t>(i)]);
      b.push_back(hs[static_cast<std::size_t>(i)].offset);
    }
    auto x = detail::solve_square(std::move(a), std::move(b));
    if (!x) return true;
    for (const auto& h : hs) {
      if (detail::dot(h.normal, *x) > h.offset) return true;
    }
    for (int i : subset) used[static_cast<std::size_t>(i)] = true;
    return true;
  });
  std::vector<LabeledHalfspace> out;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (used[i]) out.push_back(hs[i]);
  }
  return out;
}

}  // namespace

LabeledPolytope random_generic_polytope(int dim, int min_facets, int max_facets, int max_label,
                                        std::mt19937_64& rng) {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::InvalidInput, "random polytopes support dim 2 and 3");
  if (min_facets < dim + 1 || max_facets < min_facets || max_label < 1) {
    throw Error(ErrorCode::InvalidInput, "need dim+1 <= min_facets <= max_facets and max_label >= 1");
  }
  std::uniform_int_distribution<int> facet_count(min_facets, max_facets);
  std::uniform_int_distribution<int> denominator(1, 6);
  std::uniform_int_distribution<int> label(1, max_label);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const int target = facet_count(rng);
    std::vector<IntVector> normals;
    while (static_cast<int>(normals.size()) < target + 2) {
      IntVector u = random_normal(dim, rng);
      if (!parallel_to_any(normals, u)) normals.push_back(std::move(u));
    }
    std::vector<LabeledHalfspace> hs;
    for (auto& u : normals) {
      const int q = denominator(rng);
      std::uniform_int_distribution<int> numerator(q, 3 * q);
      hs.push_back(LabeledHalfspace{std::move(u), Rational(numerator(rng), q), label(rng)});
    }
    hs = irredundant(dim, hs);
    if (static_cast<int>(hs.size()) < min_facets) continue;
    while (static_cast<int>(hs.size()) > target) {
      std::uniform_int_distribution<std::size_t> pick(0, hs.size() - 1);
      hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(pick(rng)));
      hs = irredundant(dim, hs);
    }
    if (static_cast<int>(hs.size()) < min_facets) continue;
    LabeledPolytope p(dim, std::move(hs));
    if (!validate_rational_simple(p).pass) continue;
    if (has_parallel_facets(p)) continue;
    if (has_subpolytopes(facet_fingerprint(p))) continue;
    return p;
  }
  throw Error(ErrorCode::PerturbationFailed, "could not draw a generic polytope");
}

MinkowskiInput random_balanced_input(int dim, int facets, std::mt19937_64& rng) {
  if (dim < 2 || facets < dim + 1) throw Error(ErrorCode::InvalidInput, "need dim >= 2 and facets >= dim + 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> offset(1.0, 2.0);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Eigen::VectorXd> normals;
    std::vector<double> offsets;
    for (int i = 0; i < facets; ++i) {
      Eigen::VectorXd u(dim);
      for (int k = 0; k < dim; ++k) u(k) = gauss(rng);
      normals.push_back(u.normalized());
      offsets.push_back(offset(rng));
    }
    const auto m = measure_polytope(normals, offsets);
    if (!(m.volume > 0.0)) continue;
    double largest = 0.0;
    for (double v : m.facet_volumes) largest = std::max(largest, v);
    bool ok = true;
    for (double v : m.facet_volumes) ok = ok && v > 1e-2 * largest;
    for (std::size_t i = 0; ok && i < normals.size(); ++i) {
      for (std::size_t j = 0; ok && j < i; ++j) ok = std::abs(normals[i].dot(normals[j])) < 1.0 - 1e-6;
    }
    if (!ok) continue;
    return MinkowskiInput{normals, m.facet_volumes};
  }
  throw Error(ErrorCode::PerturbationFailed, "could not draw balanced facet data");
}

}  // namespace orbihear
