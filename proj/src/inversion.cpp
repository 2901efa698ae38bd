#include "orbihear/inversion.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "orbihear/error.hpp"
#include "orbihear/kernels.hpp"
#include "orbihear/lattice.hpp"
#include "orbihear/minkowski.hpp"
#include "orbihear/parallel.hpp"

namespace orbihear {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGridMargin = 0.3;
constexpr std::size_t kMinSamples = 8;
constexpr double kFitTolerance = 1e-6;
constexpr double kSignBalanceTol = 1e-8;
constexpr double kParallelTol = 1e-12;
constexpr double kOffsetRounding = 1e-12;

void require_same_length(std::span<const double> r, std::span<const double> c) {
  if (r.size() != c.size()) throw Error(ErrorCode::ShapeMismatch, "r values and coefficients differ in length");
}

}  // namespace

IntVector unsigned_direction(const IntVector& v) {
  IntVector out = v;
  const auto first = std::find_if(out.begin(), out.end(), [](std::int64_t x) { return x != 0; });
  if (first == out.end()) throw Error(ErrorCode::ZeroVector, "direction is zero");
  if (*first < 0) {
    for (auto& x : out) x = -x;
  }
  return out;
}

std::vector<double> default_r_grid(int count, int omega_max, double guard) {
  if (count < 1) throw Error(ErrorCode::InvalidInput, "grid needs at least one point");
  std::vector<double> out;
  const double span = kTwoPi - 2.0 * kGridMargin;
  for (int k = 1; k <= count; ++k) {
    const double r = kGridMargin + span * k / (count + 1);
    bool resonant = false;
    for (int omega = 1; omega <= omega_max && !resonant; ++omega) {
      const double turns = r * omega / kTwoPi;
      resonant = std::abs(turns - std::nearbyint(turns)) * kTwoPi / omega < guard;
    }
    if (!resonant) out.push_back(r);
  }
  return out;
}

SpectralSamples synthesize_spectral_samples(const LabeledPolytope& p, const std::vector<IntVector>& directions,
                                            std::span<const double> r_grid, SumMode mode) {
  if (has_parallel_facets(p)) throw Error(ErrorCode::ParallelFacets, "polytope has parallel facets");
  for (std::size_t j = 1; j < r_grid.size(); ++j) {
    if (!(r_grid[j] > r_grid[j - 1])) throw Error(ErrorCode::InvalidInput, "r grid must be strictly increasing");
  }
  SpectralSamples out;
  out.entries.resize(directions.size());
  parallel_for(directions.size(), [&](std::size_t i) {
    SampleEntry& entry = out.entries[i];
    entry.direction = unsigned_direction(primitive(directions[i]));
    const ExpansionPlan plan(p, entry.direction);
    entry.leading_t_exponent = plan.leading_exponent();
    entry.r_values.assign(r_grid.begin(), r_grid.end());
    for (double r : r_grid) {
      double c = 0.0;
      for (const HeatTerm& term : plan.evaluate(r, mode).terms) {
        if (term.t_exponent == entry.leading_t_exponent) c += term.coefficient;
      }
      entry.coefficients.push_back(c);
    }
  });
  return out;
}

namespace {

// Entries whose leading exponent marks a facet normal.
std::vector<const SampleEntry*> facet_entries(const SpectralSamples& samples, int dim) {
  std::vector<const SampleEntry*> out;
  for (const auto& e : samples.entries) {
    if (e.leading_t_exponent != -(dim - 1)) continue;
    if (static_cast<int>(e.direction.size()) != dim) {
      throw Error(ErrorCode::ShapeMismatch, "sample direction has the wrong dimension");
    }
    out.push_back(&e);
  }
  return out;
}

}  // namespace

std::vector<IntVector> detect_normal_directions(const SpectralSamples& samples, int dim) {
  std::vector<IntVector> out;
  for (const SampleEntry* e : facet_entries(samples, dim)) out.push_back(e->direction);
  return out;
}

std::pair<double, double> fit_volume_for_label(std::span<const double> r, std::span<const double> c, int dim,
                                               int label, SumMode mode) {
  require_same_length(r, c);
  const auto& k = kernels::active();
  const std::vector<double> basis = facet_coefficient_curve(dim, 1.0, label, r, mode);
  const double bb = k.dot(basis, basis);
  const double volume = bb > 0.0 ? k.dot(basis, c) / bb : 0.0;
  double sq = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double e = c[j] - volume * basis[j];
    sq += e * e;
  }
  return {volume, c.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(c.size()))};
}

FitResult fit_facet_parameters(std::span<const double> r, std::span<const double> c, int dim, int omega_max,
                               SumMode mode) {
  require_same_length(r, c);
  if (r.size() < kMinSamples) {
    throw Error(ErrorCode::InsufficientSamples, "need at least 8 samples, got " + std::to_string(r.size()));
  }
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  FitResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int omega = 1; omega <= omega_max; ++omega) {
    std::pair<double, double> fit;
    try {
      fit = fit_volume_for_label(r, c, dim, omega, mode);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateParameter) continue;
      throw;
    }
    if (!(fit.first > 0.0)) continue;
    if (fit.second < best.residual) best = FitResult{fit.first, omega, fit.second};
  }
  if (best.label == 0 || !(best.residual < kFitTolerance * scale)) {
    throw Error(ErrorCode::FitFailure, "no label up to " + std::to_string(omega_max) + " fits the curve");
  }
  return best;
}

std::pair<std::vector<FacetDatum>, std::vector<FacetDatum>> resolve_signs(std::span<const FacetDatum> data) {
  const std::size_t d = data.size();
  if (d > kMaxExhaustiveFacets) {
    throw Error(ErrorCode::TooManyFacets, std::to_string(d) + " facets exceed the exhaustive limit");
  }
  if (d == 0) throw Error(ErrorCode::NoConsistentSigning, "no facet data");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(data[i].unit_normal.dot(data[j].unit_normal)) > 1.0 - kParallelTol) {
        throw Error(ErrorCode::AmbiguousSigning, "directions " + std::to_string(j) + " and " + std::to_string(i) +
                                                     " are parallel");
      }
    }
  }
  const auto n = data.front().unit_normal.size();
  std::vector<Eigen::VectorXd> weighted;
  double total = 0.0;
  for (const auto& f : data) {
    weighted.push_back(f.volume * f.unit_normal);
    total += f.volume;
  }
  const double tol = kSignBalanceTol * std::max(1.0, total);

  // Gray-code walk over signs of data[1..d-1]; data[0] stays positive. The
  // running sum is rebuilt periodically to bound drift.
  const std::uint64_t count = std::uint64_t{1} << (d - 1);
  std::vector<std::uint64_t> solutions;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  std::uint64_t mask = 0;  // bit j set: data[j+1] negated
  auto rebuild = [&] {
    sum = weighted[0];
    for (std::size_t j = 1; j < d; ++j) sum += ((mask >> (j - 1)) & 1U) ? -weighted[j] : weighted[j];
  };
  rebuild();
  for (std::uint64_t g = 0; g < count; ++g) {
    if (g > 0) {
      const int bit = std::countr_zero(g);
      mask ^= std::uint64_t{1} << bit;
      if ((g & 4095U) == 0) {
        rebuild();
      } else {
        const Eigen::VectorXd& w = weighted[static_cast<std::size_t>(bit) + 1];
        if ((mask >> bit) & 1U) {
          sum -= 2.0 * w;
        } else {
          sum += 2.0 * w;
        }
      }
    }
    if (sum.norm() < tol) {
      solutions.push_back(mask);
      if (solutions.size() > 1) break;
    }
  }
  if (solutions.empty()) throw Error(ErrorCode::NoConsistentSigning, "no signing balances the facet data");
  if (solutions.size() > 1) throw Error(ErrorCode::AmbiguousSigning, "several signings balance (subpolytope)");

  std::pair<std::vector<FacetDatum>, std::vector<FacetDatum>> out;
  for (std::size_t i = 0; i < d; ++i) {
    const bool negated = i > 0 && ((solutions.front() >> (i - 1)) & 1U);
    FacetDatum plus = data[i];
    if (negated) plus.unit_normal = -plus.unit_normal;
    FacetDatum minus = plus;
    minus.unit_normal = -minus.unit_normal;
    out.first.push_back(std::move(plus));
    out.second.push_back(std::move(minus));
  }
  return out;
}

std::pair<LabeledPolytope, LabeledPolytope> reconstruct_pipeline(const SpectralSamples& samples, int dim,
                                                                 const ReconstructionOptions& options) {
  if (dim < 2) throw Error(ErrorCode::InvalidInput, "dimension must be at least 2");
  const std::vector<const SampleEntry*> facets = facet_entries(samples, dim);

  std::vector<FitResult> fits(facets.size());
  parallel_for(facets.size(), [&](std::size_t i) {
    fits[i] = fit_facet_parameters(facets[i]->r_values, facets[i]->coefficients, dim, options.omega_max,
                                   options.mode);
  });

  std::vector<FacetDatum> data;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    FacetDatum f;
    f.unit_normal = to_double(facets[i]->direction).normalized();
    f.volume = fits[i].volume;
    f.label = fits[i].label;
    data.push_back(std::move(f));
  }
  const auto signed_data = resolve_signs(data).first;

  MinkowskiInput input;
  for (const auto& f : signed_data) {
    input.normals.push_back(f.unit_normal);
    input.volumes.push_back(f.volume);
  }
  std::vector<double> offsets;
  if (dim == 2) {
    offsets = polygon_offsets(input, reconstruct_2d(input));
  } else {
    MinkowskiOptions mo;
    mo.tol = options.tol;
    offsets = reconstruct_nd(input, mo).offsets;
  }

  std::vector<LabeledHalfspace> hs;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const IntVector dir = primitive(facets[i]->direction);
    const Eigen::VectorXd raw = to_double(dir);
    const bool flipped = signed_data[i].unit_normal.dot(raw) < 0.0;
    LabeledHalfspace h;
    h.normal = dir;
    if (flipped) {
      for (auto& x : h.normal) x = -x;
    }
    h.offset = approximate_rational(offsets[i] * raw.norm(), kOffsetRounding);
    h.label = signed_data[i].label;
    hs.push_back(std::move(h));
  }
  LabeledPolytope plus(dim, std::move(hs));
  return {plus, negate(plus)};
}

}  // namespace orbihear
