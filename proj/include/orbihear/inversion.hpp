#pragma once

#include <span>
#include <utility>
#include <vector>

#include "orbihear/heat.hpp"
#include "orbihear/polytope.hpp"

namespace orbihear {

struct SampleEntry {
  IntVector direction;  // unsigned representative: first nonzero entry positive
  std::vector<double> r_values;
  std::vector<double> coefficients;
  int leading_t_exponent = 0;
};

struct SpectralSamples {
  std::vector<SampleEntry> entries;
};

struct FitResult {
  double volume = 0.0;
  int label = 0;
  double residual = 0.0;  // root mean square misfit
};

inline constexpr int kDefaultOmegaMax = 12;

/// Direction with its first nonzero entry made positive.
IntVector unsigned_direction(const IntVector& v);

/// `count` points equispaced in (0.3, 2 pi - 0.3), dropping any within
/// `guard` of a resonance 2 pi k / Omega for Omega <= omega_max.
std::vector<double> default_r_grid(int count = 16, int omega_max = kDefaultOmegaMax, double guard = 1e-3);

SpectralSamples synthesize_spectral_samples(const LabeledPolytope& p,
                                            const std::vector<IntVector>& directions,
                                            std::span<const double> r_grid,
                                            SumMode mode = SumMode::Inclusive);

std::vector<IntVector> detect_normal_directions(const SpectralSamples& samples, int dim);

/// Least-squares volume for a fixed label; returns {volume, rms residual}.
std::pair<double, double> fit_volume_for_label(std::span<const double> r, std::span<const double> c,
                                               int dim, int label, SumMode mode);

FitResult fit_facet_parameters(std::span<const double> r, std::span<const double> c, int dim,
                               int omega_max = kDefaultOmegaMax, SumMode mode = SumMode::Inclusive);

/// The two consistent signings (s, -s) of unsigned facet data.
std::pair<std::vector<FacetDatum>, std::vector<FacetDatum>> resolve_signs(
    std::span<const FacetDatum> data);

struct ReconstructionOptions {
  int omega_max = kDefaultOmegaMax;
  SumMode mode = SumMode::Inclusive;
  double tol = 1e-10;  // Minkowski volume tolerance
};

/// Recovered polytope and its negation, each with vertex centroid at the origin.
std::pair<LabeledPolytope, LabeledPolytope> reconstruct_pipeline(const SpectralSamples& samples, int dim,
                                                                 const ReconstructionOptions& options = {});

}  // namespace orbihear
