#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "orbihear/heat.hpp"

namespace orbihear {

/// A spherical harmonic of degree l and weight m surviving the Z_p quotient.
struct FootballMode {
  int l = 0;
  int m = 0;
  double eigenvalue = 0.0;
};

std::vector<FootballMode> football_spectrum(int p, int l_max);

/// 2 floor(l/p) + 1
int football_multiplicity(int p, int l);

/// ceil(sqrt(35 / t)), so that exp(-t l_max^2) < 1e-15.
int default_l_max(double t);

/// sum_{l <= l_max} exp(-t l(l+1)) sum_{|m| <= l, p | m} cos(m alpha).
/// Throws TruncationTooCoarse when exp(-t l_max^2) >= 1e-14.
double equivariant_heat_trace(int p, double alpha, double t, int l_max);
double equivariant_heat_trace(int p, double alpha, double t);

struct FootballPrediction {
  std::optional<double> leading;  // coefficient of 1/t (identity only)
  double constant = 0.0;
};

/// Small-t prediction from the fixed-point formula. alpha = 0 is the
/// identity; otherwise the two poles contribute 2/p * rotation_sum(alpha, p).
FootballPrediction asymptotic_prediction(int p, double alpha, SumMode mode = SumMode::Inclusive);

struct Extrapolation {
  double c_minus1 = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double condition_number = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares fit of c_{-1}/t + c0 + c1 t. Needs >= 4 samples in
/// (0, 0.05] spanning a decade; throws IllConditioned otherwise.
Extrapolation extrapolate_constant_term(std::span<const std::pair<double, double>> samples);

/// Sample window [t_min, t_max] for extrapolating the trace of rotation by
/// alpha. The expansion coefficients grow like theta^-(2k+2), where theta is
/// the smallest orbit angle alpha + 2 pi l / p measured from 2 pi Z, so the
/// window shrinks like theta^3; the identity uses [2e-4, 5e-3].
std::pair<double, double> suggested_t_window(int p, double alpha);

/// Log-spaced t grid and exact traces, ready for extrapolation.
std::vector<std::pair<double, double>> football_trace_samples(int p, double alpha, double t_min,
                                                              double t_max, int points);

}  // namespace orbihear
