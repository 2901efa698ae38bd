// Reference implementations. Every SIMD variant is tested against these.

#include <cmath>

#include "orbihear/kernels.hpp"

namespace orbihear::kernels {

namespace {

void rotation_sum(std::span<const double> sin_half_r, std::span<const double> cos_half_r,
                  std::span<const double> sin_half_phase, std::span<const double> cos_half_phase,
                  std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    double acc = 0.0;
    for (std::size_t l = 0; l < sin_half_phase.size(); ++l) {
      const double s = sin_half_r[j] * cos_half_phase[l] + cos_half_r[j] * sin_half_phase[l];
      acc += 1.0 / (4.0 * s * s);
    }
    out[j] = acc;
  }
}

double pairwise(std::span<const double> w, std::span<const double> lambda, double t) {
  if (w.size() <= 32) {
    double acc = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) acc += w[l] * std::exp(-t * lambda[l]);
    return acc;
  }
  const std::size_t half = w.size() / 2;
  return pairwise(w.first(half), lambda.first(half), t) + pairwise(w.subspan(half), lambda.subspan(half), t);
}

double weighted_exp_sum(std::span<const double> weights, std::span<const double> lambdas, double t) {
  return pairwise(weights, lambdas, t);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{rotation_sum, weighted_exp_sum, dot};
  return table;
}

}  // namespace orbihear::kernels
