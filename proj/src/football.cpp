#include "orbihear/football.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "orbihear/error.hpp"
#include "orbihear/kernels.hpp"

namespace orbihear {

namespace {

constexpr double kTailBound = 1e-14;
constexpr double kTailExponent = 35.0;
constexpr double kMaxSampleT = 0.05;
constexpr double kMinDecadeRatio = 10.0;
constexpr double kMaxCondition = 1e12;

void require_order(int p) {
  if (p < 1) throw Error(ErrorCode::InvalidInput, "football order must be at least 1");
}

}  // namespace

std::vector<FootballMode> football_spectrum(int p, int l_max) {
  require_order(p);
  if (l_max < 0) throw Error(ErrorCode::InvalidInput, "l_max must be nonnegative");
  std::vector<FootballMode> out;
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -(l / p) * p; m <= l; m += p) {
      out.push_back(FootballMode{l, m, static_cast<double>(l) * (l + 1)});
    }
  }
  return out;
}

int football_multiplicity(int p, int l) {
  require_order(p);
  if (l < 0) throw Error(ErrorCode::InvalidInput, "degree must be nonnegative");
  return 2 * (l / p) + 1;
}

int default_l_max(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidInput, "t must be positive");
  return static_cast<int>(std::ceil(std::sqrt(kTailExponent / t)));
}

double equivariant_heat_trace(int p, double alpha, double t, int l_max) {
  require_order(p);
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidInput, "t must be positive");
  if (l_max < 0 || std::exp(-t * static_cast<double>(l_max) * l_max) >= kTailBound) {
    throw Error(ErrorCode::TruncationTooCoarse, "l_max = " + std::to_string(l_max) + " leaves a tail above 1e-14");
  }
  // weight(l) = sum_{|m| <= l, p | m} cos(m alpha) = sin((2K+1) b / 2) / sin(b / 2)
  // with K = floor(l/p) and b = p alpha reduced once to [-pi, pi]; the
  // closed form avoids drift from summing cosines of huge arguments.
  const double beta = std::remainder(static_cast<double>(p) * alpha, 2.0 * std::numbers::pi);
  const double half = 0.5 * beta;
  const double denom = std::sin(half);
  std::vector<double> partial(static_cast<std::size_t>(l_max / p) + 1);
  for (std::size_t k = 0; k < partial.size(); ++k) {
    const double count = 2.0 * static_cast<double>(k) + 1.0;
    partial[k] = denom == 0.0 ? count : std::sin(count * half) / denom;
  }
  std::vector<double> weights(static_cast<std::size_t>(l_max) + 1);
  std::vector<double> lambdas(weights.size());
  for (int l = 0; l <= l_max; ++l) {
    weights[static_cast<std::size_t>(l)] = partial[static_cast<std::size_t>(l / p)];
    lambdas[static_cast<std::size_t>(l)] = static_cast<double>(l) * (l + 1);
  }
  return kernels::active().weighted_exp_sum(weights, lambdas, t);
}

double equivariant_heat_trace(int p, double alpha, double t) {
  return equivariant_heat_trace(p, alpha, t, default_l_max(t));
}

FootballPrediction asymptotic_prediction(int p, double alpha, SumMode mode) {
  require_order(p);
  FootballPrediction out;
  const double turns = alpha / (2.0 * std::numbers::pi);
  if (std::abs(turns - std::nearbyint(turns)) < 1e-12) {
    out.leading = 1.0 / p;
    out.constant = (static_cast<double>(p) * p + 1.0) / (6.0 * p);
    return out;
  }
  out.constant = 2.0 / p * rotation_sum(alpha, p, mode);
  return out;
}

Extrapolation extrapolate_constant_term(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 4) throw Error(ErrorCode::IllConditioned, "need at least 4 samples");
  double t_min = samples.front().first;
  double t_max = t_min;
  for (const auto& [t, value] : samples) {
    if (!(t > 0.0) || t > kMaxSampleT || !std::isfinite(value)) {
      throw Error(ErrorCode::IllConditioned, "sample t = " + std::to_string(t) + " outside (0, 0.05]");
    }
    t_min = std::min(t_min, t);
    t_max = std::max(t_max, t);
  }
  if (t_max / t_min < kMinDecadeRatio) throw Error(ErrorCode::IllConditioned, "samples span less than a decade");

  const auto rows = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd a(rows, 3);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = samples[static_cast<std::size_t>(i)].first;
    a(i, 0) = 1.0 / t;
    a(i, 1) = 1.0;
    a(i, 2) = t;
    b(i) = samples[static_cast<std::size_t>(i)].second;
  }
  const Eigen::VectorXd col_scale = a.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = a * col_scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Extrapolation out;
  out.condition_number = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  if (!(out.condition_number <= kMaxCondition)) {
    throw Error(ErrorCode::IllConditioned, "condition number " + std::to_string(out.condition_number));
  }
  const Eigen::VectorXd coef = svd.solve(b).cwiseQuotient(col_scale);
  out.c_minus1 = coef(0);
  out.c0 = coef(1);
  out.c1 = coef(2);
  out.rms_residual = std::sqrt((a * coef - b).squaredNorm() / static_cast<double>(rows));
  return out;
}

std::pair<double, double> suggested_t_window(int p, double alpha) {
  require_order(p);
  const double two_pi = 2.0 * std::numbers::pi;
  const double turns = p * alpha / two_pi;
  const double delta = std::abs(turns - std::nearbyint(turns)) * two_pi;
  if (delta < 1e-12) return {2e-4, 5e-3};
  // Smallest rotation angle in the orbit alpha + 2 pi l / p.
  const double theta = delta / p;
  const double t_max = std::min(5e-3, 2.5e-4 * theta * theta * theta);
  return {t_max / 20.0, t_max};
}

std::vector<std::pair<double, double>> football_trace_samples(int p, double alpha, double t_min, double t_max,
                                                              int points) {
  if (points < 2 || !(t_min > 0.0) || !(t_max > t_min)) {
    throw Error(ErrorCode::InvalidInput, "need points >= 2 and 0 < tmin < tmax");
  }
  std::vector<std::pair<double, double>> out;
  const double ratio = std::log(t_max / t_min);
  for (int i = 0; i < points; ++i) {
    const double t = t_min * std::exp(ratio * i / (points - 1));
    out.emplace_back(t, equivariant_heat_trace(p, alpha, t));
  }
  return out;
}

}  // namespace orbihear
