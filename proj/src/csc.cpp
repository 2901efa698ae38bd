#include "orbihear/csc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "orbihear/error.hpp"

namespace orbihear {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

void require_dimension(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "complex dimension must be at least 2, got " + std::to_string(n));
}

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

}  // namespace

double average_scalar_curvature(const CurvatureIntegrals& d) {
  require_dimension(d.n);
  if (!(d.vol > 0.0)) throw Error(ErrorCode::InvalidInput, "volume must be positive");
  return 2.0 * std::numbers::pi * d.c1_omega / (d.vol * factorial(d.n - 1));
}

double s_squared_from_heat(const CurvatureIntegrals& d) {
  require_dimension(d.n);
  if (!d.b2_total) throw Error(ErrorCode::MissingInput, "b2_total is required");
  const int n = d.n;
  return 2.0 * n / (10.0 * n - 3.0) *
         (360.0 * *d.b2_total - 8.0 * kPiSq / factorial(n - 2) * (2.0 * d.int_c2 - d.int_c1sq));
}

double rho_squared_identity(double int_s_sq, double int_c1sq, int n) {
  require_dimension(n);
  return (n + 3.0) / (4.0 * n) * int_s_sq - 4.0 * kPiSq / factorial(n - 2) * int_c1sq;
}

double R_squared_identity(double int_s_sq, double int_c1sq, double int_c2, int n) {
  require_dimension(n);
  return 8.0 * kPiSq / factorial(n - 2) * (int_c2 - int_c1sq) + 0.25 * int_s_sq;
}

double b2_from_integrals(double int_s_sq, double int_c1sq, double int_c2, int n) {
  const double rho = rho_squared_identity(int_s_sq, int_c1sq, n);
  const double riem = R_squared_identity(int_s_sq, int_c1sq, int_c2, n);
  return (2.0 * riem - 2.0 * rho + 5.0 * int_s_sq) / 360.0;
}

double calabi_functional(double int_s_sq, double s_bar, double vol) {
  if (!(vol > 0.0)) throw Error(ErrorCode::InvalidInput, "volume must be positive");
  return int_s_sq - s_bar * s_bar * vol;
}

CscReport is_csc(const CurvatureIntegrals& d, double tol) {
  require_dimension(d.n);
  if (!(d.vol > 0.0)) throw Error(ErrorCode::InvalidInput, "volume must be positive");
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be nonnegative");
  if (!d.int_s_sq && !d.b2_total) {
    throw Error(ErrorCode::MissingInput, "need int_s_sq or b2_total to determine the integral of s^2");
  }
  CscReport out;
  out.int_s_sq = d.int_s_sq ? *d.int_s_sq : s_squared_from_heat(d);
  out.s_bar = average_scalar_curvature(d);
  out.rho_sq = rho_squared_identity(out.int_s_sq, d.int_c1sq, d.n);
  out.R_sq = R_squared_identity(out.int_s_sq, d.int_c1sq, d.int_c2, d.n);
  out.calabi = calabi_functional(out.int_s_sq, out.s_bar, d.vol);
  const double pairing = 2.0 * std::numbers::pi * d.c1_omega / factorial(d.n - 1);
  out.target = pairing * pairing / d.vol;
  out.calabi_negative = out.calabi < 0.0;
  out.is_csc = std::abs(out.int_s_sq - out.target) <= tol * std::max(1.0, out.int_s_sq);
  return out;
}

}  // namespace orbihear
