#pragma once

#include <optional>
#include <string>

namespace orbihear {

/// Global curvature and characteristic-class integrals of a compact toric
/// Kahler orbifold of complex dimension n.
struct CurvatureIntegrals {
  int n = 2;
  std::optional<double> b2_total;
  double int_c1sq = 0.0;
  double int_c2 = 0.0;
  double vol = 1.0;
  double c1_omega = 0.0;
  std::optional<double> int_s_sq;
};

double average_scalar_curvature(const CurvatureIntegrals& d);
double s_squared_from_heat(const CurvatureIntegrals& d);
double rho_squared_identity(double int_s_sq, double int_c1sq, int n);
double R_squared_identity(double int_s_sq, double int_c1sq, double int_c2, int n);
/// Inverse of s_squared_from_heat: b2 from the three integrals.
double b2_from_integrals(double int_s_sq, double int_c1sq, double int_c2, int n);
double calabi_functional(double int_s_sq, double s_bar, double vol);

struct CscReport {
  bool is_csc = false;
  double s_bar = 0.0;
  double int_s_sq = 0.0;
  double rho_sq = 0.0;
  double R_sq = 0.0;
  double calabi = 0.0;
  double target = 0.0;  // (2 pi c1.[w]^{n-1} / (n-1)!)^2 / Vol
  bool calabi_negative = false;
};

/// Throws MissingInput when neither int_s_sq nor b2_total is present,
/// InvalidInput for n < 2 or vol <= 0.
CscReport is_csc(const CurvatureIntegrals& d, double tol);

}  // namespace orbihear
