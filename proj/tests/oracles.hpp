// Independent reference computations used by the tests. Nothing here calls
// into the library; each oracle is a direct, slow restatement of the math.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

constexpr double kPi = std::numbers::pi;

/// sum over l of 1 / (2 - 2 cos(r + 2 pi l / omega)), l from `first`.
inline double rotation_sum(double r, int omega, int first) {
  long double acc = 0.0L;
  for (int l = first; l < omega; ++l) {
    const long double angle = r + 2.0L * std::numbers::pi_v<long double> * l / omega;
    acc += 1.0L / (2.0L - 2.0L * std::cos(angle));
  }
  return static_cast<double>(acc);
}

/// Forward error bound for the rotation sum evaluated in double: an absolute angle
/// error of a few ulps of (|r| + 2pi) changes the term 1/(4 sin^2(x/2)) by a relative
/// amount 2 * err / |tan(x/2)|, which grows near resonance.
inline double rotation_sum_error_bound(double r, int omega, int first) {
  constexpr double kUlps = 8.0;
  const long double err = kUlps * std::numeric_limits<double>::epsilon() * (std::abs(r) + 2.0 * std::numbers::pi);
  long double bound = 0.0L;
  for (int l = first; l < omega; ++l) {
    const long double angle = r + 2.0L * std::numbers::pi_v<long double> * l / omega;
    const long double term = 1.0L / (2.0L - 2.0L * std::cos(angle));
    bound += term * (2.0L * err / std::abs(std::tan(angle / 2)) + kUlps * std::numeric_limits<double>::epsilon());
  }
  return static_cast<double>(bound);
}

inline double rotation_closed_form(double r, int omega) {
  return static_cast<double>(omega) * omega / (2.0 - 2.0 * std::cos(omega * r));
}

/// Shoelace area of a polygon given in cyclic order.
inline double polygon_area(const std::vector<Eigen::Vector2d>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * std::abs(a);
}

inline std::int64_t det2(const std::array<std::array<std::int64_t, 3>, 3>& m) {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

inline std::int64_t det3(const std::array<std::array<std::int64_t, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Number of integer points x with x = sum_i t_i row_i, t in [0,1)^n, i.e.
/// the index of the row lattice in Z^n. n is 2 or 3; rows must be independent.
/// Coordinates t are obtained by Cramer's rule in integers, so membership
/// tests are exact.
inline std::int64_t lattice_index_by_counting(const std::array<std::array<std::int64_t, 3>, 3>& rows, int n) {
  const std::int64_t det = n == 2 ? det2(rows) : det3(rows);
  if (det == 0) return 0;
  std::array<std::int64_t, 3> lo{0, 0, 0};
  std::array<std::int64_t, 3> hi{0, 0, 0};
  for (int mask = 0; mask < (1 << n); ++mask) {
    for (int k = 0; k < n; ++k) {
      std::int64_t s = 0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1 << i)) s += rows[i][k];
      }
      lo[k] = std::min(lo[k], s);
      hi[k] = std::max(hi[k], s);
    }
  }
  std::int64_t count = 0;
  std::array<std::int64_t, 3> x{0, 0, 0};
  const std::int64_t zmax = n == 3 ? hi[2] : 0;
  const std::int64_t zmin = n == 3 ? lo[2] : 0;
  for (x[0] = lo[0]; x[0] <= hi[0]; ++x[0]) {
    for (x[1] = lo[1]; x[1] <= hi[1]; ++x[1]) {
      for (x[2] = zmin; x[2] <= zmax; ++x[2]) {
        // t_i = det(rows with row i replaced by x) / det
        bool inside = true;
        for (int i = 0; i < n && inside; ++i) {
          auto m = rows;
          for (int k = 0; k < n; ++k) m[i][k] = x[k];
          const std::int64_t num = n == 2 ? det2(m) : det3(m);
          // 0 <= num/det < 1
          inside = det > 0 ? (num >= 0 && num < det) : (num <= 0 && num > det);
        }
        if (inside) ++count;
      }
    }
  }
  return count;
}

/// Literal five-index evaluation of s/6 + rho_kk/6 + R_iksh B_ki B_hs/3 +
/// R_ikth B_kt B_hi/3 - R_kaha B_ks B_hs.
inline double tau_naive(int m, double s, const Eigen::MatrixXd& rho, const std::vector<double>& R,
                        const Eigen::MatrixXd& B) {
  auto r = [&](int i, int k, int a, int b) { return R[static_cast<std::size_t>(((i * m + k) * m + a) * m + b)]; };
  double total = s / 6.0 + rho.trace() / 6.0;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int a = 0; a < m; ++a)
        for (int h = 0; h < m; ++h) {
          total += r(i, k, a, h) * B(k, i) * B(h, a) / 3.0;
          total += r(i, k, a, h) * B(k, a) * B(h, i) / 3.0;
        }
  for (int k = 0; k < m; ++k)
    for (int a = 0; a < m; ++a)
      for (int h = 0; h < m; ++h)
        for (int c = 0; c < m; ++c) total -= r(k, a, h, a) * B(k, c) * B(h, c);
  return total;
}

/// Constant sectional curvature tensor R_ijkl = K (g_ik g_jl - g_il g_jk)
/// in an orthonormal frame of dimension m.
inline std::vector<double> constant_curvature(int m, double K) {
  std::vector<double> R(static_cast<std::size_t>(m) * m * m * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const double v = K * ((i == k) * (j == l) - (i == l) * (j == k));
          R[static_cast<std::size_t>(((i * m + j) * m + k) * m + l)] = v;
        }
  return R;
}

/// |R|^2, |rho|^2 and s^2 of a curvature tensor by full component sums, with
/// rho_jl = sum_i R_ijil and s = sum_j rho_jj.
inline std::array<double, 3> curvature_norms(int m, const std::vector<double>& R) {
  auto r = [&](int i, int k, int a, int b) { return R[static_cast<std::size_t>(((i * m + k) * m + a) * m + b)]; };
  double riem = 0.0;
  for (double v : R) riem += v * v;
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i) rho(j, l) += r(i, j, i, l);
  const double s = rho.trace();
  return {riem, rho.squaredNorm(), s * s};
}

/// Multiplicity of eigenvalue l(l+1) on S^2 / Z_p by counting weights.
inline int football_weight_count(int p, int l) {
  int count = 0;
  for (int m = -l; m <= l; ++m) count += (m % p == 0) ? 1 : 0;
  return count;
}

/// Equivariant football trace by the literal double sum, in long double.
inline double football_trace(int p, double alpha, double t, int l_max) {
  long double acc = 0.0L;
  for (int l = 0; l <= l_max; ++l) {
    long double w = 0.0L;
    for (int m = -l; m <= l; ++m) {
      if (m % p == 0) w += std::cos(static_cast<long double>(m) * alpha);
    }
    acc += w * std::exp(-static_cast<long double>(t) * l * (l + 1));
  }
  return static_cast<double>(acc);
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// 360 b2 = (8 pi^2/(n-2)!) int(2 c2 - c1^2) + ((10n-3)/(2n)) int s^2
inline double b2_forward(double s_sq, double c1sq, double c2, int n) {
  return (8.0 * kPi * kPi / factorial(n - 2) * (2.0 * c2 - c1sq) + (10.0 * n - 3.0) / (2.0 * n) * s_sq) / 360.0;
}

}  // namespace oracle
