#include "orbihear/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "halfspace_geometry.hpp"
#include "orbihear/error.hpp"

namespace orbihear {

namespace {

constexpr double kBalanceTol = 1e-8;
constexpr double kUnitTol = 1e-9;
constexpr double kDistinctTol = 1e-12;
constexpr double kMinStep = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr double kDegenerateSine = 1e-6;
constexpr double kRecessionTol = 1e-12;

Eigen::MatrixXd normal_matrix(const std::vector<Eigen::VectorXd>& normals) {
  const int n = static_cast<int>(normals.front().size());
  Eigen::MatrixXd u(n, static_cast<Eigen::Index>(normals.size()));
  for (std::size_t i = 0; i < normals.size(); ++i) u.col(static_cast<Eigen::Index>(i)) = normals[i];
  return u;
}

// True when some nonzero x has x . u_i <= 0 for every normal, i.e. every
// cell with these normals is unbounded. A nontrivial cone either contains a
// line (normals do not span) or has an extreme ray cut out by n - 1 normals.
bool has_recession_direction(const std::vector<Eigen::VectorXd>& normals) {
  const int n = static_cast<int>(normals.front().size());
  const Eigen::MatrixXd u = normal_matrix(normals).transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> full(u);
  full.setThreshold(kDistinctTol);
  if (full.rank() < n) return true;
  const int d = static_cast<int>(normals.size());
  std::vector<int> pick(static_cast<std::size_t>(n - 1));
  std::function<bool(int, int)> search = [&](int depth, int from) {
    if (depth == n - 1) {
      Eigen::MatrixXd sub(n - 1, n);
      for (int k = 0; k < n - 1; ++k) sub.row(k) = u.row(pick[static_cast<std::size_t>(k)]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      lu.setThreshold(kDistinctTol);
      if (lu.rank() != n - 1) return false;
      const Eigen::VectorXd ray = lu.kernel().col(0).normalized();
      const Eigen::VectorXd proj = u * ray;
      return proj.maxCoeff() <= kRecessionTol || proj.minCoeff() >= -kRecessionTol;
    }
    for (int i = from; i < d; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      if (search(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return search(0, 0);
}

// Shared validation; returns volumes projected onto the balanced subspace.
Eigen::VectorXd validated_volumes(const MinkowskiInput& input, std::size_t min_normals) {
  if (input.normals.size() != input.volumes.size()) {
    throw Error(ErrorCode::ShapeMismatch, "normals and volumes differ in length");
  }
  if (input.normals.size() < min_normals) {
    throw Error(ErrorCode::DegenerateInput, "need at least " + std::to_string(min_normals) + " normals");
  }
  const int n = input.dim();
  for (std::size_t i = 0; i < input.normals.size(); ++i) {
    if (input.normals[i].size() != n) throw Error(ErrorCode::ShapeMismatch, "normals differ in dimension");
    if (std::abs(input.normals[i].norm() - 1.0) > kUnitTol) {
      throw Error(ErrorCode::InvalidInput, "normal " + std::to_string(i) + " is not a unit vector");
    }
    if (!(input.volumes[i] > 0.0) || !std::isfinite(input.volumes[i])) {
      throw Error(ErrorCode::InvalidInput, "volume " + std::to_string(i) + " is not positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((input.normals[i] - input.normals[j]).norm() < kDistinctTol) {
        throw Error(ErrorCode::DegenerateInput, "normals " + std::to_string(j) + " and " + std::to_string(i) +
                                                    " coincide");
      }
    }
  }
  const Eigen::MatrixXd u = normal_matrix(input.normals);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(u);
  if (lu.rank() < n) throw Error(ErrorCode::DegenerateInput, "normals do not span the ambient space");

  const Eigen::VectorXd nu = Eigen::Map<const Eigen::VectorXd>(input.volumes.data(),
                                                               static_cast<Eigen::Index>(input.volumes.size()));
  const Eigen::VectorXd residual = u * nu;
  if (residual.norm() >= kBalanceTol * nu.sum()) {
    throw Error(ErrorCode::BalanceViolation, "volume-weighted normals sum to a vector of norm " +
                                                 std::to_string(residual.norm()));
  }
  const Eigen::VectorXd correction = u.transpose() * (u * u.transpose()).ldlt().solve(residual);
  return nu - correction;
}

struct State {
  std::vector<double> offsets;
  FloatPolytopeMeasures m;
  bool all_facets = false;
};

State measure(const std::vector<Eigen::VectorXd>& normals, std::vector<double> offsets) {
  State s;
  s.m = measure_polytope(normals, offsets);
  s.offsets = std::move(offsets);
  s.all_facets = s.m.volume > 0.0 &&
                 std::all_of(s.m.facet_volumes.begin(), s.m.facet_volumes.end(), [](double v) { return v > 0.0; });
  return s;
}

Eigen::VectorXd volumes_of(const State& s) {
  return Eigen::Map<const Eigen::VectorXd>(s.m.facet_volumes.data(),
                                           static_cast<Eigen::Index>(s.m.facet_volumes.size()));
}

double length_scale(const State& s) {
  double scale = 0.0;
  for (const auto& v : s.m.vertices) scale = std::max(scale, v.norm());
  for (double c : s.offsets) scale = std::max(scale, std::abs(c));
  return std::max(scale, 1e-300);
}

// d nu_j / d c_i for unit normals.
Eigen::MatrixXd jacobian(const std::vector<Eigen::VectorXd>& normals, const State& s) {
  const auto d = static_cast<Eigen::Index>(normals.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d, d);
  std::vector<bool> needs_fd(normals.size(), false);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i == j || s.m.ridge_volumes(i, j) <= 0.0) continue;
      const double cosine = std::clamp(normals[i].dot(normals[j]), -1.0, 1.0);
      const double sine = std::sqrt(1.0 - cosine * cosine);
      if (sine < kDegenerateSine) {
        needs_fd[i] = needs_fd[j] = true;
        continue;
      }
      jac(j, i) = s.m.ridge_volumes(i, j) / sine;
      jac(j, j) -= s.m.ridge_volumes(i, j) * cosine / sine;
    }
  }
  const double h = 1e-5 * length_scale(s);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!needs_fd[i]) continue;
    std::vector<double> plus = s.offsets;
    std::vector<double> minus = s.offsets;
    plus[i] += h;
    minus[i] -= h;
    const auto vp = measure_polytope(normals, plus).facet_volumes;
    const auto vm = measure_polytope(normals, minus).facet_volumes;
    for (Eigen::Index j = 0; j < d; ++j) jac(j, i) = (vp[j] - vm[j]) / (2.0 * h);
  }
  return jac;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-11);
  return cod.solve(b);
}

std::vector<double> step(const std::vector<double>& c, const Eigen::VectorXd& dir, double alpha) {
  std::vector<double> out = c;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * dir(static_cast<Eigen::Index>(i));
  return out;
}

// Pulls user-supplied offsets towards an inscribed ball until every facet
// has positive volume.
State admissible_start(const std::vector<Eigen::VectorXd>& normals, std::vector<double> offsets) {
  State s = measure(normals, offsets);
  if (s.all_facets) return s;
  if (s.m.vertices.empty()) throw Error(ErrorCode::EmptyIntermediate, "initial offsets give an empty polytope");
  Eigen::VectorXd centre = Eigen::VectorXd::Zero(normals.front().size());
  for (const auto& v : s.m.vertices) centre += v;
  centre /= static_cast<double>(s.m.vertices.size());
  double radius = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < normals.size(); ++i) radius = std::min(radius, offsets[i] - normals[i].dot(centre));
  if (!(radius > 0.0)) throw Error(ErrorCode::EmptyIntermediate, "initial offsets give an empty polytope");
  for (double t = 0.125; t <= 1.0; t += 0.125) {
    std::vector<double> blend(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      blend[i] = (1.0 - t) * offsets[i] + t * (normals[i].dot(centre) + radius);
    }
    s = measure(normals, blend);
    if (s.all_facets) return s;
  }
  throw Error(ErrorCode::EmptyIntermediate, "could not make every facet nonempty at the start");
}

}  // namespace

Eigen::VectorXd check_balance(const MinkowskiInput& input) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(input.dim());
  for (std::size_t i = 0; i < input.normals.size() && i < input.volumes.size(); ++i) {
    sum += input.volumes[i] * input.normals[i];
  }
  return sum;
}

Polygon reconstruct_2d(const MinkowskiInput& input) {
  if (input.dim() != 2 && !input.normals.empty()) throw Error(ErrorCode::ShapeMismatch, "expected planar normals");
  const Eigen::VectorXd nu = validated_volumes(input, 3);
  Polygon out;
  out.order.resize(input.normals.size());
  std::iota(out.order.begin(), out.order.end(), 0);
  auto angle = [&](int i) { return std::atan2(input.normals[i](1), input.normals[i](0)); };
  std::sort(out.order.begin(), out.order.end(), [&](int a, int b) { return angle(a) < angle(b); });

  Eigen::Vector2d cursor = Eigen::Vector2d::Zero();
  for (int i : out.order) {
    out.vertices.push_back(cursor);
    const Eigen::VectorXd& u = input.normals[i];
    cursor += nu(i) * Eigen::Vector2d(-u(1), u(0));
  }
  if (cursor.norm() > 1e-10 * std::max(1.0, nu.sum())) {
    throw Error(ErrorCode::BalanceViolation, "polygon does not close");
  }
  Eigen::Vector2d centre = Eigen::Vector2d::Zero();
  for (const auto& v : out.vertices) centre += v;
  centre /= static_cast<double>(out.vertices.size());
  for (auto& v : out.vertices) v -= centre;
  return out;
}

std::vector<double> polygon_offsets(const MinkowskiInput& input, const Polygon& polygon) {
  std::vector<double> out;
  for (const auto& u : input.normals) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : polygon.vertices) best = std::max(best, u.dot(v));
    out.push_back(best);
  }
  return out;
}

FloatPolytopeMeasures measure_polytope(const std::vector<Eigen::VectorXd>& normals,
                                       const std::vector<double>& offsets) {
  FloatPolytopeMeasures out;
  const int d = static_cast<int>(normals.size());
  out.facet_volumes.assign(normals.size(), 0.0);
  out.ridge_volumes = Eigen::MatrixXd::Zero(d, d);
  if (normals.empty()) return out;
  const int n = static_cast<int>(normals.front().size());
  if (has_recession_direction(normals)) return out;
  const detail::FloatCell cell = detail::enumerate_float_cell(normals, offsets);
  out.vertices = cell.vertices;
  if (static_cast<int>(cell.vertices.size()) < n + 1) return out;

  std::vector<int> all(cell.vertices.size());
  std::iota(all.begin(), all.end(), 0);
  if (detail::affine_dimension(cell, all) < n) return out;
  out.volume = detail::face_measure(cell, all, n);

  for (int i = 0; i < d; ++i) {
    const auto ids = detail::vertices_on(cell, {i});
    if (detail::affine_dimension(cell, ids) == n - 1) out.facet_volumes[i] = detail::face_measure(cell, ids, n - 1);
    for (int j = i + 1; j < d; ++j) {
      const auto ridge = detail::vertices_on(cell, {i, j});
      if (static_cast<int>(ridge.size()) < n - 1 || detail::affine_dimension(cell, ridge) != n - 2) continue;
      out.ridge_volumes(i, j) = out.ridge_volumes(j, i) = detail::face_measure(cell, ridge, n - 2);
    }
  }
  return out;
}

MinkowskiSolution reconstruct_nd(const MinkowskiInput& input, const MinkowskiOptions& options) {
  const int n = input.dim();
  if (n < 2) throw Error(ErrorCode::DegenerateInput, "dimension must be at least 2");
  const Eigen::VectorXd target = validated_volumes(input, static_cast<std::size_t>(n) + 1);
  const auto& normals = input.normals;
  const std::size_t d = normals.size();
  const double total = target.sum();
  const Eigen::VectorXd weights = target / total;

  std::vector<double> start(d, 1.0);
  if (options.initial_offsets) {
    if (options.initial_offsets->size() != d) throw Error(ErrorCode::ShapeMismatch, "initial offsets length");
    start = *options.initial_offsets;
  }
  State s = admissible_start(normals, start);
  int iterations = 0;

  // Phase 1: Newton on the convex potential sum w_i c_i - log(V) / n, whose
  // minimiser has facet volumes proportional to the target.
  auto potential = [&](const State& st) {
    double lin = 0.0;
    for (std::size_t i = 0; i < d; ++i) lin += weights(static_cast<Eigen::Index>(i)) * st.offsets[i];
    return lin - std::log(st.m.volume) / n;
  };
  for (int it = 0; it < options.max_iter; ++it) {
    const Eigen::VectorXd nu = volumes_of(s);
    const double vol = s.m.volume;
    const Eigen::VectorXd grad = weights - nu / (n * vol);
    if ((nu / nu.sum() - weights).cwiseAbs().cwiseQuotient(weights).maxCoeff() < 1e-9) break;
    const Eigen::MatrixXd hess = -(jacobian(normals, s) / vol - nu * nu.transpose() / (vol * vol)) / n;
    Eigen::VectorXd dir = min_norm_solve(hess, -grad);
    if (grad.dot(dir) >= 0.0) dir = -grad * length_scale(s);
    const double f0 = potential(s);
    const double slope = grad.dot(dir);
    double alpha = 1.0;
    bool accepted = false;
    bool saw_empty = false;
    while (alpha >= kMinStep) {
      State trial = measure(normals, step(s.offsets, dir, alpha));
      if (!trial.all_facets) {
        saw_empty = true;
      } else if (potential(trial) <= f0 + kArmijo * alpha * slope) {
        s = std::move(trial);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    ++iterations;
    if (!accepted) {
      if (saw_empty) throw Error(ErrorCode::EmptyIntermediate, "line search could not keep every facet nonempty");
      break;  // no further decrease at double precision; phase 2 takes over
    }
  }

  // Fix the scale, then polish with Newton on nu(c) = target.
  {
    const double lambda = std::pow(total / volumes_of(s).sum(), 1.0 / (n - 1));
    std::vector<double> scaled = s.offsets;
    for (double& c : scaled) c *= lambda;
    s = measure(normals, scaled);
  }
  auto relative_error = [&](const State& st) {
    return (volumes_of(st) - target).cwiseAbs().cwiseQuotient(target).maxCoeff();
  };
  int polish = 0;
  while (relative_error(s) > options.tol) {
    if (polish++ >= options.max_iter) {
      throw Error(ErrorCode::NonConvergence, "Minkowski solve did not converge in " +
                                                 std::to_string(options.max_iter) + " iterations (error " +
                                                 std::to_string(relative_error(s)) + ")");
    }
    const Eigen::VectorXd residual = volumes_of(s) - target;
    const double f0 = residual.squaredNorm();
    const Eigen::VectorXd dir = min_norm_solve(jacobian(normals, s), -residual);
    double alpha = 1.0;
    bool accepted = false;
    bool saw_empty = false;
    while (alpha >= kMinStep) {
      State trial = measure(normals, step(s.offsets, dir, alpha));
      if (!trial.all_facets) {
        saw_empty = true;
      } else if ((volumes_of(trial) - target).squaredNorm() <= (1.0 - kArmijo * alpha) * f0) {
        s = std::move(trial);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    ++iterations;
    if (!accepted) {
      if (saw_empty) throw Error(ErrorCode::EmptyIntermediate, "line search could not keep every facet nonempty");
      throw Error(ErrorCode::NonConvergence, "line search stalled at relative error " +
                                                 std::to_string(relative_error(s)));
    }
  }

  MinkowskiSolution out;
  Eigen::VectorXd centre = Eigen::VectorXd::Zero(n);
  for (const auto& v : s.m.vertices) centre += v;
  centre /= static_cast<double>(s.m.vertices.size());
  for (std::size_t i = 0; i < d; ++i) out.offsets.push_back(s.offsets[i] - normals[i].dot(centre));
  for (const auto& v : s.m.vertices) out.vertices.push_back(v - centre);
  out.iterations = iterations;
  out.max_relative_error = relative_error(s);
  return out;
}

}  // namespace orbihear
