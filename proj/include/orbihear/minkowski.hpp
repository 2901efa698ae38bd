#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace orbihear {

/// Unit facet normals and positive facet volumes of a convex polytope.
struct MinkowskiInput {
  std::vector<Eigen::VectorXd> normals;
  std::vector<double> volumes;

  int dim() const { return normals.empty() ? 0 : static_cast<int>(normals.front().size()); }
};

/// sum_i volume_i * normal_i
Eigen::VectorXd check_balance(const MinkowskiInput& input);

/// Counter-clockwise polygon, vertex centroid at the origin. Edge i of the
/// output runs from vertices[i] to vertices[i+1] and carries the input
/// normal order[i].
struct Polygon {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<int> order;
};

Polygon reconstruct_2d(const MinkowskiInput& input);

/// Offsets for the unit normals of a 2D solution: c_i = max over vertices of x . u_i.
std::vector<double> polygon_offsets(const MinkowskiInput& input, const Polygon& polygon);

struct MinkowskiOptions {
  double tol = 1e-10;  // relative per-facet volume error
  int max_iter = 200;
  std::optional<std::vector<double>> initial_offsets;  // default all ones
};

struct MinkowskiSolution {
  std::vector<double> offsets;  // x . u_i <= offsets[i], vertex centroid at the origin
  std::vector<Eigen::VectorXd> vertices;
  int iterations = 0;
  double max_relative_error = 0.0;
};

/// Damped Newton solve for offsets whose polytope has the requested facet
/// volumes. Throws NonConvergence, BalanceViolation, EmptyIntermediate or
/// DegenerateInput.
MinkowskiSolution reconstruct_nd(const MinkowskiInput& input, const MinkowskiOptions& options = {});

/// Facet volumes, ridge volumes and vertices of {x : x . u_i <= c_i} in
/// floating point. Exposed for tests and the solver's Jacobian. Normals that
/// do not positively span give an unbounded cell, reported as all zeros.
struct FloatPolytopeMeasures {
  std::vector<Eigen::VectorXd> vertices;
  std::vector<double> facet_volumes;
  Eigen::MatrixXd ridge_volumes;  // symmetric, zero where facets are not adjacent
  double volume = 0.0;
};

FloatPolytopeMeasures measure_polytope(const std::vector<Eigen::VectorXd>& normals,
                                       const std::vector<double>& offsets);

}  // namespace orbihear
