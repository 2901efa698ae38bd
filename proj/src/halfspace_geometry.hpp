#pragma once

#include <vector>

#include <Eigen/Dense>

namespace orbihear::detail {

/// Floating-point vertex/facet incidence of {x : x . normal_i <= offset_i}.
/// Normals need not be unit length.
struct FloatCell {
  int dim = 0;
  std::vector<Eigen::VectorXd> normals;
  std::vector<double> offsets;
  std::vector<Eigen::VectorXd> vertices;
  std::vector<std::vector<int>> tight_sets;
  double scale = 1.0;  // length scale used for tolerances
};

/// Exhaustive n-subset enumeration with relative tolerance rel_tol.
FloatCell enumerate_float_cell(const std::vector<Eigen::VectorXd>& normals,
                               const std::vector<double>& offsets, double rel_tol = 1e-9);

/// Ids of vertices tight on every listed facet.
std::vector<int> vertices_on(const FloatCell& cell, const std::vector<int>& facets);

/// Dimension of the affine hull of the listed vertices.
int affine_dimension(const FloatCell& cell, const std::vector<int>& ids);

/// k-dimensional volume of the convex hull of the listed vertices, which
/// must form a k-face of the cell. Uses the pyramid decomposition over the
/// face's own facets; a single vertex measures 1.
double face_measure(const FloatCell& cell, const std::vector<int>& ids, int k);

}  // namespace orbihear::detail
