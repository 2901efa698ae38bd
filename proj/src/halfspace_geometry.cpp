#include "halfspace_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "exact_linalg.hpp"

namespace orbihear::detail {

namespace {

constexpr double kRankTol = 1e-9;

Eigen::MatrixXd differences(const FloatCell& cell, const std::vector<int>& ids) {
  Eigen::MatrixXd d(cell.dim, ids.size() > 0 ? ids.size() - 1 : 0);
  for (std::size_t j = 1; j < ids.size(); ++j) d.col(j - 1) = cell.vertices[ids[j]] - cell.vertices[ids[0]];
  return d;
}

// Orthonormal basis (columns) of the direction space of the listed vertices.
Eigen::MatrixXd direction_basis(const FloatCell& cell, const std::vector<int>& ids, int k) {
  Eigen::MatrixXd d = differences(cell, ids);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(k);
}

}  // namespace

FloatCell enumerate_float_cell(const std::vector<Eigen::VectorXd>& normals,
                               const std::vector<double>& offsets, double rel_tol) {
  FloatCell cell;
  cell.normals = normals;
  cell.offsets = offsets;
  cell.dim = normals.empty() ? 0 : static_cast<int>(normals.front().size());
  const int n = cell.dim;
  const int d = static_cast<int>(normals.size());
  double scale = 1.0;
  for (int i = 0; i < d; ++i) scale = std::max(scale, std::abs(offsets[i]) / normals[i].norm());
  cell.scale = scale;

  std::vector<double> slack(d);
  for (int i = 0; i < d; ++i) slack[i] = rel_tol * scale * normals[i].norm();

  for_each_combination(d, n, [&](const std::vector<int>& subset) {
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (int r = 0; r < n; ++r) {
      a.row(r) = normals[subset[r]].transpose();
      b(r) = offsets[subset[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-12);
    if (lu.rank() < n) return true;
    Eigen::VectorXd x = lu.solve(b);
    for (int j = 0; j < d; ++j) {
      if (normals[j].dot(x) > offsets[j] + slack[j]) return true;
    }
    for (const auto& v : cell.vertices) {
      if ((v - x).norm() <= 10 * rel_tol * scale) return true;
    }
    cell.vertices.push_back(x);
    return true;
  });

  cell.tight_sets.resize(cell.vertices.size());
  for (std::size_t v = 0; v < cell.vertices.size(); ++v) {
    for (int j = 0; j < d; ++j) {
      if (std::abs(normals[j].dot(cell.vertices[v]) - offsets[j]) <= 10 * slack[j]) {
        cell.tight_sets[v].push_back(j);
      }
    }
  }
  return cell;
}

std::vector<int> vertices_on(const FloatCell& cell, const std::vector<int>& facets) {
  std::vector<int> ids;
  for (std::size_t v = 0; v < cell.vertices.size(); ++v) {
    const auto& t = cell.tight_sets[v];
    if (std::includes(t.begin(), t.end(), facets.begin(), facets.end())) ids.push_back(static_cast<int>(v));
  }
  return ids;
}

int affine_dimension(const FloatCell& cell, const std::vector<int>& ids) {
  if (ids.size() <= 1) return ids.empty() ? -1 : 0;
  Eigen::MatrixXd d = differences(cell, ids);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankTol * cell.scale) ++r;
  }
  return r;
}

double face_measure(const FloatCell& cell, const std::vector<int>& ids, int k) {
  if (k == 0) return ids.empty() ? 0.0 : 1.0;
  if (static_cast<int>(ids.size()) < k + 1) return 0.0;

  Eigen::VectorXd centre = Eigen::VectorXd::Zero(cell.dim);
  for (int v : ids) centre += cell.vertices[v];
  centre /= static_cast<double>(ids.size());
  const Eigen::MatrixXd basis = direction_basis(cell, ids, k);

  std::set<std::vector<int>> seen;
  double total = 0.0;
  for (std::size_t j = 0; j < cell.normals.size(); ++j) {
    std::vector<int> sub;
    for (int v : ids) {
      const auto& t = cell.tight_sets[v];
      if (std::binary_search(t.begin(), t.end(), static_cast<int>(j))) sub.push_back(v);
    }
    if (sub.size() == ids.size() || static_cast<int>(sub.size()) < k) continue;
    if (!seen.insert(sub).second) continue;
    if (affine_dimension(cell, sub) != k - 1) continue;
    const Eigen::VectorXd projected = basis * (basis.transpose() * cell.normals[j]);
    const double norm = projected.norm();
    if (norm <= 0.0) continue;
    const double height = (cell.offsets[j] - cell.normals[j].dot(centre)) / norm;
    total += height * face_measure(cell, sub, k - 1);
  }
  return total / k;
}

}  // namespace orbihear::detail
