#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbihear/rational.hpp"

namespace orbihear {

/// One facet inequality x . normal <= offset. The normal is the outward
/// primitive integer normal; label is the orbifold facet label m >= 1.
struct LabeledHalfspace {
  IntVector normal;
  Rational offset;
  int label = 1;
};

/// Halfspace representation of a labeled rational polytope in R^n.
///
/// The constructor enforces the per-halfspace invariants (nonzero primitive
/// normal of length n, label >= 1). Global invariants (bounded, full
/// dimensional, no redundant halfspace) are checked by the geometric
/// operations, which throw Error(InvalidPolytope) when they fail.
class LabeledPolytope {
 public:
  LabeledPolytope(int dim, std::vector<LabeledHalfspace> halfspaces);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return halfspaces_.size(); }
  const LabeledHalfspace& operator[](std::size_t i) const { return halfspaces_[i]; }
  const std::vector<LabeledHalfspace>& halfspaces() const noexcept { return halfspaces_; }

 private:
  int dim_;
  std::vector<LabeledHalfspace> halfspaces_;
};

/// Vertex set plus, for each vertex, the sorted indices of the halfspaces
/// tight there.
struct PolytopeCombinatorics {
  std::vector<RationalPoint> vertices;
  std::vector<std::vector<int>> tight_sets;
};

struct Face {
  std::vector<int> tight_set;  // facets containing the face, sorted
  int codim = 0;
  std::vector<int> vertex_ids;  // indices into PolytopeCombinatorics::vertices
  std::vector<RationalPoint> vertices;
};

/// Spectral fingerprint of one facet.
struct FacetDatum {
  Eigen::VectorXd unit_normal;
  double volume = 0.0;
  int label = 1;
};

struct ValidationReport {
  struct Violation {
    int clause;  // 1: n facets per vertex, 2: primitive normals, 3: vertex normals a Q-basis
    std::string detail;
  };
  bool pass = true;
  std::vector<Violation> violations;
};

/// Exact vertex enumeration over all n-subsets of halfspaces.
PolytopeCombinatorics combinatorics(const LabeledPolytope& p);
std::vector<RationalPoint> vertices(const LabeledPolytope& p);

ValidationReport validate_rational_simple(const LabeledPolytope& p);

/// All faces of the given codimension, ordered by tight set. Codim 0 is the
/// polytope itself, codim n the vertices.
std::vector<Face> faces(const LabeledPolytope& p, int codim);

/// Euclidean (n - codim)-volume of a face; vertices count 1.
double face_volume(const LabeledPolytope& p, const Face& face);

std::vector<FacetDatum> facet_fingerprint(const LabeledPolytope& p);

/// Sum of volume * unit normal over the data.
Eigen::VectorXd fingerprint_balance(std::span<const FacetDatum> data);

bool has_parallel_facets(const LabeledPolytope& p);

inline constexpr std::size_t kMaxExhaustiveFacets = 24;

/// Smallest proper nonempty subset I with |sum_{i in I} vol_i u_i| below
/// 1e-9 * max vol, or nullopt. Throws Error(TooManyFacets) above 24 data.
std::optional<std::vector<int>> has_subpolytopes(std::span<const FacetDatum> data);

/// Perturbs normals and offsets by at most eps (after normalization) until
/// the polytope has no parallel facets and no subpolytopes. Generic inputs
/// are returned unchanged.
LabeledPolytope perturb_generic(const LabeledPolytope& p, const Rational& eps,
                                std::uint64_t seed = 0x5eed);

/// Vertex sets agree after moving both vertex centroids to the origin, and
/// facets with matching normals carry equal labels.
bool equal_up_to_translation(const LabeledPolytope& p, const LabeledPolytope& q, double tol);

/// Symmetric Hausdorff distance between centroid-aligned vertex sets.
double vertex_hausdorff(const LabeledPolytope& p, const LabeledPolytope& q);

LabeledPolytope negate(const LabeledPolytope& p);
LabeledPolytope translate(const LabeledPolytope& p, const RationalPoint& shift);

/// Symmetric Hausdorff distance between two point sets after moving each
/// centroid to the origin.
double centered_hausdorff(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b);

std::vector<Eigen::VectorXd> to_double(const std::vector<RationalPoint>& points);
Eigen::VectorXd to_double(const IntVector& v);

}  // namespace orbihear
