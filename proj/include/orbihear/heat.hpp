#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbihear/polytope.hpp"
#include "orbihear/rational.hpp"

namespace orbihear {

/// Which group elements of a cyclic facet isotropy enter the rotation sum.
/// Inclusive sums l = 0 .. Omega-1 (the identity included); Exclusive starts
/// at l = 1.
enum class SumMode { Inclusive, Exclusive };

std::string to_string(SumMode mode);
SumMode parse_sum_mode(const std::string& text);

/// exp(i r u) for a primitive integer direction u.
struct TorusElement {
  IntVector direction;
  double parameter = 0.0;
};

struct HeatTerm {
  int t_exponent = 0;  // the term is coefficient * t^t_exponent
  double coefficient = 0.0;
  std::vector<int> source;  // tight set of the fixed face
  bool model = false;       // codim >= 2: product-of-rotations model
};

/// Leading terms of the small-t equivariant heat trace, sorted by exponent
/// and then by source face.
struct HeatExpansion {
  std::vector<HeatTerm> terms;
};

/// Maximal faces F whose facet normals span a space containing the
/// direction. Throws Error(DegenerateParameter) for r = 0 mod 2 pi.
std::vector<Face> fixed_faces(const LabeledPolytope& p, const TorusElement& u);

/// sum over l of 1 / (2 - 2 cos(r + 2 pi l / omega)).
double rotation_sum(double r, int omega, SumMode mode);

/// rotation_sum over a grid of r values through the active SIMD kernel.
std::vector<double> rotation_sum_batch(std::span<const double> r, int omega, SumMode mode);

/// (4 pi)^-(n-1) (2 pi)^(n-1) Vol(F) / Omega * rotation_sum(r, Omega).
double facet_leading_coefficient(const LabeledPolytope& p, int facet, double r, SumMode mode);

/// Same coefficient for a facet of given volume and label, over an r grid.
std::vector<double> facet_coefficient_curve(int dim, double volume, int label,
                                            std::span<const double> r, SumMode mode);

/// Fixed-face data for one direction, independent of r. Build once, then
/// evaluate along a grid of parameters.
class ExpansionPlan {
 public:
  ExpansionPlan(const LabeledPolytope& p, const IntVector& direction);

  const IntVector& direction() const noexcept { return direction_; }
  HeatExpansion evaluate(double r, SumMode mode) const;
  /// Most negative exponent among the fixed faces.
  int leading_exponent() const;

 private:
  struct Component {
    std::vector<int> tight_set;
    int dim = 0;
    double scaled_volume = 0.0;               // (4 pi)^-k (2 pi)^k Vol(F)
    std::vector<Rational> weights;            // direction in the basis of incident normals
    std::vector<std::vector<double>> phases;  // 2 pi * group element coordinates
    bool facet = false;
    int label = 1;
  };

  IntVector direction_;
  std::vector<Component> components_;
};

HeatExpansion equivariant_expansion(const LabeledPolytope& p, const TorusElement& u, int order = 0,
                                    SumMode mode = SumMode::Inclusive);

/// sum_j 1 / (2 - 2 cos a_j) (one normal plane per group element).
double evaluate_b0(std::span<const double> angles);
/// sum over group elements of the product over normal planes.
double evaluate_b0(const std::vector<std::vector<double>>& plane_angles);

/// Local curvature data at a fixed point, all indices over the normal space
/// of dimension dim. R is stored row-major as R[((i*dim + k)*dim + s)*dim + h].
struct CurvatureLocalData {
  int dim = 0;
  double s = 0.0;
  Eigen::MatrixXd rho;
  std::vector<double> R;
  Eigen::MatrixXd B;

  double riemann(int i, int k, int s_, int h) const {
    return R[static_cast<std::size_t>(((i * dim + k) * dim + s_) * dim + h)];
  }
};

/// tau = s/6 + rho_kk/6 + R_iksh B_ki B_hs / 3 + R_ikth B_kt B_hi / 3 - R_kaha B_ks B_hs.
double evaluate_tau(const CurvatureLocalData& data);

/// (2|R|^2 - 2|rho|^2 + 5 s^2) / 360.
double evaluate_b2_integrand(double R_sq, double rho_sq, double s_sq);

}  // namespace orbihear
