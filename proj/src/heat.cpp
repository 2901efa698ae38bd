#include "orbihear/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exact_linalg.hpp"
#include "orbihear/error.hpp"
#include "orbihear/kernels.hpp"
#include "orbihear/lattice.hpp"

namespace orbihear {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResonanceTol = 1e-12;

bool is_resonant(double angle) {
  const double turns = angle / kTwoPi;
  return std::abs(turns - std::nearbyint(turns)) < kResonanceTol;
}

void require_nonresonant(double angle) {
  if (is_resonant(angle)) {
    throw Error(ErrorCode::DegenerateParameter, "rotation angle " + std::to_string(angle) + " is a multiple of 2 pi");
  }
}

double inverse_chord_sq(double angle) {
  const double s = std::sin(0.5 * angle);
  return 1.0 / (4.0 * s * s);
}

void require_omega(int omega) {
  if (omega < 1) throw Error(ErrorCode::InvalidInput, "label must be positive");
}

bool in_span(const std::vector<IntVector>& normals, const IntVector& u) {
  std::vector<IntVector> rows = normals;
  const int base = detail::rank(detail::integer_rows(rows));
  rows.push_back(u);
  return detail::rank(detail::integer_rows(rows)) == base;
}

bool contains(const std::vector<int>& big, const std::vector<int>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Face> fixed_faces_of(const LabeledPolytope& p, const IntVector& direction) {
  if (static_cast<int>(direction.size()) != p.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "direction length differs from the polytope dimension");
  }
  if (primitive(direction) != direction) {
    throw Error(ErrorCode::InvalidInput, "direction must be primitive");
  }
  std::vector<Face> out;
  for (int codim = 1; codim <= p.dim(); ++codim) {
    for (Face& f : faces(p, codim)) {
      std::vector<IntVector> normals;
      for (int i : f.tight_set) normals.push_back(p[static_cast<std::size_t>(i)].normal);
      if (!in_span(normals, direction)) continue;
      const bool covered = std::any_of(out.begin(), out.end(),
                                       [&](const Face& g) { return contains(f.tight_set, g.tight_set); });
      if (!covered) out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace

std::string to_string(SumMode mode) { return mode == SumMode::Inclusive ? "inclusive" : "exclusive"; }

SumMode parse_sum_mode(const std::string& text) {
  if (text == "inclusive") return SumMode::Inclusive;
  if (text == "exclusive") return SumMode::Exclusive;
  throw Error(ErrorCode::InvalidInput, "unknown sum mode '" + text + "'");
}

std::vector<Face> fixed_faces(const LabeledPolytope& p, const TorusElement& u) {
  require_nonresonant(u.parameter);
  return fixed_faces_of(p, u.direction);
}

double rotation_sum(double r, int omega, SumMode mode) {
  require_omega(omega);
  double acc = 0.0;
  for (int l = mode == SumMode::Inclusive ? 0 : 1; l < omega; ++l) {
    const double angle = r + kTwoPi * l / omega;
    require_nonresonant(angle);
    acc += inverse_chord_sq(angle);
  }
  return acc;
}

std::vector<double> rotation_sum_batch(std::span<const double> r, int omega, SumMode mode) {
  require_omega(omega);
  std::vector<double> sin_phase;
  std::vector<double> cos_phase;
  for (int l = mode == SumMode::Inclusive ? 0 : 1; l < omega; ++l) {
    const double half = std::numbers::pi * l / omega;
    sin_phase.push_back(std::sin(half));
    cos_phase.push_back(std::cos(half));
  }
  std::vector<double> sin_r(r.size());
  std::vector<double> cos_r(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    for (int l = mode == SumMode::Inclusive ? 0 : 1; l < omega; ++l) require_nonresonant(r[j] + kTwoPi * l / omega);
    sin_r[j] = std::sin(0.5 * r[j]);
    cos_r[j] = std::cos(0.5 * r[j]);
  }
  std::vector<double> out(r.size());
  kernels::active().rotation_sum(sin_r, cos_r, sin_phase, cos_phase, out);
  return out;
}

double facet_leading_coefficient(const LabeledPolytope& p, int facet, double r, SumMode mode) {
  if (facet < 0 || static_cast<std::size_t>(facet) >= p.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "facet index " + std::to_string(facet) + " out of range");
  }
  for (const Face& f : faces(p, 1)) {
    if (f.tight_set == std::vector<int>{facet}) {
      const int label = p[static_cast<std::size_t>(facet)].label;
      return std::ldexp(face_volume(p, f), -(p.dim() - 1)) / label * rotation_sum(r, label, mode);
    }
  }
  throw Error(ErrorCode::InvalidPolytope, "halfspace " + std::to_string(facet) + " is not a facet");
}

std::vector<double> facet_coefficient_curve(int dim, double volume, int label, std::span<const double> r,
                                            SumMode mode) {
  std::vector<double> out = rotation_sum_batch(r, label, mode);
  const double scale = std::ldexp(volume, -(dim - 1)) / label;
  for (double& v : out) v *= scale;
  return out;
}

ExpansionPlan::ExpansionPlan(const LabeledPolytope& p, const IntVector& direction) : direction_(direction) {
  for (const Face& f : fixed_faces_of(p, direction)) {
    Component c;
    c.tight_set = f.tight_set;
    c.dim = p.dim() - f.codim;
    c.scaled_volume = std::ldexp(face_volume(p, f), -c.dim);
    c.facet = f.codim == 1;
    c.label = c.facet ? p[static_cast<std::size_t>(f.tight_set.front())].label : 1;

    // direction = sum_i a_i normal_i, solved through the normal equations.
    const std::size_t q = f.tight_set.size();
    detail::RationalMatrix gram(q, RationalPoint(q));
    RationalPoint rhs(q);
    for (std::size_t i = 0; i < q; ++i) {
      const IntVector& ui = p[static_cast<std::size_t>(f.tight_set[i])].normal;
      for (std::size_t j = 0; j < q; ++j) {
        const IntVector& uj = p[static_cast<std::size_t>(f.tight_set[j])].normal;
        Integer g = 0;
        for (std::size_t k = 0; k < ui.size(); ++k) g += Integer(ui[k]) * uj[k];
        gram[i][j] = Rational(g);
      }
      Integer b = 0;
      for (std::size_t k = 0; k < ui.size(); ++k) b += Integer(ui[k]) * direction[k];
      rhs[i] = Rational(b);
    }
    auto weights = detail::solve_square(gram, rhs);
    if (!weights) throw Error(ErrorCode::InvalidPolytope, "normals at a face are dependent");
    c.weights = std::move(*weights);

    for (const auto& element : isotropy_elements(p, f)) {
      std::vector<double> phase;
      for (const Rational& beta : element) phase.push_back(kTwoPi * to_double(beta));
      c.phases.push_back(std::move(phase));
    }
    components_.push_back(std::move(c));
  }
}

HeatExpansion ExpansionPlan::evaluate(double r, SumMode mode) const {
  require_nonresonant(r);
  HeatExpansion out;
  for (const Component& c : components_) {
    std::vector<double> a;
    for (const Rational& w : c.weights) a.push_back(to_double(w));
    double sum = 0.0;
    for (std::size_t g = mode == SumMode::Inclusive ? 0 : 1; g < c.phases.size(); ++g) {
      double prod = 1.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double angle = r * a[i] + c.phases[g][i];
        require_nonresonant(angle);
        prod *= inverse_chord_sq(angle);
      }
      sum += prod;
    }
    HeatTerm term;
    term.t_exponent = -c.dim;
    term.coefficient = c.scaled_volume / static_cast<double>(c.phases.size()) * sum;
    term.source = c.tight_set;
    term.model = !c.facet;
    out.terms.push_back(std::move(term));
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const HeatTerm& x, const HeatTerm& y) {
    if (x.t_exponent != y.t_exponent) return x.t_exponent < y.t_exponent;
    return x.source < y.source;
  });
  return out;
}

int ExpansionPlan::leading_exponent() const {
  int lead = 0;
  for (const Component& c : components_) lead = std::min(lead, -c.dim);
  return lead;
}

HeatExpansion equivariant_expansion(const LabeledPolytope& p, const TorusElement& u, int order, SumMode mode) {
  if (order < 0) throw Error(ErrorCode::InvalidInput, "order must be nonnegative");
  require_nonresonant(u.parameter);
  return ExpansionPlan(p, u.direction).evaluate(u.parameter, mode);
}

double evaluate_b0(std::span<const double> angles) {
  double acc = 0.0;
  for (double a : angles) {
    require_nonresonant(a);
    acc += inverse_chord_sq(a);
  }
  return acc;
}

double evaluate_b0(const std::vector<std::vector<double>>& plane_angles) {
  double acc = 0.0;
  for (const auto& element : plane_angles) {
    double prod = 1.0;
    for (double a : element) {
      require_nonresonant(a);
      prod *= inverse_chord_sq(a);
    }
    acc += prod;
  }
  return acc;
}

double evaluate_tau(const CurvatureLocalData& data) {
  const int m = data.dim;
  const auto mm = static_cast<Eigen::Index>(m);
  if (m < 0 || data.rho.rows() != mm || data.rho.cols() != mm || data.B.rows() != mm || data.B.cols() != mm ||
      data.R.size() != static_cast<std::size_t>(m) * m * m * m) {
    throw Error(ErrorCode::ShapeMismatch, "curvature data shapes do not match the normal dimension");
  }
  const Eigen::MatrixXd& B = data.B;

  // R_iksh B_ki B_hs: contract (s,h) against B first.
  double first = 0.0;
  // R_ikth B_kt B_hi: contract (i,h) against B first.
  double second = 0.0;
  // R_kaha B_ks B_hs = sum_kh (sum_a R_kaha) (B B^T)_kh.
  double third = 0.0;
  const Eigen::MatrixXd bbt = B * B.transpose();
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      double x = 0.0;
      double z = 0.0;
      double ric = 0.0;
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          x += data.riemann(i, k, a, b) * B(b, a);  // s = a, h = b
          z += data.riemann(a, i, k, b) * B(b, a);  // i -> a, k -> i, t -> k, h -> b
        }
        ric += data.riemann(i, a, k, a);
      }
      first += B(k, i) * x;
      second += B(i, k) * z;
      third += ric * bbt(i, k);
    }
  }
  return data.s / 6.0 + data.rho.trace() / 6.0 + first / 3.0 + second / 3.0 - third;
}

double evaluate_b2_integrand(double R_sq, double rho_sq, double s_sq) {
  return (2.0 * R_sq - 2.0 * rho_sq + 5.0 * s_sq) / 360.0;
}

}  // namespace orbihear
