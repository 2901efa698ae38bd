#include "orbihear/polytope.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "exact_linalg.hpp"
#include "halfspace_geometry.hpp"
#include "orbihear/error.hpp"
#include "orbihear/lattice.hpp"

namespace orbihear {

namespace {

std::string describe(const std::vector<int>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids[i]);
  }
  return s + "}";
}

std::vector<IntVector> normals_of(const LabeledPolytope& p) {
  std::vector<IntVector> rows;
  rows.reserve(p.size());
  for (const auto& h : p.halfspaces()) rows.push_back(h.normal);
  return rows;
}

void check_bounded(const LabeledPolytope& p) {
  const int n = p.dim();
  const auto rows = detail::integer_rows(normals_of(p));
  if (detail::rank(rows) < n) {
    throw Error(ErrorCode::InvalidPolytope, "normals do not span R^n; polyhedron is unbounded");
  }
  // Rank n means the recession cone is pointed; it is nonzero iff it has an
  // extreme ray, which is cut out by n-1 independent tight normals.
  bool unbounded = false;
  detail::for_each_combination(static_cast<int>(p.size()), n - 1, [&](const std::vector<int>& subset) {
    detail::RationalMatrix sub;
    for (int i : subset) sub.push_back(rows[i]);
    auto kernel = detail::null_space(sub, n);
    if (kernel.size() != 1) return true;
    for (int sign : {1, -1}) {
      bool recedes = true;
      for (const auto& h : p.halfspaces()) {
        Rational s = detail::dot(h.normal, kernel.front()) * sign;
        if (s > 0) {
          recedes = false;
          break;
        }
      }
      if (recedes) {
        unbounded = true;
        return false;
      }
    }
    return true;
  });
  if (unbounded) throw Error(ErrorCode::InvalidPolytope, "polyhedron is unbounded");
}

detail::FloatCell float_cell(const LabeledPolytope& p, const PolytopeCombinatorics& comb) {
  detail::FloatCell cell;
  cell.dim = p.dim();
  for (const auto& h : p.halfspaces()) {
    cell.normals.push_back(to_double(h.normal));
    cell.offsets.push_back(to_double(h.offset));
  }
  cell.vertices = to_double(comb.vertices);
  cell.tight_sets = comb.tight_sets;
  double scale = 1.0;
  for (const auto& v : cell.vertices) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  cell.scale = scale;
  return cell;
}

int exact_affine_dimension(const std::vector<RationalPoint>& pts) {
  if (pts.empty()) return -1;
  detail::RationalMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalPoint d(pts[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = pts[i][k] - pts[0][k];
    diffs.push_back(std::move(d));
  }
  return detail::rank(diffs);
}

Eigen::VectorXd centroid(const std::vector<Eigen::VectorXd>& pts) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(pts.front().size());
  for (const auto& v : pts) c += v;
  return c / static_cast<double>(pts.size());
}

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).lpNorm<Eigen::Infinity>();
}

}  // namespace

LabeledPolytope::LabeledPolytope(int dim, std::vector<LabeledHalfspace> halfspaces)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
  if (dim_ < 1) throw Error(ErrorCode::InvalidPolytope, "dimension must be positive");
  for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
    const auto& h = halfspaces_[i];
    if (static_cast<int>(h.normal.size()) != dim_) {
      throw Error(ErrorCode::InvalidPolytope, "halfspace " + std::to_string(i) + " has wrong normal length");
    }
    if (gcd_of(h.normal) != 1) {
      throw Error(ErrorCode::InvalidPolytope, "halfspace " + std::to_string(i) + " normal is not primitive");
    }
    if (h.label < 1) {
      throw Error(ErrorCode::InvalidPolytope, "halfspace " + std::to_string(i) + " label must be >= 1");
    }
  }
}

Eigen::VectorXd to_double(const IntVector& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = static_cast<double>(v[i]);
  return out;
}

std::vector<Eigen::VectorXd> to_double(const std::vector<RationalPoint>& points) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    Eigen::VectorXd v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v(i) = to_double(p[i]);
    out.push_back(std::move(v));
  }
  return out;
}

PolytopeCombinatorics combinatorics(const LabeledPolytope& p) {
  const int n = p.dim();
  const int d = static_cast<int>(p.size());
  if (d < n + 1) throw Error(ErrorCode::InvalidPolytope, "fewer than n+1 halfspaces cannot bound a polytope");
  check_bounded(p);

  const auto rows = detail::integer_rows(normals_of(p));
  std::set<RationalPoint> found;
  detail::for_each_combination(d, n, [&](const std::vector<int>& subset) {
    detail::RationalMatrix a;
    RationalPoint b;
    for (int i : subset) {
      a.push_back(rows[i]);
      b.push_back(p[i].offset);
    }
    auto x = detail::solve_square(std::move(a), std::move(b));
    if (!x) return true;
    for (const auto& h : p.halfspaces()) {
      if (detail::dot(h.normal, *x) > h.offset) return true;
    }
    found.insert(std::move(*x));
    return true;
  });
  if (found.empty()) throw Error(ErrorCode::InvalidPolytope, "halfspaces have empty intersection");

  PolytopeCombinatorics comb;
  comb.vertices.assign(found.begin(), found.end());
  comb.tight_sets.resize(comb.vertices.size());
  for (std::size_t v = 0; v < comb.vertices.size(); ++v) {
    for (int i = 0; i < d; ++i) {
      if (detail::dot(p[i].normal, comb.vertices[v]) == p[i].offset) comb.tight_sets[v].push_back(i);
    }
  }

  RationalPoint centre(n, Rational(0));
  for (const auto& v : comb.vertices) {
    for (int k = 0; k < n; ++k) centre[k] += v[k];
  }
  for (auto& c : centre) c /= static_cast<long>(comb.vertices.size());
  for (int i = 0; i < d; ++i) {
    if (detail::dot(p[i].normal, centre) >= p[i].offset) {
      throw Error(ErrorCode::InvalidPolytope, "polytope has empty interior");
    }
  }
  std::vector<bool> used(d, false);
  for (const auto& t : comb.tight_sets) {
    for (int i : t) used[i] = true;
  }
  for (int i = 0; i < d; ++i) {
    if (!used[i]) throw Error(ErrorCode::InvalidPolytope, "halfspace " + std::to_string(i) + " is redundant");
  }
  return comb;
}

std::vector<RationalPoint> vertices(const LabeledPolytope& p) { return combinatorics(p).vertices; }

ValidationReport validate_rational_simple(const LabeledPolytope& p) {
  ValidationReport report;
  auto fail = [&](int clause, std::string detail) {
    report.pass = false;
    report.violations.push_back({clause, std::move(detail)});
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (gcd_of(p[i].normal) != 1) fail(2, "normal of facet " + std::to_string(i) + " is not primitive");
  }
  PolytopeCombinatorics comb;
  try {
    comb = combinatorics(p);
  } catch (const Error& e) {
    fail(0, e.what());
    return report;
  }
  const auto rows = detail::integer_rows(normals_of(p));
  for (std::size_t v = 0; v < comb.vertices.size(); ++v) {
    const auto& t = comb.tight_sets[v];
    if (static_cast<int>(t.size()) != p.dim()) {
      fail(1, "vertex " + std::to_string(v) + " lies on " + std::to_string(t.size()) + " facets " + describe(t));
      continue;
    }
    detail::RationalMatrix incident;
    for (int i : t) incident.push_back(rows[i]);
    if (detail::rank(incident) != p.dim()) {
      fail(3, "normals at vertex " + std::to_string(v) + " are linearly dependent");
    }
  }
  return report;
}

std::vector<Face> faces(const LabeledPolytope& p, int codim) {
  const int n = p.dim();
  if (codim < 0 || codim > n) throw Error(ErrorCode::IndexOutOfRange, "codim must lie in [0, n]");
  const auto comb = combinatorics(p);
  const auto rows = detail::integer_rows(normals_of(p));
  std::vector<Face> out;
  if (codim == 0) {
    Face f;
    f.codim = 0;
    f.vertex_ids.resize(comb.vertices.size());
    std::iota(f.vertex_ids.begin(), f.vertex_ids.end(), 0);
    f.vertices = comb.vertices;
    out.push_back(std::move(f));
    return out;
  }

  std::set<std::vector<int>> seen;
  for (const auto& tight : comb.tight_sets) {
    detail::for_each_combination(static_cast<int>(tight.size()), codim, [&](const std::vector<int>& pick) {
      std::vector<int> s;
      for (int k : pick) s.push_back(tight[k]);
      std::vector<int> ids;
      for (std::size_t v = 0; v < comb.vertices.size(); ++v) {
        const auto& t = comb.tight_sets[v];
        if (std::includes(t.begin(), t.end(), s.begin(), s.end())) ids.push_back(static_cast<int>(v));
      }
      std::vector<int> common = comb.tight_sets[ids.front()];
      for (int v : ids) {
        std::vector<int> next;
        std::set_intersection(common.begin(), common.end(), comb.tight_sets[v].begin(), comb.tight_sets[v].end(),
                              std::back_inserter(next));
        common = std::move(next);
      }
      if (seen.count(common)) return true;
      std::vector<RationalPoint> pts;
      for (int v : ids) pts.push_back(comb.vertices[v]);
      if (exact_affine_dimension(pts) != n - codim) return true;
      seen.insert(common);
      detail::RationalMatrix span;
      for (int i : common) span.push_back(rows[i]);
      Face f;
      f.tight_set = common;
      f.codim = detail::rank(span);
      f.vertex_ids = ids;
      f.vertices = std::move(pts);
      out.push_back(std::move(f));
      return true;
    });
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.tight_set < b.tight_set; });
  return out;
}

double face_volume(const LabeledPolytope& p, const Face& face) {
  const int k = p.dim() - face.codim;
  if (k == 0) return 1.0;
  const auto comb = combinatorics(p);
  const auto cell = float_cell(p, comb);
  return detail::face_measure(cell, face.vertex_ids, k);
}

std::vector<FacetDatum> facet_fingerprint(const LabeledPolytope& p) {
  const auto comb = combinatorics(p);
  const auto cell = float_cell(p, comb);
  std::vector<FacetDatum> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto ids = detail::vertices_on(cell, {static_cast<int>(i)});
    std::vector<RationalPoint> pts;
    for (int v : ids) pts.push_back(comb.vertices[v]);
    if (exact_affine_dimension(pts) != p.dim() - 1) {
      throw Error(ErrorCode::InvalidPolytope, "halfspace " + std::to_string(i) + " does not support a facet");
    }
    FacetDatum datum;
    datum.unit_normal = cell.normals[i].normalized();
    datum.volume = detail::face_measure(cell, ids, p.dim() - 1);
    datum.label = p[i].label;
    if (!(datum.volume > 0.0)) {
      throw Error(ErrorCode::InvalidPolytope, "facet " + std::to_string(i) + " has zero volume");
    }
    out.push_back(std::move(datum));
  }
  return out;
}

Eigen::VectorXd fingerprint_balance(std::span<const FacetDatum> data) {
  if (data.empty()) return Eigen::VectorXd();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(data.front().unit_normal.size());
  for (const auto& d : data) s += d.volume * d.unit_normal;
  return s;
}

bool has_parallel_facets(const LabeledPolytope& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const auto& a = p[i].normal;
      const auto& b = p[j].normal;
      bool same = true;
      bool opposite = true;
      for (std::size_t k = 0; k < a.size(); ++k) {
        same = same && a[k] == b[k];
        opposite = opposite && a[k] == -b[k];
      }
      if (same || opposite) return true;
    }
  }
  return false;
}

std::optional<std::vector<int>> has_subpolytopes(std::span<const FacetDatum> data) {
  const std::size_t d = data.size();
  if (d > kMaxExhaustiveFacets) {
    throw Error(ErrorCode::TooManyFacets, std::to_string(d) + " facets exceed the exhaustive limit of 24");
  }
  if (d < 2) return std::nullopt;
  const int n = static_cast<int>(data.front().unit_normal.size());
  double max_volume = 0.0;
  for (const auto& x : data) max_volume = std::max(max_volume, x.volume);
  const double tol = 1e-9 * max_volume;

  // Subsets of the first d-1 facets; complements cover the rest. Sums come
  // from two lookup tables so no error accumulates along the walk.
  const int free_bits = static_cast<int>(d) - 1;
  const int low_bits = std::min(free_bits, 12);
  const int high_bits = free_bits - low_bits;
  auto table = [&](int first, int bits) {
    std::vector<Eigen::VectorXd> t(std::size_t{1} << bits, Eigen::VectorXd::Zero(n));
    for (std::size_t m = 1; m < t.size(); ++m) {
      const int b = std::countr_zero(m);
      t[m] = t[m & (m - 1)] + data[first + b].volume * data[first + b].unit_normal;
    }
    return t;
  };
  const auto low = table(0, low_bits);
  const auto high = table(low_bits, high_bits);

  std::optional<std::vector<int>> best;
  const std::uint64_t total = std::uint64_t{1} << free_bits;
  const std::uint64_t low_mask = (std::uint64_t{1} << low_bits) - 1;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const Eigen::VectorXd s = low[mask & low_mask] + high[mask >> low_bits];
    if (s.norm() >= tol) continue;
    std::vector<int> inside, outside;
    for (std::size_t i = 0; i < d; ++i) {
      const bool in = i < static_cast<std::size_t>(free_bits) && ((mask >> i) & 1U);
      (in ? inside : outside).push_back(static_cast<int>(i));
    }
    auto& pick = inside.size() <= outside.size() ? inside : outside;
    if (!best || pick.size() < best->size() || (pick.size() == best->size() && pick < *best)) best = pick;
  }
  return best;
}

LabeledPolytope negate(const LabeledPolytope& p) {
  auto hs = p.halfspaces();
  for (auto& h : hs) {
    for (auto& x : h.normal) x = -x;
  }
  return LabeledPolytope(p.dim(), std::move(hs));
}

LabeledPolytope translate(const LabeledPolytope& p, const RationalPoint& shift) {
  if (static_cast<int>(shift.size()) != p.dim()) throw Error(ErrorCode::ShapeMismatch, "shift has wrong length");
  auto hs = p.halfspaces();
  for (auto& h : hs) h.offset += detail::dot(h.normal, shift);
  return LabeledPolytope(p.dim(), std::move(hs));
}

double centered_hausdorff(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd ca = centroid(a);
  const Eigen::VectorXd cb = centroid(b);
  auto directed = [](const std::vector<Eigen::VectorXd>& x, const Eigen::VectorXd& cx,
                     const std::vector<Eigen::VectorXd>& y, const Eigen::VectorXd& cy) {
    double worst = 0.0;
    for (const auto& p : x) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& q : y) nearest = std::min(nearest, ((p - cx) - (q - cy)).norm());
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, ca, b, cb), directed(b, cb, a, ca));
}

double vertex_hausdorff(const LabeledPolytope& p, const LabeledPolytope& q) {
  return centered_hausdorff(to_double(vertices(p)), to_double(vertices(q)));
}

bool equal_up_to_translation(const LabeledPolytope& p, const LabeledPolytope& q, double tol) {
  if (p.dim() != q.dim() || p.size() != q.size()) return false;
  const auto vp = to_double(vertices(p));
  const auto vq = to_double(vertices(q));
  if (vp.size() != vq.size()) return false;
  const Eigen::VectorXd cp = centroid(vp);
  const Eigen::VectorXd cq = centroid(vq);
  std::vector<bool> used(vq.size(), false);
  for (const auto& a : vp) {
    bool matched = false;
    for (std::size_t j = 0; j < vq.size(); ++j) {
      if (used[j] || ((a - cp) - (vq[j] - cq)).norm() > tol) continue;
      used[j] = true;
      matched = true;
      break;
    }
    if (!matched) return false;
  }
  for (const auto& h : p.halfspaces()) {
    auto it = std::find_if(q.halfspaces().begin(), q.halfspaces().end(),
                           [&](const LabeledHalfspace& g) { return g.normal == h.normal; });
    if (it == q.halfspaces().end() || it->label != h.label) return false;
  }
  return true;
}

LabeledPolytope perturb_generic(const LabeledPolytope& p, const Rational& eps, std::uint64_t seed) {
  if (eps <= 0) throw Error(ErrorCode::InvalidInput, "perturbation scale must be positive");
  auto generic = [](const LabeledPolytope& q) {
    if (has_parallel_facets(q)) return false;
    if (!validate_rational_simple(q).pass) return false;
    const auto fp = facet_fingerprint(q);
    return !has_subpolytopes(fp).has_value();
  };
  if (generic(p)) return p;

  const double eps_d = to_double(eps);
  const auto original_fp = facet_fingerprint(p);
  std::vector<double> original_offsets;
  for (std::size_t i = 0; i < p.size(); ++i) {
    original_offsets.push_back(to_double(p[i].offset) / to_double(p[i].normal).norm());
  }
  const auto comb = combinatorics(p);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-eps_d / 3, eps_d / 3);
  std::uniform_int_distribution<int> step(250, 500);

  for (int attempt = 0; attempt < 100; ++attempt) {
    auto hs = p.halfspaces();
    const double resolution = std::ceil(6.0 / eps_d) * static_cast<double>(1 << (attempt % 4));
    bool ok = true;
    for (std::size_t i = 0; i < hs.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < hs.size() && ok; ++j) {
        const auto a = to_double(hs[i].normal).normalized();
        const auto b = to_double(hs[j].normal).normalized();
        if (std::abs(std::abs(a.dot(b)) - 1.0) > 1e-15) continue;
        IntVector w(p.dim());
        for (int k = 0; k < p.dim(); ++k) w[k] = std::llround(resolution * (b(k) + jitter(rng)));
        if (gcd_of(w) == 0) {
          ok = false;
          break;
        }
        w = primitive(w);
        RationalPoint anchor(p.dim(), Rational(0));
        long count = 0;
        for (std::size_t v = 0; v < comb.vertices.size(); ++v) {
          const auto& t = comb.tight_sets[v];
          if (!std::binary_search(t.begin(), t.end(), static_cast<int>(j))) continue;
          for (int k = 0; k < p.dim(); ++k) anchor[k] += comb.vertices[v][k];
          ++count;
        }
        for (auto& x : anchor) x /= count;
        hs[j].normal = w;
        hs[j].offset = detail::dot(w, anchor);
      }
    }
    if (!ok) continue;

    try {
      LabeledPolytope q(p.dim(), hs);
      for (int round = 0; round < 10; ++round) {
        if (has_parallel_facets(q) || !validate_rational_simple(q).pass) break;
        const auto fp = facet_fingerprint(q);
        const auto subset = has_subpolytopes(fp);
        if (!subset) break;
        const int j = (*subset)[rng() % subset->size()];
        std::int64_t largest = 0;
        for (auto x : hs[j].normal) largest = std::max(largest, x < 0 ? -x : x);
        const Rational delta = eps * Rational(step(rng), 1000) * Rational(largest) / Rational(4);
        hs[j].offset += (rng() & 1U) ? delta : Rational(-delta);
        q = LabeledPolytope(p.dim(), hs);
      }
      if (!generic(q)) continue;
      bool close = true;
      for (std::size_t i = 0; i < hs.size() && close; ++i) {
        const Eigen::VectorXd w = to_double(hs[i].normal);
        const double offset = to_double(hs[i].offset) / w.norm();
        close = max_abs_diff(w.normalized(), original_fp[i].unit_normal) <= eps_d &&
                std::abs(offset - original_offsets[i]) <= eps_d;
      }
      if (close) return q;
    } catch (const Error&) {
      continue;
    }
  }
  throw Error(ErrorCode::PerturbationFailed, "no generic perturbation found within 100 attempts");
}

}  // namespace orbihear
