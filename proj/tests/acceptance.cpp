// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and sample counts are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "orbihear/csc.hpp"
#include "orbihear/error.hpp"
#include "orbihear/football.hpp"
#include "orbihear/generators.hpp"
#include "orbihear/heat.hpp"
#include "orbihear/inversion.hpp"
#include "orbihear/lattice.hpp"
#include "orbihear/minkowski.hpp"

using namespace orbihear;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kPolygonCases = 50;
constexpr int kSpatialCases = 10;
constexpr double kRoundTripHausdorff = 1e-6;
constexpr double kRoundTripSeconds = 120.0;
constexpr double kFootballTol = 1e-4;
constexpr double kIdentitySeconds = 30.0;
constexpr double kClosedFormTol = 1e-9;
constexpr double kExclusiveLimitTol = 1e-3;
constexpr int kMinkowskiPlanar = 100;
constexpr int kMinkowskiSpatial = 20;
constexpr double kMinkowskiVolumeTol = 1e-7;
constexpr double kMinkowskiUniqueTol = 1e-7;
constexpr double kMinkowskiSeconds = 60.0;
constexpr int kLatticeMatrices = 200;
constexpr int kChainTuples = 1000;
constexpr double kChainTol = 1e-10;
constexpr double kCscDefect = 1e-3;
constexpr double kCscTol = 1e-6;
constexpr double kSignBalanceTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool parallel(const IntVector& a, const IntVector& b) {
  const Eigen::VectorXd x = to_double(a).normalized();
  const Eigen::VectorXd y = to_double(b).normalized();
  return std::abs(std::abs(x.dot(y)) - 1.0) < 1e-12;
}

std::vector<IntVector> probe_directions(const LabeledPolytope& p) {
  std::vector<IntVector> dirs;
  for (const auto& h : p.halfspaces()) dirs.push_back(h.normal);
  const std::vector<IntVector> candidates =
      p.dim() == 2 ? std::vector<IntVector>{{1, 1}, {2, -3}, {3, 5}, {-4, 7}}
                   : std::vector<IntVector>{{1, 1, 1}, {2, -3, 5}, {3, 5, -7}, {-4, 7, 2}};
  int added = 0;
  for (const auto& c : candidates) {
    if (added == 2) break;
    if (std::none_of(dirs.begin(), dirs.end(), [&](const IntVector& d) { return parallel(c, d); })) {
      dirs.push_back(c);
      ++added;
    }
  }
  return dirs;
}

bool labels_match(const LabeledPolytope& got, const LabeledPolytope& want) {
  if (got.size() != want.size()) return false;
  for (const auto& h : want.halfspaces()) {
    auto it = std::find_if(got.halfspaces().begin(), got.halfspaces().end(),
                           [&](const LabeledHalfspace& g) { return g.normal == h.normal; });
    if (it == got.halfspaces().end() || it->label != h.label) return false;
  }
  return true;
}

std::vector<LabeledPolytope> round_trip_instances() {
  std::vector<LabeledPolytope> out;
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < kPolygonCases; ++i) {
    const int facets = 3 + i % 6;
    out.push_back(random_generic_polytope(2, facets, facets, 5, rng));
  }
  for (int i = 0; i < kSpatialCases; ++i) {
    const int facets = 4 + i % 4;
    out.push_back(random_generic_polytope(3, facets, facets, 5, rng));
  }
  return out;
}

Outcome criterion_round_trip(const std::vector<LabeledPolytope>& cases) {
  Stopwatch clock;
  double worst = 0.0;
  int failures = 0;
  for (const auto& p : cases) {
    try {
      const auto samples = synthesize_spectral_samples(p, probe_directions(p), default_r_grid());
      const auto [plus, minus] = reconstruct_pipeline(samples, p.dim());
      const bool plus_is_p = labels_match(plus, p);
      const auto& same = plus_is_p ? plus : minus;
      const auto& other = plus_is_p ? minus : plus;
      const double h = std::max(vertex_hausdorff(same, p), vertex_hausdorff(other, negate(p)));
      worst = std::max(worst, h);
      if (!labels_match(same, p) || !labels_match(other, negate(p)) || !(h < kRoundTripHausdorff)) ++failures;
    } catch (const Error& e) {
      std::fprintf(stderr, "round trip error: %s\n", e.what());
      ++failures;
    }
  }
  const double elapsed = clock.seconds();
  return {failures == 0 && elapsed < kRoundTripSeconds,
          std::to_string(cases.size()) + " cases, " + std::to_string(failures) + " failures, max hausdorff " +
              fmt("%.2e", worst) + ", " + fmt("%.2f", elapsed) + " s"};
}

Extrapolation extrapolate(int p, double alpha) {
  const auto [t_min, t_max] = suggested_t_window(p, alpha);
  return extrapolate_constant_term(football_trace_samples(p, alpha, t_min, t_max, 24));
}

Outcome criterion_identity_football() {
  Stopwatch clock;
  double worst = 0.0;
  double worst_weyl = 0.0;
  for (int p : {1, 2, 3, 5}) {
    const auto e = extrapolate(p, 0.0);
    worst = std::max(worst, std::abs(e.c0 - (p * p + 1.0) / (6.0 * p)));
    worst_weyl = std::max(worst_weyl, std::abs(e.c_minus1 - 1.0 / p));
  }
  const double elapsed = clock.seconds();
  return {worst < kFootballTol && worst_weyl < kFootballTol && elapsed < kIdentitySeconds,
          "max |c0 - (p^2+1)/(6p)| " + fmt("%.2e", worst) + ", max |c-1 - 1/p| " + fmt("%.2e", worst_weyl) + ", " +
              fmt("%.2f", elapsed) + " s"};
}

Outcome criterion_rotation_football() {
  double worst = 0.0;
  double exclusive_gap_p1 = std::numeric_limits<double>::infinity();
  for (int p : {1, 2, 3, 5}) {
    for (double alpha : {0.7, 1.3, 2.1}) {
      const auto e = extrapolate(p, alpha);
      const double target = 2.0 * p / (2.0 - 2.0 * std::cos(p * alpha));
      worst = std::max(worst, std::abs(e.c0 - target) / std::max(1.0, std::abs(target)) *
                                  std::max(1.0, std::abs(target)) / std::max(1.0, std::abs(target)));
      worst = std::max(worst, std::abs(e.c0 - target));
      if (p == 1) {
        const double exclusive = asymptotic_prediction(p, alpha, SumMode::Exclusive).constant;
        exclusive_gap_p1 = std::min(exclusive_gap_p1, std::abs(e.c0 - exclusive));
      }
    }
  }
  const bool exclusive_fails = exclusive_gap_p1 > kFootballTol;
  return {worst < kFootballTol && exclusive_fails,
          "12 cases, max |c0 - 2p/(2-2cos p alpha)| " + fmt("%.2e", worst) + "; exclusive at p=1 misses by >= " +
              fmt("%.3f", exclusive_gap_p1)};
}

Outcome criterion_trig() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 2 * kPi);
  double worst = 0.0;
  for (int omega = 1; omega <= 50; ++omega) {
    for (int k = 0; k < 100; ++k) {
      const double r = unif(rng);
      const double closed = oracle::rotation_closed_form(r, omega);
      worst = std::max(worst, std::abs(rotation_sum(r, omega, SumMode::Inclusive) - closed) /
                                  std::max(1.0, std::abs(closed)));
    }
  }
  double worst_limit = 0.0;
  for (int omega = 1; omega <= 20; ++omega) {
    worst_limit =
        std::max(worst_limit, std::abs(rotation_sum(1e-6, omega, SumMode::Exclusive) - (omega * omega - 1) / 12.0));
  }
  return {worst < kClosedFormTol && worst_limit < kExclusiveLimitTol,
          "closed form max rel error " + fmt("%.2e", worst) + ", exclusive limit max error " +
              fmt("%.2e", worst_limit)};
}

Outcome criterion_minkowski() {
  Stopwatch clock;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> start(0.5, 2.0);
  double worst_volume = 0.0;
  double worst_unique = 0.0;
  int failures = 0;
  for (int i = 0; i < kMinkowskiPlanar + kMinkowskiSpatial; ++i) {
    const int dim = i < kMinkowskiPlanar ? 2 : 3;
    const int facets = dim == 2 ? 3 + i % 8 : 4 + i % 7;
    try {
      const auto in = random_balanced_input(dim, facets, rng);
      MinkowskiOptions a, b;
      a.initial_offsets = std::vector<double>(in.normals.size());
      b.initial_offsets = std::vector<double>(in.normals.size());
      for (auto& c : *a.initial_offsets) c = start(rng);
      for (auto& c : *b.initial_offsets) c = start(rng);
      const auto x = reconstruct_nd(in, a);
      const auto y = reconstruct_nd(in, b);
      const auto m = measure_polytope(in.normals, x.offsets);
      for (std::size_t k = 0; k < in.volumes.size(); ++k) {
        worst_volume = std::max(worst_volume, std::abs(m.facet_volumes[k] - in.volumes[k]) / in.volumes[k]);
      }
      worst_unique = std::max(worst_unique, centered_hausdorff(x.vertices, y.vertices));
    } catch (const Error& e) {
      std::fprintf(stderr, "minkowski error: %s\n", e.what());
      ++failures;
    }
  }
  const double elapsed = clock.seconds();
  return {failures == 0 && worst_volume < kMinkowskiVolumeTol && worst_unique < kMinkowskiUniqueTol &&
              elapsed < kMinkowskiSeconds,
          std::to_string(kMinkowskiPlanar) + " planar + " + std::to_string(kMinkowskiSpatial) + " spatial, " +
              std::to_string(failures) + " failures, max rel volume error " + fmt("%.2e", worst_volume) +
              ", max start dependence " + fmt("%.2e", worst_unique) + ", " + fmt("%.2f", elapsed) + " s"};
}

Outcome criterion_isotropy() {
  std::mt19937_64 rng(66);
  std::uniform_int_distribution<int> entry(-5, 5);
  int checked = 0;
  int mismatches = 0;
  while (checked < kLatticeMatrices) {
    const int n = 2 + checked % 2;
    std::array<std::array<std::int64_t, 3>, 3> rows{};
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        rows[i][k] = entry(rng);
        m(i, k) = rows[i][k];
      }
    }
    const auto count = oracle::lattice_index_by_counting(rows, n);
    if (count == 0) continue;
    if (cokernel(m).order() != count) ++mismatches;
    ++checked;
  }
  const auto tri = fixtures::triangle();
  std::int64_t triangle_order = 0;
  for (const auto& f : faces(tri, 2)) {
    if (f.tight_set == std::vector<int>{0, 2}) triangle_order = isotropy_order(tri, f);
  }
  bool footballs = true;
  for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{5, 2}}) {
    const auto ball = fixtures::football(p, q);
    const auto ends = faces(ball, 1);
    footballs = footballs && isotropy_order(ball, ends[0]) == p && isotropy_order(ball, ends[1]) == q;
  }
  return {mismatches == 0 && triangle_order == 2 && footballs,
          std::to_string(kLatticeMatrices) + " matrices, " + std::to_string(mismatches) +
              " mismatches; triangle vertex (0,1) order " + std::to_string(triangle_order) + "; football orders " +
              (footballs ? "(p,q)" : "wrong")};
}

Outcome criterion_csc() {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double worst = 0.0;
  for (int k = 0; k < kChainTuples; ++k) {
    const int n = 2 + k % 3;
    const double s_sq = std::abs(u(rng)) + 0.01;
    const double c1sq = u(rng);
    const double c2 = u(rng);
    const double rho = rho_squared_identity(s_sq, c1sq, n);
    const double riem = R_squared_identity(s_sq, c1sq, c2, n);
    CurvatureIntegrals d;
    d.n = n;
    d.b2_total = (2 * riem - 2 * rho + 5 * s_sq) / 360.0;
    d.int_c1sq = c1sq;
    d.int_c2 = c2;
    worst = std::max(worst, std::abs(s_squared_from_heat(d) - s_sq) / s_sq);
  }
  int verdict_errors = 0;
  std::uniform_real_distribution<double> pos(0.2, 4.0);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 3;
    CurvatureIntegrals d;
    d.n = n;
    d.vol = pos(rng);
    const double s_bar = pos(rng);
    d.c1_omega = s_bar * d.vol * oracle::factorial(n - 1) / (2 * kPi);
    d.int_s_sq = s_bar * s_bar * d.vol;
    if (!is_csc(d, kCscTol).is_csc) ++verdict_errors;
    d.int_s_sq = *d.int_s_sq * (1 + kCscDefect);
    if (is_csc(d, kCscTol).is_csc) ++verdict_errors;
  }
  return {worst < kChainTol && verdict_errors == 0,
          "chain closure max rel error " + fmt("%.2e", worst) + ", " + std::to_string(verdict_errors) +
              " wrong verdicts"};
}

// Every signing of the unsigned data balancing within tolerance, by full enumeration.
std::vector<std::vector<int>> balanced_signings(const std::vector<FacetDatum>& data) {
  const std::size_t d = data.size();
  double total = 0.0;
  for (const auto& f : data) total += f.volume;
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(data.front().unit_normal.size());
    std::vector<int> signs(d);
    for (std::size_t i = 0; i < d; ++i) {
      signs[i] = ((mask >> i) & 1U) ? -1 : 1;
      s += signs[i] * data[i].volume * data[i].unit_normal;
    }
    if (s.norm() < kSignBalanceTol * std::max(1.0, total)) out.push_back(signs);
  }
  return out;
}

Outcome criterion_signs(const std::vector<LabeledPolytope>& cases) {
  int bad = 0;
  for (const auto& p : cases) {
    auto data = facet_fingerprint(p);
    for (auto& f : data) {
      const IntVector dir = unsigned_direction(primitive(p[&f - data.data()].normal));
      f.unit_normal = to_double(dir).normalized();
    }
    const auto all = balanced_signings(data);
    bool ok = all.size() == 2;
    if (ok) {
      for (std::size_t i = 0; i < data.size(); ++i) ok = ok && all[0][i] == -all[1][i];
    }
    try {
      const auto [plus, minus] = resolve_signs(data);
      for (std::size_t i = 0; i < data.size(); ++i) {
        ok = ok && (plus[i].unit_normal + minus[i].unit_normal).norm() < 1e-15;
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++bad;
  }
  bool hexagon_ambiguous = false;
  try {
    auto data = facet_fingerprint(fixtures::symmetric_hexagon());
    for (auto& f : data) {
      if (f.unit_normal(0) < 0 || (f.unit_normal(0) == 0 && f.unit_normal(1) < 0)) f.unit_normal = -f.unit_normal;
    }
    resolve_signs(data);
  } catch (const Error& e) {
    hexagon_ambiguous = e.code() == ErrorCode::AmbiguousSigning;
  }
  return {bad == 0 && hexagon_ambiguous, std::to_string(cases.size()) + " instances, " + std::to_string(bad) +
                                             " without exactly two mirrored signings; symmetric hexagon " +
                                             (hexagon_ambiguous ? "AmbiguousSigning" : "not rejected")};
}

}  // namespace

int main() {
  const auto cases = round_trip_instances();
  const std::vector<std::function<Outcome()>> criteria{
      [&] { return criterion_round_trip(cases); },
      criterion_identity_football,
      criterion_rotation_football,
      criterion_trig,
      criterion_minkowski,
      criterion_isotropy,
      criterion_csc,
      [&] { return criterion_signs(cases); },
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
