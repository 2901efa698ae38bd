// Small named polytopes shared by the test suites.

#pragma once

#include <string>
#include <vector>

#include "orbihear/polytope.hpp"
#include "orbihear/rational.hpp"

namespace fixtures {

struct Row {
  orbihear::IntVector normal;
  std::string offset;
  int label = 1;
};

inline orbihear::LabeledPolytope make(int dim, const std::vector<Row>& rows) {
  std::vector<orbihear::LabeledHalfspace> hs;
  for (const auto& r : rows) hs.push_back({r.normal, orbihear::parse_rational(r.offset), r.label});
  return orbihear::LabeledPolytope(dim, hs);
}

/// x >= 0, y >= 0, x + 2y <= 2: vertices (0,0), (0,1), (2,0).
inline orbihear::LabeledPolytope triangle() {
  return make(2, {{{-1, 0}, "0"}, {{0, -1}, "0"}, {{1, 2}, "2"}});
}

inline orbihear::LabeledPolytope unit_square() {
  return make(2, {{{-1, 0}, "0"}, {{1, 0}, "1"}, {{0, -1}, "0"}, {{0, 1}, "1"}});
}

inline orbihear::LabeledPolytope centered_square() {
  return make(2, {{{-1, 0}, "1"}, {{1, 0}, "1"}, {{0, -1}, "1"}, {{0, 1}, "1"}});
}

inline orbihear::LabeledPolytope unit_cube() {
  return make(3, {{{-1, 0, 0}, "0"},
                  {{1, 0, 0}, "1"},
                  {{0, -1, 0}, "0"},
                  {{0, 1, 0}, "1"},
                  {{0, 0, -1}, "0"},
                  {{0, 0, 1}, "1"}});
}

/// |x| <= 1, |y| <= 1, |x + y| <= 1: opposite edges balance pairwise.
inline orbihear::LabeledPolytope symmetric_hexagon() {
  return make(2, {{{1, 0}, "1"}, {{1, 1}, "1"}, {{0, 1}, "1"}, {{-1, 0}, "1"}, {{-1, -1}, "1"}, {{0, -1}, "1"}});
}

/// Generic pentagon with one label-3 facet.
inline orbihear::LabeledPolytope pentagon() {
  return make(2, {{{-1, 0}, "0", 1}, {{0, -1}, "0", 1}, {{3, -1}, "6", 3}, {{1, 2}, "7", 1}, {{-1, 3}, "8", 2}});
}

/// The football interval [-1, 1] with endpoint labels p and q.
inline orbihear::LabeledPolytope football(int p, int q) {
  return make(1, {{{1}, "1", p}, {{-1}, "1", q}});
}

}  // namespace fixtures
