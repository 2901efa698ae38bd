#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "orbihear/error.hpp"
#include "orbihear/lattice.hpp"

using namespace orbihear;

namespace {

const Face& face_with(const std::vector<Face>& fs, std::vector<int> tight) {
  auto it = std::find_if(fs.begin(), fs.end(), [&](const Face& f) { return f.tight_set == tight; });
  if (it == fs.end()) throw std::runtime_error("face not found");
  return *it;
}

bool is_diagonal_chain(const IntegerMatrix& d) {
  Integer prev = 1;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (r != c && d(r, c) != 0) return false;
    }
  }
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (prev == 0 && d(i, i) != 0) return false;
    if (prev != 0 && d(i, i) % prev != 0) return false;
    prev = d(i, i);
  }
  return true;
}

void expect_valid_smith(const IntegerMatrix& m) {
  const auto s = smith_normal_form(m);
  EXPECT_EQ(s.U * m * s.V, s.D);
  EXPECT_EQ(abs(s.U.determinant()), 1);
  EXPECT_EQ(abs(s.V.determinant()), 1);
  EXPECT_TRUE(is_diagonal_chain(s.D));
}

}  // namespace

TEST(Lattice, Primitive) {
  EXPECT_EQ(primitive({2, 4}), (IntVector{1, 2}));
  EXPECT_EQ(primitive({-3, 0, 6}), (IntVector{-1, 0, 2}));
  EXPECT_EQ(primitive({1, 2}), (IntVector{1, 2}));
  try {
    primitive({0, 0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(Lattice, SmithExamples) {
  EXPECT_EQ(smith_normal_form(IntegerMatrix::identity(2)).D, IntegerMatrix::identity(2));
  EXPECT_EQ(smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}}).D, (IntegerMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(smith_normal_form(IntegerMatrix{{0, 1}, {1, 2}}).D, IntegerMatrix::identity(2));
  expect_valid_smith(IntegerMatrix{{2, 0}, {0, 3}});
  expect_valid_smith(IntegerMatrix{{0, 1}, {1, 2}});
  expect_valid_smith(IntegerMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  EXPECT_EQ(smith_normal_form(IntegerMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}).D,
            (IntegerMatrix{{2, 0, 0}, {0, 6, 0}, {0, 0, 12}}));
}

TEST(Lattice, SmithOfRectangularAndZero) {
  expect_valid_smith(IntegerMatrix{{1, 2, 3}, {4, 5, 6}});
  expect_valid_smith(IntegerMatrix(2, 3));
  EXPECT_EQ(cokernel(IntegerMatrix{{2, 0}}).invariant_factors, (std::vector<Integer>{2, 0}));
  EXPECT_TRUE(cokernel(IntegerMatrix::identity(3)).trivial());
}

TEST(LatticeProperty, SmithAgreesWithLatticeCounting) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> entry(-5, 5);
  int checked = 0;
  while (checked < 60) {
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
    expect_valid_smith(m);
    EXPECT_EQ(cokernel(m).order(), count);

    // Invariant factors do not depend on row or column order.
    IntegerMatrix swapped(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) swapped(i, k) = m(n - 1 - i, (k + 1) % n);
    }
    EXPECT_EQ(smith_normal_form(swapped).D, smith_normal_form(m).D);
    ++checked;
  }
}

TEST(Lattice, TriangleVertexOrders) {
  const auto tri = fixtures::triangle();
  const auto verts = faces(tri, 2);
  EXPECT_EQ(isotropy_order(tri, face_with(verts, {0, 2})), 2);  // vertex (0,1)
  EXPECT_EQ(isotropy_group(tri, face_with(verts, {0, 2})).invariant_factors, (std::vector<Integer>{2}));
  EXPECT_EQ(isotropy_order(tri, face_with(verts, {1, 2})), 1);  // vertex (2,0)
  EXPECT_EQ(isotropy_order(tri, face_with(verts, {0, 1})), 1);  // vertex (0,0)
  EXPECT_EQ(isotropy_order(tri, faces(tri, 0).front()), 1);
  EXPECT_TRUE(isotropy_group(tri, faces(tri, 0).front()).trivial());
}

TEST(Lattice, FootballEndpoints) {
  for (auto [p, q] : {std::pair{2, 3}, std::pair{5, 5}, std::pair{1, 4}}) {
    const auto ball = fixtures::football(p, q);
    const auto ends = faces(ball, 1);
    ASSERT_EQ(ends.size(), 2u);
    EXPECT_EQ(isotropy_order(ball, face_with(ends, {0})), p);
    EXPECT_EQ(isotropy_order(ball, face_with(ends, {1})), q);
  }
}

TEST(Lattice, FacetOrderEqualsLabel) {
  const auto pent = fixtures::pentagon();
  for (const auto& f : faces(pent, 1)) {
    EXPECT_EQ(isotropy_order(pent, f), pent[f.tight_set.front()].label);
  }
  const auto five = fixtures::make(2, {{{-1, 0}, "0", 5}, {{0, -1}, "0"}, {{1, 1}, "1"}});
  EXPECT_EQ(isotropy_order(five, face_with(faces(five, 1), {0})), 5);
}

TEST(Lattice, DelzantVerticesAreFree) {
  const auto cube = fixtures::unit_cube();
  for (const auto& v : faces(cube, 3)) EXPECT_EQ(isotropy_order(cube, v), 1);
}

TEST(Lattice, IsotropyElementsEnumerateTheGroup) {
  const auto pent = fixtures::pentagon();
  for (int codim = 1; codim <= 2; ++codim) {
    for (const auto& f : faces(pent, codim)) {
      const auto elems = isotropy_elements(pent, f);
      ASSERT_EQ(static_cast<std::int64_t>(elems.size()), isotropy_order(pent, f));
      for (const auto& x : elems.front()) EXPECT_EQ(x, 0);
      std::set<std::vector<Rational>> distinct(elems.begin(), elems.end());
      EXPECT_EQ(distinct.size(), elems.size());
      for (const auto& e : elems) {
        for (const auto& x : e) {
          EXPECT_GE(x, 0);
          EXPECT_LT(x, 1);
        }
      }
    }
  }
}
