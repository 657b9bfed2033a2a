#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "multfree/cones.hpp"
#include "multfree/errors.hpp"
#include "oracles.hpp"

using namespace multfree;

namespace {

ConeData cone(std::vector<IntegerVector> g, std::size_t n = 2) { return ConeData(n, std::move(g)); }

PolytopeData poly(std::vector<std::vector<long>> pts) {
  std::vector<RationalVector> vs;
  for (const auto& p : pts) {
    RationalVector v;
    for (long x : p) v.emplace_back(x);
    vs.push_back(v);
  }
  return PolytopeData(pts.front().size(), vs);
}

LatticeGroupAction action(const LatticeModule& m) { return LatticeGroupAction(m.group(), m.rank(), m.matrices()); }

}  // namespace

TEST(ConeData, Canonicalizes) {
  const ConeData c(2, {{0, 3}, {2, 0}, {1, 0}});
  EXPECT_EQ(c.generators(), (std::vector<IntegerVector>{{0, 1}, {1, 0}}));
  EXPECT_THROW(ConeData(2, {{0, 0}}), PreconditionError);
  EXPECT_THROW(ConeData(2, {{1, 0, 0}}), PreconditionError);
  EXPECT_THROW(ConeData(7, {}), PreconditionError);
}

TEST(Lineality, Examples) {
  EXPECT_TRUE(lineality_space(cone({{1, 0}, {0, 1}})).empty());
  EXPECT_EQ(lineality_space(cone({{1, 0}, {-1, 0}})), (std::vector<IntegerVector>{{1, 0}}));
  const auto l = lineality_space(cone({{1, 0}, {0, 1}, {-1, -1}}));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_TRUE(is_unimodular(IntegerMatrix::from_columns(l, 2)));
}

TEST(Pointed, Examples) {
  EXPECT_TRUE(is_pointed(cone({{1, 0}, {1, 1}})));
  EXPECT_FALSE(is_pointed(cone({{1, 0}, {-1, 0}})));
  EXPECT_TRUE(is_pointed(ConeData::zero(2)));
}

TEST(ExtremalRays, Examples) {
  EXPECT_EQ(extremal_rays(cone({{1, 0}, {0, 1}, {1, 1}})), (std::vector<IntegerVector>{{0, 1}, {1, 0}}));
  EXPECT_EQ(extremal_rays(cone({{2, 0}})), (std::vector<IntegerVector>{{1, 0}}));
  EXPECT_TRUE(extremal_rays(ConeData::zero(3)).empty());
}

TEST(ExtremalRays, MatchesLpOracleOnPointedCones) {
  std::mt19937 rng(5);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<IntegerVector> gens;
    for (std::size_t k = 0; k < 2 + rng() % 4; ++k) {
      IntegerVector v(n);
      for (auto& x : v) x = static_cast<long>(rng() % 4);  // nonnegative orthant: pointed
      if (content(v) != 0) gens.push_back(v);
    }
    if (gens.empty()) continue;
    const ConeData c(n, gens);
    std::vector<IntegerVector> expected;
    for (std::size_t i = 0; i < c.generators().size(); ++i) {
      std::vector<IntegerVector> others;
      for (std::size_t j = 0; j < c.generators().size(); ++j)
        if (j != i) others.push_back(c.generators()[j]);
      if (!oracle::caratheodory_member(others, to_rational(c.generators()[i]))) expected.push_back(c.generators()[i]);
    }
    ASSERT_EQ(extremal_rays(c), expected);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(ConeData, MembershipMatchesCaratheodory) {
  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<IntegerVector> gens;
    for (int k = 0; k < 3; ++k) {
      IntegerVector v(n);
      for (auto& x : v) x = static_cast<long>(rng() % 5) - 2;
      if (content(v) != 0) gens.push_back(v);
    }
    const ConeData c(n, gens);
    IntegerVector p(n);
    for (auto& x : p) x = static_cast<long>(rng() % 7) - 3;
    ASSERT_EQ(c.contains(p), oracle::caratheodory_member(c.generators(), to_rational(p)));
  }
}

TEST(Smooth, Examples) {
  const auto a = is_smooth(cone({{1, 0}, {0, 1}}));
  EXPECT_TRUE(a.smooth);
  ASSERT_TRUE(a.witness);
  EXPECT_EQ(*a.witness, (std::vector<IntegerVector>{{0, 1}, {1, 0}}));
  EXPECT_FALSE(is_smooth(cone({{1, 0}, {1, 2}})).smooth);
  EXPECT_FALSE(is_unimodular(IntegerMatrix{{1, 1}, {0, 2}}));
  const auto b = is_smooth(cone({{1, 0}, {-1, 0}, {0, 1}}));
  EXPECT_TRUE(b.smooth);
  ASSERT_TRUE(b.witness);
  EXPECT_TRUE(is_unimodular(IntegerMatrix::from_columns(*b.witness, 2)));
  // lower-dimensional cones are not smooth; the zero cone only at rank 0
  EXPECT_FALSE(is_smooth(cone({{1, 0}})).smooth);
  EXPECT_TRUE(is_smooth(ConeData::zero(0)).smooth);
  EXPECT_FALSE(is_smooth(ConeData::zero(2)).smooth);
  // whole space
  EXPECT_TRUE(is_smooth(cone({{1, 0}, {0, 1}, {-1, -1}})).smooth);
}

TEST(Smooth, UnimodularInvariance) {
  std::mt19937 rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<IntegerVector> gens;
    for (std::size_t k = 0; k < 1 + rng() % 5; ++k) {
      IntegerVector v(n);
      for (auto& x : v) x = static_cast<long>(rng() % 5) - 2;
      if (content(v) != 0) gens.push_back(v);
    }
    const ConeData c(n, gens);
    const auto a = fixtures::random_unimodular(rng, n);
    const ConeData ac = transform(a, c);
    ASSERT_EQ(is_smooth(c).smooth, is_smooth(ac).smooth);
    ASSERT_EQ(is_pointed(c), is_pointed(ac));
  }
}

TEST(Smooth, PointedCriterionAgreesWithSnf) {
  // For pointed cones: smooth iff the ray matrix has unit invariant factors
  // and as many rays as the rank.
  std::mt19937 rng(17);
  int smooth_seen = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<IntegerVector> gens;
    for (std::size_t k = 0; k < 1 + rng() % 5; ++k) {
      IntegerVector v(n);
      for (auto& x : v) x = static_cast<long>(rng() % 3);
      if (content(v) != 0) gens.push_back(v);
    }
    const ConeData c = transform(fixtures::random_unimodular(rng, n), ConeData(n, gens));
    if (!is_pointed(c)) continue;
    const auto rays = extremal_rays(c);
    bool via_snf = rays.size() == n;
    if (via_snf) {
      const auto f = invariant_factors(IntegerMatrix::from_columns(rays, n));
      via_snf = f.size() == n && std::all_of(f.begin(), f.end(), [](const Integer& d) { return d == 1; });
    }
    ASSERT_EQ(is_smooth(c).smooth, via_snf);
    smooth_seen += via_snf;
  }
  EXPECT_GT(smooth_seen, 10);
}

TEST(Polytope, Validation) {
  EXPECT_THROW(poly({{0, 0}, {1, 0}, {2, 0}}), PreconditionError);                // not full-dimensional
  EXPECT_THROW(poly({{0, 0}, {2, 0}, {0, 2}, {1, 1}}), PreconditionError);        // (1,1) not a vertex
  EXPECT_THROW(poly({{0, 0}, {0, 0}, {1, 0}, {0, 1}}), PreconditionError);        // duplicate
  EXPECT_THROW(poly({{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}}), PreconditionError);      // rank limit
  EXPECT_NO_THROW(poly({{0, 0}, {2, 0}, {0, 2}}));
}

TEST(TangentCone, Examples) {
  const auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(tangent_cone_at_vertex(sq, {0, 0}), cone({{1, 0}, {0, 1}}));
  const auto simplex = poly({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(tangent_cone_at_vertex(simplex, {1, 0}), cone({{-1, 0}, {-1, 1}}));
  const auto seg = poly({{0}, {1}});
  EXPECT_EQ(tangent_cone_at_vertex(seg, {1}), ConeData(1, {{-1}}));
  EXPECT_THROW(tangent_cone_at_vertex(sq, {Rational(1, 2), 0}), PreconditionError);
}

TEST(TangentCone, ContainsAllOtherVertices) {
  const auto p = poly({{0, 0, 0}, {2, 0, 0}, {0, 3, 0}, {0, 0, 1}, {1, 1, 1}});
  for (const auto& v : p.vertices()) {
    const auto t = tangent_cone_at_vertex(p, v);
    for (const auto& w : p.vertices()) {
      RationalVector d(3);
      for (std::size_t i = 0; i < 3; ++i) d[i] = w[i] - v[i];
      EXPECT_TRUE(t.contains(d));
    }
  }
}

TEST(Delzant, Examples) {
  EXPECT_TRUE(is_delzant_polytope(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).delzant);
  EXPECT_TRUE(is_delzant_polytope(poly({{0, 0}, {1, 0}, {0, 1}})).delzant);
  const auto r = is_delzant_polytope(poly({{0, 0}, {1, 0}, {0, 2}}));
  EXPECT_FALSE(r.delzant);
  ASSERT_TRUE(r.failing_vertex);
  EXPECT_EQ(*r.failing_vertex, (RationalVector{1, 0}));
  // the octahedron is not simple
  EXPECT_FALSE(is_delzant_polytope(
                   poly({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}))
                   .delzant);
}

TEST(Delzant, AffineInvariance) {
  std::mt19937 rng(19);
  const auto base = poly({{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}});
  const bool expect = is_delzant_polytope(base).delzant;
  for (int t = 0; t < 30; ++t) {
    const auto a = fixtures::random_unimodular(rng, 2);
    const RationalVector b{Rational(static_cast<long>(rng() % 5) - 2), Rational(1, 3)};
    EXPECT_EQ(is_delzant_polytope(transform(a, b, base)).delzant, expect);
  }
  const auto d = oracle::edge_determinant_delzant(2, base.vertices());
  EXPECT_EQ(d.delzant, expect);
}

TEST(Invariance, Examples) {
  const auto sq = poly({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
  EXPECT_TRUE(is_invariant(sq, action(fixtures::product_sign(2))));
  const auto simplex = poly({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_TRUE(is_invariant(simplex, action(fixtures::z2_module(fixtures::swap2()))));
  EXPECT_FALSE(is_invariant(simplex, action(fixtures::z2_module(fixtures::diag({-1, 1})))));
  EXPECT_TRUE(is_invariant(cone({{1, 0}, {0, 1}}), action(fixtures::z2_module(fixtures::swap2()))));
  EXPECT_FALSE(is_invariant(cone({{1, 0}, {0, 1}}), action(fixtures::product_sign(2))));
  EXPECT_TRUE(is_invariant(cone({{1, 0}, {-1, 0}, {0, 1}}), action(fixtures::z2_module(fixtures::diag({-1, 1})))));
}

TEST(LatticeGroupAction, RejectsNonHomomorphisms) {
  EXPECT_THROW(LatticeGroupAction(FiniteGroup::cyclic(2), 2, {IntegerMatrix::identity(2), IntegerMatrix{{1, 1}, {0, 1}}}),
               PreconditionError);
}
