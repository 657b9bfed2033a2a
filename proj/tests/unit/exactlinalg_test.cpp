#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "multfree/errors.hpp"
#include "multfree/exactlinalg.hpp"

using namespace multfree;

namespace {

bool lower_echelon(const IntegerMatrix& h) {
  // Each column's leading (topmost) nonzero row strictly increases; pivots positive.
  std::size_t last = 0;
  bool first = true, zero_seen = false;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::size_t i = 0;
    while (i < h.rows() && h(i, j) == 0) ++i;
    if (i == h.rows()) {
      zero_seen = true;
      continue;
    }
    if (zero_seen || (!first && i <= last) || h(i, j) <= 0) return false;
    for (std::size_t k = 0; k < j; ++k)
      if (h(i, k) < 0 || h(i, k) >= h(i, j)) return false;
    last = i;
    first = false;
  }
  return true;
}

}  // namespace

TEST(Hnf, IdentityIsFixed) {
  const auto h = hnf(IntegerMatrix::identity(2));
  EXPECT_EQ(h.H, IntegerMatrix::identity(2));
  EXPECT_EQ(h.U, IntegerMatrix::identity(2));
}

TEST(Hnf, UpperShearReducesToIdentity) {
  const IntegerMatrix m{{1, 2}, {0, 1}};
  const auto h = hnf(m);
  EXPECT_EQ(h.H, IntegerMatrix::identity(2));
  EXPECT_EQ(h.U, (IntegerMatrix{{1, -2}, {0, 1}}));
  EXPECT_EQ(m * h.U, h.H);
}

TEST(Hnf, PositiveDiagonalAlreadyReduced) {
  const IntegerMatrix m{{2, 0}, {0, 3}};
  const auto h = hnf(m);
  EXPECT_EQ(h.H, m);
  EXPECT_EQ(h.U, IntegerMatrix::identity(2));
}

TEST(Hnf, IdempotentOnRandomMatrices) {
  std::mt19937 rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto m = fixtures::random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 9);
    const auto h = hnf(m);
    ASSERT_EQ(m * h.U, h.H);
    ASSERT_TRUE(is_unimodular(h.U));
    ASSERT_TRUE(lower_echelon(h.H)) << h.H.to_string();
    const auto again = hnf(h.H);
    ASSERT_EQ(again.H, h.H);
  }
}

TEST(Snf, ZeroMatrix) {
  const auto s = snf(IntegerMatrix(2, 3));
  EXPECT_EQ(s.S, IntegerMatrix(2, 3));
  EXPECT_EQ(s.U, IntegerMatrix::identity(2));
  EXPECT_EQ(s.V, IntegerMatrix::identity(3));
  EXPECT_EQ(s.rank(), 0u);
}

TEST(Snf, Diag23) {
  const IntegerMatrix m{{2, 0}, {0, 3}};
  const auto s = snf(m);
  EXPECT_EQ(s.S, (IntegerMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(s.U * m * s.V, s.S);
  // gcd and lcm of the diagonal
  EXPECT_EQ(s.invariant_factors(), (std::vector<Integer>{gcd(Integer(2), Integer(3)), lcm(Integer(2), Integer(3))}));
}

TEST(Snf, RankOneContentTwo) {
  const IntegerMatrix m{{2, 4}, {4, 8}};
  const auto s = snf(m);
  EXPECT_EQ(s.S, (IntegerMatrix{{2, 0}, {0, 0}}));
  EXPECT_EQ(s.U * m * s.V, s.S);
}

TEST(Snf, RightVariantAgrees) {
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto m = fixtures::random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, 6);
    const auto a = snf(m), b = snf_right(m);
    EXPECT_EQ(a.S, b.S);
    EXPECT_EQ(a.invariant_factors(), invariant_factors(m));
  }
}

TEST(Unimodular, Examples) {
  EXPECT_TRUE(is_unimodular(IntegerMatrix::identity(3)));
  EXPECT_TRUE(is_unimodular(IntegerMatrix{{1, 1}, {0, 1}}));
  EXPECT_FALSE(is_unimodular(IntegerMatrix{{2, 0}, {0, 1}}));
  EXPECT_FALSE(is_unimodular(IntegerMatrix(2, 3)));
  const IntegerMatrix m{{2, 1}, {1, 1}};
  EXPECT_EQ(*unimodular_inverse(m) * m, IntegerMatrix::identity(2));
  EXPECT_EQ(determinant(IntegerMatrix{{0, 1}, {1, 0}}), -1);
}

TEST(SolveInteger, Identity) {
  const auto s = solve_integer(IntegerMatrix::identity(2), {5, 7});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (IntegerVector{5, 7}));
  EXPECT_TRUE(s->kernel_basis.empty());
}

TEST(SolveInteger, ParityObstruction) { EXPECT_FALSE(solve_integer(IntegerMatrix{{2}}, {1})); }

TEST(SolveInteger, RowVector) {
  const auto s = solve_integer(IntegerMatrix{{1, 2}}, {3});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (IntegerVector{3, 0}));
  ASSERT_EQ(s->kernel_basis.size(), 1u);
  EXPECT_EQ(s->kernel_basis[0], (IntegerVector{2, -1}));
}

TEST(SolveInteger, ShapeMismatch) { EXPECT_THROW(solve_integer(IntegerMatrix{{1, 2}}, {1, 2}), PreconditionError); }

TEST(SolveMod1, Examples) {
  auto a = solve_mod1(IntegerMatrix{{1}}, {Rational(1, 2)});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->particular, (RationalVector{Rational(1, 2)}));
  EXPECT_TRUE(a->torsion.empty());
  EXPECT_EQ(a->free_parameters(), 0u);

  auto b = solve_mod1(IntegerMatrix{{2}}, {Rational(1, 2)});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->particular, (RationalVector{Rational(1, 4)}));
  ASSERT_EQ(b->torsion.size(), 1u);
  EXPECT_EQ(b->torsion[0].generator, (RationalVector{Rational(1, 2)}));
  EXPECT_EQ(b->torsion[0].order, 2);
  EXPECT_EQ(b->free_parameters(), 0u);

  EXPECT_FALSE(solve_mod1(IntegerMatrix{{0}}, {Rational(1, 3)}));
}

TEST(SolveMod1, FreeDirection) {
  auto s = solve_mod1(IntegerMatrix{{1, -1}}, {Rational(1, 3)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->free_parameters(), 1u);
}

TEST(Rational, Helpers) {
  EXPECT_EQ(frac(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(frac(Rational(7, 2)), Rational(1, 2));
  EXPECT_TRUE(is_zero_mod1({Rational(3), Rational(-2)}));
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
  EXPECT_EQ(*parse_rational("4/6"), Rational(2, 3));
  EXPECT_EQ(*parse_rational("-5"), Rational(-5));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("x"));
  EXPECT_EQ(primitive({4, -6, 0}), (IntegerVector{2, -3, 0}));
  EXPECT_EQ(primitive_direction({Rational(1, 2), Rational(-1, 3)}), (IntegerVector{3, -2}));
  EXPECT_EQ(content({0, 0}), 0);
}

TEST(Determinism, SnfIsBitStable) {
  std::mt19937 rng(3);
  const auto m = fixtures::random_matrix(rng, 5, 4, 20);
  const auto a = snf(m), b = snf(m);
  EXPECT_EQ(a.S, b.S);
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.V, b.V);
}
