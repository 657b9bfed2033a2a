#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal forms,
// integer solving and solving over the torus (Q/Z)^n.
//
// Conventions shared by every caller:
//   * hnf() is column-style: H = M * U is in lower column-echelon form.
//   * snf() returns U, V unimodular with U * M * V = S.
//   * torus elements are written additively and stored as representatives in
//     [0, 1) with reduced fractions.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace multfree {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<IntegerVector>& rows, std::size_t cols);
  static IntegerMatrix from_columns(const std::vector<IntegerVector>& cols, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  IntegerVector row(std::size_t i) const;
  IntegerVector column(std::size_t j) const;
  const std::vector<Integer>& entries() const noexcept { return entries_; }

  IntegerMatrix transpose() const;
  bool is_zero() const;

  IntegerVector apply(const IntegerVector& v) const;
  RationalVector apply(const RationalVector& v) const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

struct HermiteDecomposition {
  IntegerMatrix H;  // M * U, column echelon
  IntegerMatrix U;  // unimodular, cols(M) x cols(M)
};

struct SmithDecomposition {
  IntegerMatrix S;
  IntegerMatrix U;
  IntegerMatrix V;

  std::size_t rank() const;
  // Nonzero diagonal entries d_1 | d_2 | ... | d_r.
  std::vector<Integer> invariant_factors() const;
};

HermiteDecomposition hnf(const IntegerMatrix& m);

// Pivot rule: smallest nonzero absolute value, ties to the lowest (row, col).
SmithDecomposition snf(const IntegerMatrix& m);
// Same reduction, but only S and V are produced (U is left empty).
SmithDecomposition snf_right(const IntegerMatrix& m);

// Diagonal of the Smith form without accumulating the transforms. Much
// cheaper for the tall bar-resolution matrices.
std::vector<Integer> invariant_factors(const IntegerMatrix& m);

Integer determinant(const IntegerMatrix& m);
std::size_t rank(const IntegerMatrix& m);
bool is_unimodular(const IntegerMatrix& m);
std::optional<IntegerMatrix> unimodular_inverse(const IntegerMatrix& m);

struct IntegerSolution {
  IntegerVector particular;
  std::vector<IntegerVector> kernel_basis;  // column-HNF canonical basis
};

std::optional<IntegerSolution> solve_integer(const IntegerMatrix& m, const IntegerVector& b);

struct TorsionGenerator {
  RationalVector generator;  // reduced mod 1
  Integer order;
};

// Solution set of M x = b (mod Z^rows) with x in (Q/Z)^cols:
//   particular + span of torsion generators + real span of free_directions.
struct SolutionSetMod1 {
  RationalVector particular;
  std::vector<TorsionGenerator> torsion;
  std::vector<IntegerVector> free_directions;

  std::size_t free_parameters() const noexcept { return free_directions.size(); }
};

std::optional<SolutionSetMod1> solve_mod1(const IntegerMatrix& m, const RationalVector& b);

// Rational helpers.
Rational frac(const Rational& q);  // representative in [0, 1)
RationalVector reduce_mod1(RationalVector v);
bool is_zero_mod1(const RationalVector& v);
RationalVector to_rational(const IntegerVector& v);
Integer content(const IntegerVector& v);  // gcd of entries, 0 for the zero vector
IntegerVector primitive(const IntegerVector& v);
// Smallest positive integer multiple of a rational direction, made primitive.
IntegerVector primitive_direction(const RationalVector& v);
Integer common_denominator(const RationalVector& v);

std::string to_string(const Rational& q);  // "p/q", "0/1" for zero
std::optional<Rational> parse_rational(const std::string& s);

}  // namespace multfree
