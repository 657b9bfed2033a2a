#pragma once

// Rational polyhedral cones and lattice polytopes in Z^n with the standard
// lattice: lineality, pointedness, extremal rays, smoothness, vertex tangent
// cones, the Delzant condition and invariance under finite matrix groups.

#include <cstddef>
#include <optional>
#include <vector>

#include "multfree/exactlinalg.hpp"
#include "multfree/group.hpp"

namespace multfree {

inline constexpr std::size_t kMaxConeRank = 6;
inline constexpr std::size_t kMaxPolytopeRank = 4;

struct IntegralAffineSpace {
  std::size_t rank = 0;
  friend bool operator==(const IntegralAffineSpace&, const IntegralAffineSpace&) = default;
};

class ConeData {
 public:
  // Generators are primitivized, deduplicated and sorted. Zero generators
  // and ranks above kMaxConeRank are rejected with PreconditionError.
  ConeData(std::size_t rank, std::vector<IntegerVector> generators);
  static ConeData zero(std::size_t rank) { return ConeData(rank, {}); }

  IntegralAffineSpace space() const noexcept { return {rank_}; }
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<IntegerVector>& generators() const noexcept { return generators_; }

  bool contains(const IntegerVector& v) const;
  bool contains(const RationalVector& v) const;

  friend bool operator==(const ConeData&, const ConeData&) = default;

 private:
  std::size_t rank_;
  std::vector<IntegerVector> generators_;
};

// Same cone as a set (mutual containment of generators).
bool same_cone(const ConeData& a, const ConeData& b);

class PolytopeData {
 public:
  // Points must be distinct, each a vertex of the hull of all of them, and
  // affinely span R^rank. Nothing is repaired; violations throw
  // PreconditionError. Vertices are stored sorted.
  PolytopeData(std::size_t rank, std::vector<RationalVector> vertices);

  IntegralAffineSpace space() const noexcept { return {rank_}; }
  std::size_t rank() const noexcept { return rank_; }
  const std::vector<RationalVector>& vertices() const noexcept { return vertices_; }
  bool has_vertex(const RationalVector& v) const;

  friend bool operator==(const PolytopeData&, const PolytopeData&) = default;

 private:
  std::size_t rank_;
  std::vector<RationalVector> vertices_;
};

// A finite group acting on Z^n through matrices with
// matrix(g h) = matrix(g) matrix(h).
class LatticeGroupAction {
 public:
  LatticeGroupAction(FiniteGroup group, std::size_t rank, std::vector<IntegerMatrix> matrices);

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const IntegerMatrix& matrix(std::size_t g) const { return matrices_[g]; }
  const std::vector<IntegerMatrix>& matrices() const noexcept { return matrices_; }

 private:
  FiniteGroup group_;
  std::size_t rank_;
  std::vector<IntegerMatrix> matrices_;
};

// Lattice basis of (C ∩ -C) ∩ Z^n in column Hermite form; empty iff pointed.
std::vector<IntegerVector> lineality_space(const ConeData& c);
bool is_pointed(const ConeData& c);

// Primitive generators of the extremal rays of C modulo its lineality
// space, sorted. For pointed cones these are a subset of the generators; in
// general each ray is the canonical lift reduced against the lineality basis.
std::vector<IntegerVector> extremal_rays(const ConeData& c);

struct SmoothnessReport {
  bool smooth = false;
  // Columns: extremal-ray lifts followed by the lineality basis; a Z-basis.
  std::optional<std::vector<IntegerVector>> witness;
};

// Smooth in the sense C = Cone(v_1..v_k, ±v_{k+1}..±v_n) for a basis v of
// Z^n. In particular smooth cones are full-dimensional.
SmoothnessReport is_smooth(const ConeData& c);

// Cone spanned by the primitive edge directions at vertex v.
ConeData tangent_cone_at_vertex(const PolytopeData& p, const RationalVector& v);

struct DelzantReport {
  bool delzant = false;
  std::optional<RationalVector> failing_vertex;  // first in sorted vertex order
};

DelzantReport is_delzant_polytope(const PolytopeData& p);

// gC ⊆ C for every g (equivalently gC = C as the group is finite).
bool is_invariant(const ConeData& c, const LatticeGroupAction& action);
// Every group element permutes the vertex set.
bool is_invariant(const PolytopeData& p, const LatticeGroupAction& action);

ConeData transform(const IntegerMatrix& a, const ConeData& c);
// v -> a v + b
PolytopeData transform(const IntegerMatrix& a, const RationalVector& b, const PolytopeData& p);

}  // namespace multfree
