#pragma once

#include <cstddef>
#include <vector>

#include "multfree/exactlinalg.hpp"
#include "multfree/groupcoh.hpp"

namespace multfree::detail {

// Canonical representatives of k-cochains modulo coboundaries.
//
// For f with d f = b (mod 1), f + B^k is moved onto the (1/grid)-lattice by
// zeroing its coordinates along ker d (which over R is the coboundary space
// for a finite group), then the lexicographically least point of the coset
// f + (B^k on the grid) is found by reduction against a triangular basis.
class CocycleNormalizer {
 public:
  CocycleNormalizer(const LatticeModule& module, std::size_t degree, Integer grid);

  std::size_t degree() const noexcept { return degree_; }
  const Integer& grid() const noexcept { return grid_; }
  const IntegerMatrix& differential() const noexcept { return forward_; }

  // Generators V e_i / d_i of the cocycle group modulo its identity
  // component, one per invariant factor d_i > 1 of the differential.
  const std::vector<TorsionGenerator>& torsion() const noexcept { return torsion_; }

  RationalVector canonical(const RationalVector& flat) const;

 private:
  std::size_t degree_;
  Integer grid_;
  IntegerMatrix forward_;
  IntegerMatrix v_;
  IntegerMatrix v_inverse_;
  std::size_t rank_ = 0;
  IntegerMatrix lattice_;  // lower triangular, positive diagonal
  std::vector<TorsionGenerator> torsion_;
};

}  // namespace multfree::detail
