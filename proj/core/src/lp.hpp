#pragma once

// Exact rational feasibility LP used by the cone and polytope code.

#include <optional>
#include <vector>

#include "multfree/exactlinalg.hpp"

namespace multfree::detail {

// Nonnegative coefficients lambda with sum_j lambda_j * columns[j] = target,
// or nullopt when target is outside Cone(columns). Phase-one simplex with
// Bland's rule over the rationals; terminates on every input.
std::optional<RationalVector> nonnegative_combination(const std::vector<RationalVector>& columns,
                                                      const RationalVector& target);

inline bool in_cone(const std::vector<RationalVector>& columns, const RationalVector& target) {
  return nonnegative_combination(columns, target).has_value();
}

}  // namespace multfree::detail
