#include "lp.hpp"

#include "multfree/errors.hpp"

#include <stdexcept>

namespace multfree::detail {

std::optional<RationalVector> nonnegative_combination(const std::vector<RationalVector>& columns,
                                                      const RationalVector& target) {
  const std::size_t m = target.size();
  const std::size_t k = columns.size();
  for (const auto& c : columns)
    if (c.size() != m) throw PreconditionError("nonnegative_combination: dimension mismatch");

  // Tableau over [lambda (k) | artificial (m) | rhs].
  const std::size_t width = k + m + 1;
  std::vector<RationalVector> t(m, RationalVector(width));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = target[i] < 0;
    for (std::size_t j = 0; j < k; ++j) t[i][j] = flip ? Rational(-columns[j][i]) : columns[j][i];
    t[i][k + i] = 1;
    t[i][width - 1] = flip ? Rational(-target[i]) : target[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;

  // Reduced costs of the artificial-sum objective.
  RationalVector cost(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= k && j < k + m) continue;
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for this objective

    const Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  if (cost[width - 1] != 0) return std::nullopt;  // -(artificial sum) at optimum
  RationalVector lambda(k);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < k) {
      lambda[basis[i]] = t[i][width - 1];
    } else if (t[i][width - 1] != 0) {
      return std::nullopt;
    }
  }
  return lambda;
}

}  // namespace multfree::detail
