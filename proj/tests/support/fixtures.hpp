#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "multfree/cones.hpp"
#include "multfree/extsheaf.hpp"
#include "multfree/groupcoh.hpp"

namespace fixtures {

using namespace multfree;

// Canonical a/b (the two-argument gmpxx constructor does not reduce).
inline Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline IntegerMatrix diag(const std::vector<long>& d) {
  IntegerMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// Z2 x Z2 on Z^n: element bit i flips coordinate i (i < 2), others fixed.
inline LatticeModule product_sign(std::size_t n = 2) {
  FiniteGroup g = FiniteGroup::signs(2);
  std::vector<IntegerMatrix> ms;
  for (std::size_t x = 0; x < 4; ++x) {
    std::vector<long> d(n, 1);
    if (x & 1) d[0] = -1;
    if (n > 1 && (x & 2)) d[1] = -1;
    ms.push_back(diag(d));
  }
  return LatticeModule(std::move(g), n, std::move(ms));
}

// Z2 acting on Z^n through a single involution.
inline LatticeModule z2_module(const IntegerMatrix& involution) {
  return LatticeModule(FiniteGroup::cyclic(2), involution.rows(),
                       {IntegerMatrix::identity(involution.rows()), involution});
}

inline LatticeModule z2_sign(std::size_t n = 1) {
  return z2_module(diag(std::vector<long>(n, -1)));
}

inline IntegerMatrix swap2() { return IntegerMatrix{{0, 1}, {1, 0}}; }

// kappa(g, g) = x in rank 1 over Z2, the rest 0.
inline TorusTwoCocycle z2_kappa(const LatticeModule& m, const RationalVector& x) {
  std::vector<RationalVector> v(4, RationalVector(m.rank(), 0));
  v[1 * 2 + 1] = x;
  return TorusTwoCocycle(m, v);
}

// The normalizer of the maximal torus of SU(2): a non-split extension.
inline ExtensionData normalizer_model() { return ExtensionData(z2_kappa(z2_sign(1), {Rational(1, 2)})); }

// kappa = d s for a Gamma-table s with s(e) = 0: a split but nonzero cocycle.
inline TorusTwoCocycle coboundary_kappa(const LatticeModule& m, const std::vector<RationalVector>& s) {
  Cochain c{1, s};
  return TorusTwoCocycle(m, coboundary(m, c).values);
}

inline std::vector<FiniteGroup> small_groups() {
  return {FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
          FiniteGroup::signs(2)};
}

// A few modules of each small group, ranks 1..2.
inline std::vector<LatticeModule> small_modules() {
  std::vector<LatticeModule> out;
  for (const auto& g : small_groups())
    for (std::size_t n = 1; n <= 2; ++n) out.push_back(LatticeModule::trivial(g, n));
  out.push_back(z2_sign(1));
  out.push_back(z2_sign(2));
  out.push_back(z2_module(swap2()));
  out.push_back(z2_module(diag({-1, 1})));
  out.push_back(z2_module(IntegerMatrix{{0, -1}, {-1, 0}}));
  // Z3 rotating the hexagonal lattice, Z4 by a quarter turn.
  {
    const IntegerMatrix r{{0, -1}, {1, -1}};
    out.emplace_back(FiniteGroup::cyclic(3), 2, std::vector<IntegerMatrix>{IntegerMatrix::identity(2), r, r * r});
  }
  {
    const IntegerMatrix r{{0, -1}, {1, 0}};
    out.emplace_back(FiniteGroup::cyclic(4), 2,
                     std::vector<IntegerMatrix>{IntegerMatrix::identity(2), r, r * r, r * r * r});
    out.emplace_back(FiniteGroup::cyclic(4), 1,
                     std::vector<IntegerMatrix>{diag({1}), diag({-1}), diag({1}), diag({-1})});
  }
  out.push_back(product_sign(1));
  out.push_back(product_sign(2));
  {
    // Z2 x Z2 by swap and total sign
    FiniteGroup g = FiniteGroup::signs(2);
    const IntegerMatrix s = swap2(), m = diag({-1, -1});
    out.emplace_back(g, 2, std::vector<IntegerMatrix>{IntegerMatrix::identity(2), s, m, s * m});
  }
  return out;
}

// Random flat-section diagram: at most 5 strata over a small group, each
// edge going from a lower index to a higher one with nested isotropy.
inline StratifiedIsotropyDiagram random_diagram(std::mt19937& rng) {
  static const std::vector<LatticeModule> modules = small_modules();
  const LatticeModule& m = modules[rng() % modules.size()];
  const FiniteGroup& g = m.group();
  ExtensionData ext(m);
  if (rng() % 3 == 0) {
    // split but nonzero kappa
    std::vector<RationalVector> s(g.order(), RationalVector(m.rank(), 0));
    for (std::size_t x = 0; x < g.order(); ++x)
      if (x != g.identity())
        for (auto& v : s[x]) v = q(static_cast<long>(rng() % 4), 4);
    ext = ExtensionData(coboundary_kappa(m, s));
  }
  // all subgroups
  std::vector<std::vector<std::size_t>> subs;
  for (std::size_t mask = 1; mask < (1u << g.order()); ++mask) {
    std::vector<std::size_t> els;
    for (std::size_t x = 0; x < g.order(); ++x)
      if (mask & (1u << x)) els.push_back(x);
    if (auto s = g.as_subgroup(els); s && *s == els) subs.push_back(els);
  }
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  const std::size_t k = 1 + rng() % 5;
  std::vector<Stratum> strata;
  std::vector<std::size_t> pick;
  for (std::size_t i = 0; i < k; ++i) pick.push_back(rng() % subs.size());
  std::sort(pick.begin(), pick.end());  // larger isotropy first
  for (std::size_t i = 0; i < k; ++i) strata.push_back({"s" + std::to_string(i), subs[pick[i]]});
  std::vector<std::pair<std::string, std::string>> adj;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto& a = strata[i].isotropy;
      const auto& b = strata[j].isotropy;
      if (std::includes(a.begin(), a.end(), b.begin(), b.end()) && rng() % 2 == 0)
        adj.emplace_back(strata[i].id, strata[j].id);
    }
  return StratifiedIsotropyDiagram(ext, std::move(strata), std::move(adj));
}

inline IntegerMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

// Product of random elementary matrices and a signed permutation.
inline IntegerMatrix random_unimodular(std::mt19937& rng, std::size_t n, std::size_t steps = 6) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  if (n == 0) return u;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    const long f = static_cast<long>(rng() % 5) - 2;
    for (std::size_t c = 0; c < n; ++c) u(i, c) += Integer(f) * u(j, c);
  }
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  IntegerMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) q(i, p[i]) = (rng() % 2) ? 1 : -1;
  return u * q;
}

}  // namespace fixtures
