#include "multfree/toricreps.hpp"

#include <algorithm>
#include <numeric>

#include "multfree/errors.hpp"

namespace multfree {

IntegerMatrix WeightTuple::matrix() const { return IntegerMatrix::from_rows(weights, rank); }

bool is_maximally_toric(const WeightTuple& w) {
  if (w.weights.size() != w.rank) return false;
  for (const auto& a : w.weights)
    if (a.size() != w.rank) return false;
  return w.rank == 0 || is_unimodular(w.matrix());
}

ConeData momentum_image(const WeightTuple& w) {
  std::vector<IntegerVector> gens;
  for (const auto& a : w.weights) {
    if (a.size() != w.rank) throw PreconditionError("weight has wrong dimension");
    if (std::any_of(a.begin(), a.end(), [](const Integer& x) { return x != 0; })) gens.push_back(a);
  }
  return ConeData(w.rank, std::move(gens));
}

std::vector<IntegerVector> cone_to_weights(const ConeData& c) {
  // Generators forming a basis need no ray computation.
  const auto& g = c.generators();
  if (g.size() == c.rank() && is_unimodular(IntegerMatrix::from_columns(g, c.rank()))) return g;
  if (!is_pointed(c) || !is_smooth(c).smooth) throw PreconditionError("cone not smooth-pointed");
  return extremal_rays(c);  // sorted; a lattice basis by smoothness
}

namespace {

std::size_t index_of(const std::vector<IntegerVector>& ws, const IntegerVector& v) {
  auto it = std::find(ws.begin(), ws.end(), v);
  return it == ws.end() ? ws.size() : static_cast<std::size_t>(it - ws.begin());
}

bool is_permutation_of(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t x : p) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

Rational pair(const IntegerVector& alpha, const RationalVector& t) {
  Rational s = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += Rational(alpha[i]) * t[i];
  return s;
}

}  // namespace

ToricRepData::ToricRepData(WeightTuple weights, ExtensionData extension, std::vector<Permutation> perm,
                           std::vector<RationalVector> phases)
    : weights_(std::move(weights)),
      extension_(std::move(extension)),
      perm_(std::move(perm)),
      phases_(std::move(phases)) {
  const FiniteGroup& g = extension_.group();
  const std::size_t n = weights_.rank;
  const std::size_t m = g.order();
  if (n != extension_.rank()) throw PreconditionError("weight lattice rank differs from the torus rank");
  if (weights_.weights.size() != n) throw PreconditionError("need exactly rank-many weights");
  for (const auto& a : weights_.weights)
    if (a.size() != n) throw PreconditionError("weight has wrong dimension");
  if (perm_.size() != m) throw PreconditionError("need one permutation per group element");
  if (phases_.size() != m) throw PreconditionError("need one phase vector per group element");
  for (std::size_t x = 0; x < m; ++x) {
    if (!is_permutation_of(perm_[x], n))
      throw PreconditionError("entry for '" + g.name(x) + "' is not a permutation");
    if (phases_[x].size() != n) throw PreconditionError("phase vector for '" + g.name(x) + "' has wrong size");
    phases_[x] = reduce_mod1(std::move(phases_[x]));
  }
  Permutation id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  if (perm_[g.identity()] != id) throw PreconditionError("identity element must act by the identity permutation");
  if (!is_zero_mod1(phases_[g.identity()])) throw PreconditionError("identity element must have zero phases");

  const LatticeModule& mod = extension_.module();
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t i = 0; i < n; ++i)
      if (mod.act_character(weights_.weights[i], x) != weights_.weights[perm_[x][i]])
        throw PreconditionError("permutation for '" + g.name(x) + "' is incompatible with the lattice action at weight " +
                                std::to_string(i + 1));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t xy = g.mul(x, y);
      const RationalVector& k = extension_.kappa()(x, y);
      for (std::size_t i = 0; i < n; ++i) {
        if (perm_[xy][i] != perm_[x][perm_[y][i]])
          throw PreconditionError("permutations are not multiplicative at ('" + g.name(x) + "', '" + g.name(y) + "')");
        Rational lhs = phases_[x][perm_[y][i]] + phases_[y][i] - phases_[xy][i] - pair(weights_.weights[i], k);
        if (lhs.get_den() != 1)
          throw PreconditionError("phases violate the twisted multiplicativity at ('" + g.name(x) + "', '" +
                                  g.name(y) + "')");
      }
    }
}

ToricRepData construct_representation(const ConeData& delta, const ExtensionData& ext,
                                      const std::vector<RationalVector>& gamma_part) {
  const std::size_t n = ext.rank();
  if (delta.rank() != n) throw PreconditionError("cone and torus have different ranks");
  const auto weights = cone_to_weights(delta);
  const LatticeModule& mod = ext.module();
  // Validates d f = kappa.
  ExtClass cls(ext, gamma_part);

  WeightTuple wt{n, weights};
  const IntegerMatrix w = wt.matrix();
  const std::size_t m = ext.group().order();
  std::vector<Permutation> perm(m, Permutation(n));
  std::vector<RationalVector> phases(m);
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = index_of(weights, mod.act_character(weights[i], x));
      // A unimodular map fixes a smooth pointed cone iff it permutes its rays.
      if (j == n) throw PreconditionError("cone is not invariant under the lattice action");
      perm[x][i] = j;
    }
    phases[x] = reduce_mod1(w.apply(gamma_part[x]));
  }
  return ToricRepData(std::move(wt), ext, std::move(perm), std::move(phases));
}

ToricRepData construct_representation(const ConeData& delta, const ExtensionData& ext,
                                      const TorusOneCocycle& c) {
  if (!(c.module() == ext.module())) throw PreconditionError("cocycle lives over a different module");
  return construct_representation(delta, ext, c.values());
}

ToricRepData construct_representation(const ConeData& delta, const ExtClass& e) {
  return construct_representation(delta, e.extension(), e.representative());
}

ExtClass ext_class(const ToricRepData& rep) {
  if (!is_maximally_toric(rep.weights())) throw PreconditionError("weights are not maximally toric");
  const std::size_t n = rep.weights().rank;
  const std::size_t m = rep.extension().group().order();
  std::vector<RationalVector> f(m);
  if (n == 0) return ExtClass(rep.extension(), std::vector<RationalVector>(m));
  const IntegerMatrix winv = *unimodular_inverse(rep.weights().matrix());
  for (std::size_t x = 0; x < m; ++x) f[x] = reduce_mod1(winv.apply(rep.phases(x)));
  return ExtClass(rep.extension(), std::move(f));
}

ToricRepData twist_representation(const ToricRepData& rep, const TorusOneCocycle& h) {
  if (!(h.module() == rep.extension().module())) throw PreconditionError("twisting class lives over a different module");
  const IntegerMatrix w = rep.weights().matrix();
  std::vector<RationalVector> phases = rep.phases();
  for (std::size_t x = 0; x < phases.size(); ++x) {
    const RationalVector wh = w.apply(h(x));
    for (std::size_t i = 0; i < phases[x].size(); ++i) phases[x][i] += wh[i];
  }
  return ToricRepData(rep.weights(), rep.extension(), rep.perm(), std::move(phases));
}

IsoInvariants iso_invariants(const ToricRepData& rep) {
  return {momentum_image(rep.weights()), ext_class(rep)};
}

ToricRepData relabel(const ToricRepData& rep, const Permutation& sigma) {
  const std::size_t n = rep.weights().rank;
  if (!is_permutation_of(sigma, n)) throw PreconditionError("relabeling is not a permutation");
  Permutation inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[sigma[j]] = j;
  WeightTuple w{n, std::vector<IntegerVector>(n)};
  for (std::size_t j = 0; j < n; ++j) w.weights[j] = rep.weights().weights[sigma[j]];
  std::vector<Permutation> perm = rep.perm();
  std::vector<RationalVector> phases = rep.phases();
  for (std::size_t x = 0; x < perm.size(); ++x)
    for (std::size_t j = 0; j < n; ++j) {
      perm[x][j] = inv[rep.perm(x)[sigma[j]]];
      phases[x][j] = rep.phases(x)[sigma[j]];
    }
  return ToricRepData(std::move(w), rep.extension(), std::move(perm), std::move(phases));
}

ToricRepData conjugate_by_torus(const ToricRepData& rep, const RationalVector& s) {
  const std::size_t n = rep.weights().rank;
  if (s.size() != n) throw PreconditionError("torus element has wrong dimension");
  std::vector<RationalVector> phases = rep.phases();
  for (std::size_t x = 0; x < phases.size(); ++x)
    for (std::size_t i = 0; i < n; ++i) phases[x][i] += s[rep.perm(x)[i]] - s[i];
  return ToricRepData(rep.weights(), rep.extension(), rep.perm(), std::move(phases));
}

}  // namespace multfree
