#pragma once

// Maximally toric representations of H = Gamma x_kappa T, stored as their
// combinatorial data: an ordered weight basis, the permutation each
// component induces on it, and the phases by which it rotates the weight
// lines relative to the chosen set-section u of H -> Gamma.

#include <cstddef>
#include <vector>

#include "multfree/cones.hpp"
#include "multfree/groupcoh.hpp"

namespace multfree {

struct WeightTuple {
  std::size_t rank = 0;
  std::vector<IntegerVector> weights;

  // Rows are the weights.
  IntegerMatrix matrix() const;
};

bool is_maximally_toric(const WeightTuple& w);
ConeData momentum_image(const WeightTuple& w);

// The lattice basis generating a smooth pointed full-dimensional cone,
// sorted. Throws PreconditionError("cone not smooth-pointed") otherwise.
std::vector<IntegerVector> cone_to_weights(const ConeData& c);

using Permutation = std::vector<std::size_t>;  // 0-based, i -> perm[i]

class ToricRepData {
 public:
  // Validates, for all gamma, delta and weight indices i:
  //   M(gamma) alpha_i = alpha_{perm(gamma)(i)},
  //   perm(gamma delta) = perm(gamma) o perm(delta),
  //   p_{perm(delta)(i)}(gamma) + p_i(delta) - p_i(gamma delta) = <alpha_i, kappa(gamma, delta)>,
  // and that perm, phases are trivial at the identity.
  ToricRepData(WeightTuple weights, ExtensionData extension, std::vector<Permutation> perm,
               std::vector<RationalVector> phases);

  const WeightTuple& weights() const noexcept { return weights_; }
  const ExtensionData& extension() const noexcept { return extension_; }
  const std::vector<Permutation>& perm() const noexcept { return perm_; }
  const Permutation& perm(std::size_t g) const { return perm_[g]; }
  const std::vector<RationalVector>& phases() const noexcept { return phases_; }
  const RationalVector& phases(std::size_t g) const { return phases_[g]; }

 private:
  WeightTuple weights_;
  ExtensionData extension_;
  std::vector<Permutation> perm_;
  std::vector<RationalVector> phases_;
};

// `gamma_part` is a solution of d f = kappa (a 1-cocycle when kappa = 0).
ToricRepData construct_representation(const ConeData& delta, const ExtensionData& ext,
                                      const std::vector<RationalVector>& gamma_part);
ToricRepData construct_representation(const ConeData& delta, const ExtensionData& ext,
                                      const TorusOneCocycle& c);
ToricRepData construct_representation(const ConeData& delta, const ExtClass& e);

// f(gamma) = W^{-1} phases(gamma). Requires a maximally toric weight tuple.
ExtClass ext_class(const ToricRepData& rep);

// phases(gamma) + W h(gamma).
ToricRepData twist_representation(const ToricRepData& rep, const TorusOneCocycle& h);

struct IsoInvariants {
  ConeData cone;
  ExtClass ext_class;

  friend bool operator==(const IsoInvariants& a, const IsoInvariants& b) {
    return a.cone == b.cone && a.ext_class == b.ext_class;
  }
};

IsoInvariants iso_invariants(const ToricRepData& rep);

// New weight order alpha'_j = alpha_{sigma(j)} with perm' = sigma^{-1} perm sigma.
ToricRepData relabel(const ToricRepData& rep, const Permutation& sigma);
// Conjugation by the torus element s of T^n (coordinates of the weight
// lines): p'_i(gamma) = p_i(gamma) + s_{perm(gamma)(i)} - s_i.
ToricRepData conjugate_by_torus(const ToricRepData& rep, const RationalVector& s);

}  // namespace multfree
