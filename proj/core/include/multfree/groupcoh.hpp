#pragma once

// Group cohomology of a finite group Gamma with coefficients in a lattice
// Lambda = Z^n or in the torus T = (Q/Z)^n, together with the extension
// theory of 1 -> T -> H -> Gamma -> 1 that classifies splittings and the
// set I^1(H, T).
//
// Conventions.
//   * A LatticeModule stores homomorphism matrices M(g) (M(gh) = M(g) M(h)).
//     Characters alpha in Lambda^* are acted on from the left by M(g); the
//     cocharacter lattice Lambda, hence T, carries the dual RIGHT action
//     a.g = M(g)^T a.
//   * Torus values are additive and reduced into [0, 1).
//   * Inhomogeneous bar differential for the right action:
//       (d t)(g)          = t.g - t
//       (d f)(g, h)       = f(h) - f(gh) + f(g).h
//       (d k)(g, h, l)    = k(h, l) - k(gh, l) + k(g, hl) - k(g, h).l
//     and in general d phi = phi(g2..) + sum (-1)^i phi(..g_i g_{i+1}..)
//     + (-1)^{k+1} phi(g1..gk).g_{k+1} for k >= 1.
//   * The extension H = Gamma x_kappa T has elements u(g) t with
//     u(g) u(h) = u(gh) kappa(g, h) and t u(h) = u(h) (t.h).
//     Cocycles H -> T restricting to the identity on T are recorded by their
//     Gamma-part f(g) = c(u(g)); these are the solutions of d f = kappa.
//     A section u'(g) = u(g) s(g) is a homomorphism iff d s = -kappa.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "multfree/exactlinalg.hpp"
#include "multfree/group.hpp"

namespace multfree {

inline constexpr std::size_t kMaxGroupOrder = 24;
inline constexpr std::size_t kMaxModuleRank = 4;

class LatticeModule {
 public:
  // Validates unimodularity, the homomorphism property and the size limits.
  LatticeModule(FiniteGroup group, std::size_t rank, std::vector<IntegerMatrix> matrices);
  static LatticeModule trivial(FiniteGroup group, std::size_t rank);

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t rank() const noexcept { return rank_; }
  const IntegerMatrix& matrix(std::size_t g) const { return matrices_[g]; }
  const std::vector<IntegerMatrix>& matrices() const noexcept { return matrices_; }

  // a.g = M(g)^T a on cocharacters / torus elements (not reduced mod 1).
  RationalVector act(const RationalVector& a, std::size_t g) const;
  // M(g) alpha on characters.
  IntegerVector act_character(const IntegerVector& alpha, std::size_t g) const;

  LatticeModule restrict(const GroupEmbedding& embedding) const;

  friend bool operator==(const LatticeModule& a, const LatticeModule& b) {
    return a.rank_ == b.rank_ && a.group_ == b.group_ && a.matrices_ == b.matrices_;
  }

 private:
  FiniteGroup group_;
  std::size_t rank_;
  std::vector<IntegerMatrix> matrices_;
  std::vector<IntegerMatrix> right_;  // transposes
};

// A k-cochain Gamma^k -> T (or Lambda). values[i] belongs to the tuple whose
// base-|Gamma| digits, most significant first, are the element indices.
struct Cochain {
  std::size_t degree = 0;
  std::vector<RationalVector> values;

  friend bool operator==(const Cochain&, const Cochain&) = default;
};

Cochain zero_cochain(const LatticeModule& module, std::size_t degree);
RationalVector flatten(const Cochain& c);
Cochain unflatten(const RationalVector& flat, std::size_t degree, std::size_t rank);

// Torus coboundary, reduced mod 1. Degrees 0, 1, 2 (and 3 for d o d checks).
Cochain coboundary(const LatticeModule& module, const Cochain& cochain);

// Matrix of d: C^k -> C^{k+1} on flattened cochains. With `normalized`, rows
// and columns are restricted to tuples without the identity element.
IntegerMatrix bar_differential(const LatticeModule& module, std::size_t degree,
                               bool normalized = false);

class TorusOneCocycle {
 public:
  // Throws PreconditionError unless d c = 0 (which forces c(e) = 0).
  TorusOneCocycle(LatticeModule module, std::vector<RationalVector> values);

  const LatticeModule& module() const noexcept { return module_; }
  const std::vector<RationalVector>& values() const noexcept { return values_; }
  const RationalVector& operator()(std::size_t g) const { return values_[g]; }

 private:
  LatticeModule module_;
  std::vector<RationalVector> values_;
};

class TorusTwoCocycle {
 public:
  // values[g * |Gamma| + h] = kappa(g, h). Throws PreconditionError unless
  // kappa is normalized and d kappa = 0.
  TorusTwoCocycle(LatticeModule module, std::vector<RationalVector> values);
  static TorusTwoCocycle zero(LatticeModule module);

  const LatticeModule& module() const noexcept { return module_; }
  const std::vector<RationalVector>& values() const noexcept { return values_; }
  const RationalVector& operator()(std::size_t g, std::size_t h) const {
    return values_[g * module_.group().order() + h];
  }
  bool is_zero() const;

 private:
  LatticeModule module_;
  std::vector<RationalVector> values_;
};

namespace detail {
class CocycleNormalizer;
}

// The extension Gamma x_kappa T. Cheap to copy: the validated data and the
// precomputed canonicalization engine are shared and immutable.
class ExtensionData {
 public:
  explicit ExtensionData(LatticeModule module);  // split, kappa = 0
  explicit ExtensionData(TorusTwoCocycle kappa);

  const LatticeModule& module() const noexcept;
  const TorusTwoCocycle& kappa() const noexcept;
  const FiniteGroup& group() const noexcept { return module().group(); }
  std::size_t rank() const noexcept { return module().rank(); }
  // Class representatives live on the (1/q)-grid, q = |Gamma| * den(kappa).
  const Integer& grid() const noexcept;

  ExtensionData restrict(const GroupEmbedding& embedding) const;

  // Internal: canonicalization engine for Gamma-parts of this extension.
  const detail::CocycleNormalizer& normalizer() const noexcept;

  friend bool operator==(const ExtensionData& a, const ExtensionData& b);

 private:
  struct State;
  std::shared_ptr<const State> state_;
};

// An element of I^1(H, T), represented by the lexicographically least
// Gamma-part on the torsion grid. When kappa = 0 these are the classes of
// H^1(Gamma, T) as well. Equality of classes is structural equality.
class ExtClass {
 public:
  // Canonicalizes `gamma_part`; throws PreconditionError unless d f = kappa.
  ExtClass(ExtensionData extension, std::vector<RationalVector> gamma_part);

  const ExtensionData& extension() const noexcept { return extension_; }
  const std::vector<RationalVector>& representative() const noexcept { return rep_; }
  const RationalVector& operator()(std::size_t g) const { return rep_[g]; }

  friend bool operator==(const ExtClass& a, const ExtClass& b) {
    return a.rep_ == b.rep_ && a.extension_ == b.extension_;
  }
  friend bool operator<(const ExtClass& a, const ExtClass& b) { return a.rep_ < b.rep_; }

 private:
  ExtensionData extension_;
  std::vector<RationalVector> rep_;
};

// Invariant factors of H^k(Gamma, Lambda), k <= 3. A 0 entry is a free
// summand (only at k = 0); the trivial group is the empty list.
std::vector<Integer> cohomology_lattice(const LatticeModule& module, std::size_t degree);

struct TorusCohomology {
  std::vector<Integer> invariant_factors;  // all > 1
  std::vector<Cochain> representatives;    // canonical, sorted; the zero class first
  Integer order() const;
};

// H^k(Gamma, T) for k in {1, 2}, computed on the torus side.
TorusCohomology cohomology_torus(const LatticeModule& module, std::size_t degree);

// Gamma-part of a homomorphic section u'(g) = u(g) s(g): the canonical
// (lexicographically least grid) solution of d s = -kappa, if any.
std::optional<std::vector<RationalVector>> is_split(const ExtensionData& extension);

// Sorted canonical classes; empty iff the extension does not split.
std::vector<ExtClass> i1_set(const ExtensionData& extension);

ExtClass torsor_act(const TorusOneCocycle& structure_class, const ExtClass& e);

// Restriction to a subgroup of Gamma (same torus).
ExtClass restrict_class(const ExtClass& e, const GroupEmbedding& subgroup);

// A homomorphism H_sub -> H_full given by a group map iota on components, an
// injective torus map J : T_sub -> T_full with J(Lambda_sub) a direct summand,
// and offsets theta with u_sub(g) |-> u_full(iota g) theta(g).
class ExtensionEmbedding {
 public:
  ExtensionEmbedding(ExtensionData sub, ExtensionData full, std::vector<std::size_t> group_map,
                     IntegerMatrix torus_map, std::vector<RationalVector> offsets);
  // Zero offsets.
  ExtensionEmbedding(ExtensionData sub, ExtensionData full, std::vector<std::size_t> group_map,
                     IntegerMatrix torus_map);

  const ExtensionData& sub() const noexcept { return sub_; }
  const ExtensionData& full() const noexcept { return full_; }
  const std::vector<std::size_t>& group_map() const noexcept { return group_map_; }
  const IntegerMatrix& torus_map() const noexcept { return torus_map_; }
  const std::vector<RationalVector>& offsets() const noexcept { return offsets_; }
  bool components_bijective() const;

 private:
  ExtensionData sub_;
  ExtensionData full_;
  std::vector<std::size_t> group_map_;
  IntegerMatrix torus_map_;
  std::vector<RationalVector> offsets_;
};

// The unique class of H_full whose splitting subgroup contains the one of
// `e`. Requires bijective component comparison.
ExtClass extend_class(const ExtClass& e, const ExtensionEmbedding& embedding);

// Pull a class of H_full back along the embedding. Throws PreconditionError
// when no representative lands in the subtorus or the result depends on the
// representative chosen.
ExtClass restrict_along(const ExtClass& e, const ExtensionEmbedding& embedding);

}  // namespace multfree
