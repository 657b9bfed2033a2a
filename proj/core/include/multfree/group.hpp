#pragma once

// Finite groups given by multiplication tables, and homomorphic embeddings
// between them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace multfree {

class FiniteGroup {
 public:
  // Validates closure, associativity, a two-sided identity and inverses.
  // Throws PreconditionError on failure.
  FiniteGroup(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);

  static FiniteGroup trivial();
  // Elements "e", "g", "g^2", ...
  static FiniteGroup cyclic(std::size_t n);
  // Elements "(a,b)" built from the factor names.
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
  // (Z/2)^k as sign vectors "(1,-1,...)", multiplied componentwise. Element
  // index bit i set means component i is -1.
  static FiniteGroup signs(std::size_t k);
  // "trivial", "Z<n>", "Z<a>xZ<b>[x...]", "signs<k>" (k <= 4), e.g. "Z2xZ3" or
  // "signs2"; nullopt for anything else.
  static std::optional<FiniteGroup> by_name(const std::string& name);

  std::size_t order() const noexcept { return names_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // Closure of the given elements under multiplication is checked; returns
  // sorted indices of the subgroup, or nullopt if the set is not a subgroup.
  std::optional<std::vector<std::size_t>> as_subgroup(std::vector<std::size_t> elements) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.names_ == b.names_ && a.table_ == b.table_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverses_;
  std::size_t identity_ = 0;
};

// A homomorphism source -> target, recorded by the images of the source
// elements. Subgroup embeddings are the common case.
class GroupEmbedding {
 public:
  // Throws PreconditionError unless `image` defines a homomorphism.
  GroupEmbedding(FiniteGroup source, const FiniteGroup& target, std::vector<std::size_t> image);

  // The subgroup on `elements` (must be closed), elements ordered by their
  // index in `target` and named as there.
  static GroupEmbedding subgroup(const FiniteGroup& target, std::vector<std::size_t> elements);
  static GroupEmbedding identity(const FiniteGroup& g);

  const FiniteGroup& source() const noexcept { return source_; }
  std::size_t target_order() const noexcept { return target_order_; }
  std::size_t operator()(std::size_t a) const { return image_[a]; }
  const std::vector<std::size_t>& image() const noexcept { return image_; }

  bool is_injective() const;
  bool is_bijective() const;

 private:
  FiniteGroup source_;
  std::vector<std::size_t> image_;
  std::size_t target_order_ = 0;
};

}  // namespace multfree
