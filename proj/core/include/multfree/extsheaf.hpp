#pragma once

// A finite model of the ext-sheaf: strata carrying isotropy subgroups of Gamma,
// with adjacencies from deeper to shallower strata. A flat section assigns to
// each stratum a class in the I^1 set of its isotropy extension, compatibly
// with restriction along every adjacency.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multfree/groupcoh.hpp"

namespace multfree {

struct Stratum {
  std::string id;
  std::vector<std::size_t> isotropy;  // element indices of the ambient group
};

class StratifiedIsotropyDiagram {
 public:
  // Adjacencies are (deep id, shallow id) and need isotropy(shallow) ⊆
  // isotropy(deep). Ids must be unique and the adjacency graph acyclic.
  StratifiedIsotropyDiagram(ExtensionData ambient, std::vector<Stratum> strata,
                            std::vector<std::pair<std::string, std::string>> adjacencies);

  const ExtensionData& ambient() const noexcept { return ambient_; }
  std::size_t size() const noexcept { return strata_.size(); }
  const Stratum& stratum(std::size_t i) const { return strata_[i]; }
  const std::vector<Stratum>& strata() const noexcept { return strata_; }
  std::optional<std::size_t> index_of(const std::string& id) const;

  // Edges as (deep, shallow) stratum indices, in input order.
  const std::vector<std::pair<std::size_t, std::size_t>>& adjacencies() const noexcept { return edges_; }

  const ExtensionData& extension(std::size_t i) const { return extensions_[i]; }
  // Inclusion of the shallow isotropy group into the deep one for edge e.
  const GroupEmbedding& edge_embedding(std::size_t e) const { return edge_maps_[e]; }
  // Strata ordered deepest first (sources of the adjacency graph first,
  // ties by input position).
  const std::vector<std::size_t>& topological_order() const noexcept { return order_; }

  // Sorted I^1 set of stratum i, computed once at construction.
  const std::vector<ExtClass>& classes(std::size_t i) const { return stalks_[i]; }
  // For edge e, stalk index at the deep end -> index of its restriction.
  const std::vector<std::size_t>& restriction_table(std::size_t e) const { return tables_[e]; }

 private:
  ExtensionData ambient_;
  std::vector<Stratum> strata_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<ExtensionData> extensions_;
  std::vector<GroupEmbedding> edge_maps_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<ExtClass>> stalks_;
  std::vector<std::vector<std::size_t>> tables_;
};

// The I^1 set of the stratum's isotropy extension.
std::vector<ExtClass> stalk(const StratifiedIsotropyDiagram& d, std::size_t stratum);

struct SectionCheck {
  bool ok = true;
  std::optional<std::size_t> violated_edge;  // index into adjacencies()
};

// `assignment[i]` is the class chosen at stratum i.
SectionCheck validate_section(const StratifiedIsotropyDiagram& d, const std::vector<ExtClass>& assignment);

struct FlatSection {
  std::vector<ExtClass> assignment;
  std::vector<std::size_t> choice;  // index into stalk(i) for each stratum
};

// All flat sections, ordered lexicographically by `choice`.
std::vector<FlatSection> enumerate_global_sections(const StratifiedIsotropyDiagram& d);

// --- the cylinder case study ------------------------------------------------

// A germ at a fixed point, read off as (f(b)_1, f(a)_2) with a = (-1,1),
// b = (1,-1): the two components of H^1(Z2 x Z2, T^2) = Z/2 x Z/2.
using GermKey = std::pair<Rational, Rational>;

// One of the eight phase cocycles tau, recorded by its values at the two
// fixed points on the generators a and b (values of tau(ab) follow).
struct TauColumn {
  std::string label;
  RationalVector a_plus, b_plus;    // at p+ = (0, 1)
  RationalVector a_minus, b_minus;  // at p- = (0, -1)
};

struct CylinderCaseStudy {
  StratifiedIsotropyDiagram diagram;
  std::size_t expected_section_count = 8;
  std::size_t p_plus = 0, p_minus = 0;  // stratum indices
  std::size_t generator_a = 0, generator_b = 0;  // ambient element indices
  std::vector<TauColumn> tau;
};

CylinderCaseStudy build_cylinder_case_study();

GermKey germ_key(const CylinderCaseStudy& cs, const ExtClass& fixed_point_class);
// (germ at p+, germ at p-)
std::pair<GermKey, GermKey> classification_key(const CylinderCaseStudy& cs, const FlatSection& s);
// The fixed-point classes of a tau column, over the fixed-point extension.
std::pair<ExtClass, ExtClass> tau_germs(const CylinderCaseStudy& cs, const TauColumn& t);

}  // namespace multfree
