#include "multfree/extsheaf.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "multfree/errors.hpp"

namespace multfree {

StratifiedIsotropyDiagram::StratifiedIsotropyDiagram(ExtensionData ambient, std::vector<Stratum> strata,
                                                     std::vector<std::pair<std::string, std::string>> adjacencies)
    : ambient_(std::move(ambient)), strata_(std::move(strata)) {
  if (strata_.empty()) throw PreconditionError("diagram has no strata");
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < strata_.size(); ++i) {
    if (!ids.emplace(strata_[i].id, i).second)
      throw PreconditionError("duplicate stratum id '" + strata_[i].id + "'");
    auto sub = ambient_.group().as_subgroup(strata_[i].isotropy);
    if (!sub) throw PreconditionError("isotropy of stratum '" + strata_[i].id + "' is not a subgroup");
    strata_[i].isotropy = *sub;
    extensions_.push_back(ambient_.restrict(GroupEmbedding::subgroup(ambient_.group(), strata_[i].isotropy)));
  }

  for (const auto& [deep, shallow] : adjacencies) {
    auto d = ids.find(deep), s = ids.find(shallow);
    if (d == ids.end()) throw PreconditionError("adjacency refers to unknown stratum '" + deep + "'");
    if (s == ids.end()) throw PreconditionError("adjacency refers to unknown stratum '" + shallow + "'");
    const auto& gd = strata_[d->second].isotropy;
    const auto& gs = strata_[s->second].isotropy;
    std::vector<std::size_t> image;
    for (std::size_t x : gs) {
      auto it = std::lower_bound(gd.begin(), gd.end(), x);
      if (it == gd.end() || *it != x)
        throw PreconditionError("isotropy of '" + shallow + "' is not contained in that of '" + deep + "'");
      image.push_back(static_cast<std::size_t>(it - gd.begin()));
    }
    edges_.emplace_back(d->second, s->second);
    edge_maps_.emplace_back(extensions_[s->second].group(), extensions_[d->second].group(), std::move(image));
  }

  // Kahn's algorithm, smallest index first among available strata.
  std::vector<std::size_t> indeg(strata_.size(), 0);
  for (const auto& [d, s] : edges_) ++indeg[s];
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < strata_.size(); ++i)
    if (indeg[i] == 0) ready.insert(i);
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order_.push_back(v);
    for (const auto& [d, s] : edges_)
      if (d == v && --indeg[s] == 0) ready.insert(s);
  }
  if (order_.size() != strata_.size()) throw PreconditionError("adjacency relation has a cycle");

  for (const auto& ext : extensions_) stalks_.push_back(i1_set(ext));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [d, s] = edges_[e];
    std::vector<std::size_t> table;
    for (const auto& cls : stalks_[d]) {
      const ExtClass r = restrict_class(cls, edge_maps_[e]);
      auto it = std::lower_bound(stalks_[s].begin(), stalks_[s].end(), r);
      if (it == stalks_[s].end() || !(*it == r)) throw std::logic_error("restricted class missing from stalk");
      table.push_back(static_cast<std::size_t>(it - stalks_[s].begin()));
    }
    tables_.push_back(std::move(table));
  }
}

std::optional<std::size_t> StratifiedIsotropyDiagram::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < strata_.size(); ++i)
    if (strata_[i].id == id) return i;
  return std::nullopt;
}

std::vector<ExtClass> stalk(const StratifiedIsotropyDiagram& d, std::size_t stratum) {
  if (stratum >= d.size()) throw PreconditionError("stratum index out of range");
  return d.classes(stratum);
}

SectionCheck validate_section(const StratifiedIsotropyDiagram& d, const std::vector<ExtClass>& assignment) {
  if (assignment.size() != d.size()) throw PreconditionError("assignment does not cover every stratum");
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(assignment[i].extension() == d.extension(i)))
      throw PreconditionError("class assigned to '" + d.stratum(i).id + "' lives over the wrong extension");
  const auto& edges = d.adjacencies();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [deep, shallow] = edges[e];
    if (!(restrict_class(assignment[deep], d.edge_embedding(e)) == assignment[shallow])) return {false, e};
  }
  return {true, std::nullopt};
}

std::vector<FlatSection> enumerate_global_sections(const StratifiedIsotropyDiagram& d) {
  const std::size_t n = d.size();
  std::vector<std::vector<std::size_t>> incoming(n);
  const auto& edges = d.adjacencies();
  for (std::size_t e = 0; e < edges.size(); ++e) incoming[edges[e].second].push_back(e);
  const auto& order = d.topological_order();

  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> choice(n, 0);
  // Depth-first over the topological order: a stratum with a deeper
  // neighbour is forced by restriction, the others range over their stalk.
  auto visit = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      found.push_back(choice);
      return;
    }
    const std::size_t v = order[pos];
    if (d.classes(v).empty()) return;
    if (incoming[v].empty()) {
      for (std::size_t c = 0; c < d.classes(v).size(); ++c) {
        choice[v] = c;
        self(self, pos + 1);
      }
      return;
    }
    const std::size_t first = incoming[v].front();
    const std::size_t forced = d.restriction_table(first)[choice[edges[first].first]];
    for (std::size_t e : incoming[v])
      if (d.restriction_table(e)[choice[edges[e].first]] != forced) return;
    choice[v] = forced;
    self(self, pos + 1);
  };
  visit(visit, 0);
  std::sort(found.begin(), found.end());

  std::vector<FlatSection> out;
  out.reserve(found.size());
  for (auto& c : found) {
    FlatSection s;
    for (std::size_t i = 0; i < n; ++i) s.assignment.push_back(d.classes(i)[c[i]]);
    s.choice = std::move(c);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const Rational kHalf(1, 2);

ExtensionData cylinder_extension() {
  FiniteGroup g = FiniteGroup::signs(2);
  std::vector<IntegerMatrix> ms;
  for (std::size_t x = 0; x < g.order(); ++x) {
    IntegerMatrix m(2, 2);
    m(0, 0) = (x & 1) ? -1 : 1;
    m(1, 1) = (x & 2) ? -1 : 1;
    ms.push_back(std::move(m));
  }
  return ExtensionData(LatticeModule(std::move(g), 2, std::move(ms)));
}

}  // namespace

CylinderCaseStudy build_cylinder_case_study() {
  ExtensionData ext = cylinder_extension();
  const FiniteGroup& g = ext.group();
  const std::size_t e = *g.index_of("(1,1)");
  const std::size_t a = *g.index_of("(-1,1)");
  const std::size_t b = *g.index_of("(1,-1)");
  const std::size_t ab = g.mul(a, b);

  // Fundamental domain of the action on [-1,1] x S^1 split by isotropy:
  // the fixed points (0, ±1), the arcs x = 0 (fixed by a), the segments
  // mu = ±1 (fixed by b) and the rest.
  std::vector<Stratum> strata{
      {"p+", {e, a, b, ab}}, {"p-", {e, a, b, ab}}, {"x0", {e, a}},
      {"mu+", {e, b}},       {"mu-", {e, b}},       {"generic", {e}},
  };
  std::vector<std::pair<std::string, std::string>> adj{
      {"p+", "x0"},       {"p-", "x0"},       {"p+", "mu+"},     {"p-", "mu-"},
      {"x0", "generic"},  {"mu+", "generic"}, {"mu-", "generic"},
  };
  CylinderCaseStudy cs{StratifiedIsotropyDiagram(ext, std::move(strata), std::move(adj)), 8, 0, 1, a, b, {}};

  // Values of tau(a), tau(b) in T^2 at mu = 1 and mu = -1 (x = 0), with
  // S^1 written additively: 1 -> 0, -1 -> 1/2, mu -> 0 or 1/2.
  const Rational z = 0, h = kHalf;
  auto col = [&](std::string label, RationalVector ap, RationalVector bp, RationalVector am, RationalVector bm) {
    cs.tau.push_back({std::move(label), std::move(ap), std::move(bp), std::move(am), std::move(bm)});
  };
  col("tau1", {z, z}, {z, z}, {z, z}, {z, z});
  col("tau2", {z, z}, {h, z}, {z, z}, {h, z});
  col("tau3", {z, h}, {z, z}, {z, h}, {z, z});
  col("tau4", {z, h}, {h, z}, {z, h}, {h, z});
  col("tau5", {z, z}, {z, z}, {h, z}, {h, z});
  col("tau6", {z, z}, {h, z}, {h, z}, {z, z});
  col("tau7", {z, h}, {z, z}, {h, h}, {h, z});
  col("tau8", {z, h}, {h, z}, {h, h}, {z, z});
  return cs;
}

GermKey germ_key(const CylinderCaseStudy& cs, const ExtClass& cls) {
  if (!(cls.extension() == cs.diagram.extension(cs.p_plus)))
    throw PreconditionError("class is not a fixed-point germ of the case study");
  // The fixed-point isotropy is all of Gamma, indexed as in the ambient group.
  return {cls(cs.generator_b)[0], cls(cs.generator_a)[1]};
}

std::pair<GermKey, GermKey> classification_key(const CylinderCaseStudy& cs, const FlatSection& s) {
  return {germ_key(cs, s.assignment[cs.p_plus]), germ_key(cs, s.assignment[cs.p_minus])};
}

std::pair<ExtClass, ExtClass> tau_germs(const CylinderCaseStudy& cs, const TauColumn& t) {
  const ExtensionData& ext = cs.diagram.extension(cs.p_plus);
  const LatticeModule& mod = ext.module();
  const FiniteGroup& g = ext.group();
  auto germ = [&](const RationalVector& ta, const RationalVector& tb) {
    const std::size_t a = cs.generator_a, b = cs.generator_b;
    std::vector<RationalVector> f(g.order(), RationalVector(2, 0));
    f[a] = ta;
    f[b] = tb;
    RationalVector tab = mod.act(ta, b);  // tau(ab) = tau(a).b + tau(b)
    for (std::size_t i = 0; i < 2; ++i) tab[i] += tb[i];
    f[g.mul(a, b)] = reduce_mod1(std::move(tab));
    return ExtClass(ext, std::move(f));
  };
  return {germ(t.a_plus, t.b_plus), germ(t.a_minus, t.b_minus)};
}

}  // namespace multfree
