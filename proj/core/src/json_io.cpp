#include "multfree/json_io.hpp"

#include <algorithm>
#include <optional>
#include <regex>

#include "multfree/errors.hpp"

namespace multfree::io {

namespace {

std::string child(const std::string& path, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return path + "/" + k;
}

std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& member(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(child(path, key), "missing required field");
  return *it;
}

const Json* optional_member(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  return j;
}

std::size_t count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

Integer integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    auto q = multfree::parse_rational(j.get<std::string>());
    if (q && q->get_den() == 1) return q->get_num();
  }
  throw InputError(path, "expected an integer");
}

// Runs `f`, turning precondition failures of the value constructors into
// input errors at `path`.
template <typename F>
auto at(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const PreconditionError& e) {
    throw InputError(path, e.what());
  }
}

std::vector<IntegerMatrix> parse_matrix_table(const Json& j, const std::string& path, const FiniteGroup& g,
                                              std::size_t n) {
  std::vector<IntegerMatrix> ms(g.order(), IntegerMatrix::identity(n));
  if (!j.is_object()) throw InputError(path, "expected an object keyed by group element");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string p = child(path, it.key());
    auto x = g.index_of(it.key());
    if (!x) throw InputError(p, "unknown group element '" + it.key() + "'");
    ms[*x] = parse_matrix(it.value(), p, n, n);
    if (!is_unimodular(ms[*x])) throw InputError(p, "matrix is not invertible over Z");
  }
  return ms;
}

}  // namespace

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("", std::string("malformed JSON: ") + e.what());
  }
}

Rational parse_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(integer(j, path));
  if (!j.is_string()) throw InputError(path, "expected a rational string \"p/q\"");
  auto q = multfree::parse_rational(j.get<std::string>());
  if (!q) throw InputError(path, "malformed rational '" + j.get<std::string>() + "'");
  return *q;
}

IntegerVector parse_integer_vector(const Json& j, const std::string& path, std::size_t size) {
  array(j, path);
  if (j.size() != size)
    throw InputError(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  IntegerVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], child(path, i)));
  return v;
}

RationalVector parse_rational_vector(const Json& j, const std::string& path, std::size_t size) {
  array(j, path);
  if (j.size() != size)
    throw InputError(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  RationalVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_rational(j[i], child(path, i)));
  return v;
}

IntegerMatrix parse_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  array(j, path);
  if (j.size() != rows) throw InputError(path, "expected " + std::to_string(rows) + " rows");
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const IntegerVector r = parse_integer_vector(j[i], child(path, i), cols);
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

FiniteGroup parse_group(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    auto g = FiniteGroup::by_name(name);
    if (!g) throw InputError(path, "unknown builtin group '" + name + "'");
    if (g->order() > kMaxGroupOrder) throw InputError(path, "group order exceeds the limit");
    return *g;
  }
  const Json& els = array(member(j, path, "elements"), child(path, "elements"));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (!els[i].is_string()) throw InputError(child(child(path, "elements"), i), "element names must be strings");
    names.push_back(els[i].get<std::string>());
  }
  if (names.size() > kMaxGroupOrder) throw InputError(child(path, "elements"), "group order exceeds the limit");
  const std::string tpath = child(path, "table");
  const Json& tab = array(member(j, path, "table"), tpath);
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t r = 0; r < tab.size(); ++r) {
    const std::string rp = child(tpath, r);
    array(tab[r], rp);
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < tab[r].size(); ++c) {
      const Json& x = tab[r][c];
      const std::string xp = child(rp, c);
      if (x.is_string()) {
        auto it = std::find(names.begin(), names.end(), x.get<std::string>());
        if (it == names.end()) throw InputError(xp, "unknown element '" + x.get<std::string>() + "'");
        row.push_back(static_cast<std::size_t>(it - names.begin()));
      } else {
        row.push_back(count(x, xp));
      }
    }
    table.push_back(std::move(row));
  }
  return at(path, [&] { return FiniteGroup(std::move(names), std::move(table)); });
}

std::size_t parse_element(const Json& j, const std::string& path, const FiniteGroup& g) {
  if (!j.is_string()) throw InputError(path, "expected a group element name");
  auto x = g.index_of(j.get<std::string>());
  if (!x) throw InputError(path, "unknown group element '" + j.get<std::string>() + "'");
  return *x;
}

LatticeModule parse_module(const Json& j, const std::string& path) {
  FiniteGroup g = parse_group(member(j, path, "group"), child(path, "group"));
  const std::size_t n = count(member(j, path, "rank"), child(path, "rank"));
  if (n > kMaxModuleRank) throw InputError(child(path, "rank"), "module rank exceeds the limit");
  std::vector<IntegerMatrix> ms(g.order(), IntegerMatrix::identity(n));
  if (const Json* mj = optional_member(j, path, "matrices")) ms = parse_matrix_table(*mj, child(path, "matrices"), g, n);
  return at(path, [&] { return LatticeModule(std::move(g), n, std::move(ms)); });
}

ExtensionData parse_extension(const Json& j, const std::string& path) {
  LatticeModule mod = parse_module(member(j, path, "module"), child(path, "module"));
  const Json* kj = optional_member(j, path, "kappa");
  const FiniteGroup& g = mod.group();
  const std::size_t m = g.order(), n = mod.rank();
  if (!kj) return at(path, [&] { return ExtensionData(mod); });
  const std::string kp = child(path, "kappa");
  if (!kj->is_object()) throw InputError(kp, "expected an object keyed by group element");
  std::vector<RationalVector> values(m * m, RationalVector(n, 0));
  for (auto it = kj->begin(); it != kj->end(); ++it) {
    const std::string p1 = child(kp, it.key());
    auto x = g.index_of(it.key());
    if (!x) throw InputError(p1, "unknown group element '" + it.key() + "'");
    if (!it.value().is_object()) throw InputError(p1, "expected an object keyed by group element");
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
      const std::string p2 = child(p1, jt.key());
      auto y = g.index_of(jt.key());
      if (!y) throw InputError(p2, "unknown group element '" + jt.key() + "'");
      values[*x * m + *y] = parse_rational_vector(jt.value(), p2, n);
    }
  }
  return at(kp, [&] { return ExtensionData(TorusTwoCocycle(mod, std::move(values))); });
}

std::vector<RationalVector> parse_gamma_table(const Json& j, const std::string& path, const LatticeModule& mod) {
  const FiniteGroup& g = mod.group();
  std::vector<RationalVector> values(g.order(), RationalVector(mod.rank(), 0));
  if (!j.is_object()) throw InputError(path, "expected an object keyed by group element");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string p = child(path, it.key());
    auto x = g.index_of(it.key());
    if (!x) throw InputError(p, "unknown group element '" + it.key() + "'");
    values[*x] = reduce_mod1(parse_rational_vector(it.value(), p, mod.rank()));
  }
  return values;
}

ConeData parse_cone(const Json& j, const std::string& path) {
  const std::size_t n = count(member(j, path, "rank"), child(path, "rank"));
  if (n > kMaxConeRank) throw InputError(child(path, "rank"), "cone rank exceeds the limit");
  const std::string gp = child(path, "generators");
  const Json& gs = array(member(j, path, "generators"), gp);
  std::vector<IntegerVector> gens;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    IntegerVector v = parse_integer_vector(gs[i], child(gp, i), n);
    if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; }))
      throw InputError(child(gp, i), "cone generator is zero");
    gens.push_back(std::move(v));
  }
  return at(path, [&] { return ConeData(n, std::move(gens)); });
}

PolytopeData parse_polytope(const Json& j, const std::string& path) {
  const std::size_t n = count(member(j, path, "rank"), child(path, "rank"));
  if (n > kMaxPolytopeRank) throw InputError(child(path, "rank"), "polytope rank exceeds the limit");
  const std::string vp = child(path, "vertices");
  const Json& vs = array(member(j, path, "vertices"), vp);
  std::vector<RationalVector> verts;
  for (std::size_t i = 0; i < vs.size(); ++i) verts.push_back(parse_rational_vector(vs[i], child(vp, i), n));
  return at(path, [&] { return PolytopeData(n, std::move(verts)); });
}

LatticeGroupAction parse_action(const Json& j, const std::string& path) {
  FiniteGroup g = parse_group(member(j, path, "group"), child(path, "group"));
  std::size_t n = 0;
  if (const Json* r = optional_member(j, path, "rank")) {
    n = count(*r, child(path, "rank"));
  } else {
    const Json& mj = member(j, path, "matrices");
    if (!mj.is_object() || mj.empty()) throw InputError(child(path, "rank"), "rank needed when no matrices are given");
    const Json& first = mj.begin().value();
    if (!first.is_array()) throw InputError(child(child(path, "matrices"), mj.begin().key()), "expected a matrix");
    n = first.size();
  }
  if (n > kMaxConeRank) throw InputError(child(path, "rank"), "action rank exceeds the limit");
  std::vector<IntegerMatrix> ms(g.order(), IntegerMatrix::identity(n));
  if (const Json* mj = optional_member(j, path, "matrices")) ms = parse_matrix_table(*mj, child(path, "matrices"), g, n);
  return at(path, [&] { return LatticeGroupAction(std::move(g), n, std::move(ms)); });
}

ToricRepData parse_rep(const Json& j, const std::string& path) {
  ExtensionData ext = parse_extension(member(j, path, "extension"), child(path, "extension"));
  const std::size_t n = ext.rank();
  const FiniteGroup& g = ext.group();
  const std::string wp = child(path, "weights");
  const Json& ws = array(member(j, path, "weights"), wp);
  WeightTuple w{n, {}};
  for (std::size_t i = 0; i < ws.size(); ++i) w.weights.push_back(parse_integer_vector(ws[i], child(wp, i), n));

  std::vector<Permutation> perm(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    perm[x].resize(w.weights.size());
    for (std::size_t i = 0; i < perm[x].size(); ++i) perm[x][i] = i;
  }
  const std::string pp = child(path, "perm");
  const Json& pj = member(j, path, "perm");
  if (!pj.is_object()) throw InputError(pp, "expected an object keyed by group element");
  for (auto it = pj.begin(); it != pj.end(); ++it) {
    const std::string p = child(pp, it.key());
    auto x = g.index_of(it.key());
    if (!x) throw InputError(p, "unknown group element '" + it.key() + "'");
    array(it.value(), p);
    if (it.value().size() != w.weights.size()) throw InputError(p, "permutation has wrong length");
    for (std::size_t i = 0; i < it.value().size(); ++i) {
      const std::size_t k = count(it.value()[i], child(p, i));
      if (k < 1 || k > w.weights.size()) throw InputError(child(p, i), "index out of range (indices are 1-based)");
      perm[*x][i] = k - 1;
    }
  }
  const std::string php = child(path, "phases");
  std::vector<RationalVector> phases = parse_gamma_table(member(j, path, "phases"), php, ext.module());
  return at(path, [&] { return ToricRepData(std::move(w), ext, std::move(perm), std::move(phases)); });
}

StratifiedIsotropyDiagram parse_diagram(const Json& j, const std::string& path) {
  std::optional<ExtensionData> ext;
  if (const Json* e = optional_member(j, path, "extension")) {
    ext = parse_extension(*e, child(path, "extension"));
  } else {
    Json wrapped = Json::object();
    wrapped["module"] = member(j, path, "module");
    if (const Json* k = optional_member(j, path, "kappa")) wrapped["kappa"] = *k;
    ext = parse_extension(wrapped, path);
  }
  const FiniteGroup& g = ext->group();
  const std::string sp = child(path, "strata");
  const Json& sj = array(member(j, path, "strata"), sp);
  std::vector<Stratum> strata;
  for (std::size_t i = 0; i < sj.size(); ++i) {
    const std::string p = child(sp, i);
    const Json& idj = member(sj[i], p, "id");
    if (!idj.is_string()) throw InputError(child(p, "id"), "expected a string");
    const std::string ip = child(p, "isotropy");
    const Json& iso = array(member(sj[i], p, "isotropy"), ip);
    Stratum s{idj.get<std::string>(), {}};
    for (std::size_t k = 0; k < iso.size(); ++k) s.isotropy.push_back(parse_element(iso[k], child(ip, k), g));
    if (!g.as_subgroup(s.isotropy)) throw InputError(ip, "isotropy elements do not form a subgroup");
    strata.push_back(std::move(s));
  }
  const std::string ap = child(path, "adjacencies");
  std::vector<std::pair<std::string, std::string>> adj;
  if (const Json* aj = optional_member(j, path, "adjacencies")) {
    array(*aj, ap);
    for (std::size_t i = 0; i < aj->size(); ++i) {
      const Json& e = (*aj)[i];
      const std::string p = child(ap, i);
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw InputError(p, "expected a pair [\"deep\", \"shallow\"]");
      adj.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return at(path, [&] { return StratifiedIsotropyDiagram(*ext, std::move(strata), std::move(adj)); });
}

// ---------------------------------------------------------------------------

Json to_json(const Rational& q) { return multfree::to_string(q); }

Json to_json(const IntegerVector& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) a.push_back(x.get_si());
    else a.push_back(x.get_str());
  }
  return a;
}

Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json_point(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) a.push_back(x.get_num().get_si());
    else a.push_back(to_json(x));
  }
  return a;
}

Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const FiniteGroup& g) {
  Json t = Json::array();
  for (const auto& row : g.table()) t.push_back(row);
  return Json{{"elements", g.names()}, {"table", t}};
}

Json to_json(const LatticeModule& m) {
  Json ms = Json::object();
  for (std::size_t x = 0; x < m.group().order(); ++x) ms[m.group().name(x)] = to_json(m.matrix(x));
  return Json{{"group", to_json(m.group())}, {"rank", m.rank()}, {"matrices", ms}};
}

Json to_json(const ExtensionData& e) {
  Json out{{"module", to_json(e.module())}};
  const FiniteGroup& g = e.group();
  Json k = Json::object();
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      if (!is_zero_mod1(e.kappa()(x, y))) k[g.name(x)][g.name(y)] = to_json(e.kappa()(x, y));
  out["kappa"] = k;
  return out;
}

Json gamma_table_json(const FiniteGroup& g, const std::vector<RationalVector>& values) {
  Json t = Json::object();
  for (std::size_t x = 0; x < g.order(); ++x) t[g.name(x)] = to_json(values[x]);
  return t;
}

Json cochain_json(const FiniteGroup& g, const Cochain& c) {
  const std::size_t m = g.order();
  if (c.degree == 1) return gamma_table_json(g, c.values);
  if (c.degree == 2) {
    Json t = Json::object();
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y) t[g.name(x)][g.name(y)] = to_json(c.values[x * m + y]);
    return t;
  }
  Json a = Json::array();
  for (const auto& v : c.values) a.push_back(to_json(v));
  return a;
}

Json to_json(const ExtClass& c) { return gamma_table_json(c.extension().group(), c.representative()); }

Json to_json(const ConeData& c) {
  Json g = Json::array();
  for (const auto& v : c.generators()) g.push_back(to_json(v));
  return Json{{"rank", c.rank()}, {"generators", g}};
}

Json to_json(const PolytopeData& p) {
  Json v = Json::array();
  for (const auto& x : p.vertices()) v.push_back(to_json(x));
  return Json{{"rank", p.rank()}, {"vertices", v}};
}

Json to_json(const ToricRepData& r) {
  const FiniteGroup& g = r.extension().group();
  Json w = Json::array();
  for (const auto& a : r.weights().weights) w.push_back(to_json(a));
  Json perm = Json::object();
  for (std::size_t x = 0; x < g.order(); ++x) {
    Json p = Json::array();
    for (std::size_t i : r.perm(x)) p.push_back(i + 1);
    perm[g.name(x)] = p;
  }
  return Json{{"weights", w},
              {"extension", to_json(r.extension())},
              {"perm", perm},
              {"phases", gamma_table_json(g, r.phases())}};
}

Json to_json(const StratifiedIsotropyDiagram& d) {
  const FiniteGroup& g = d.ambient().group();
  Json strata = Json::array();
  for (const auto& s : d.strata()) {
    Json iso = Json::array();
    for (std::size_t x : s.isotropy) iso.push_back(g.name(x));
    strata.push_back(Json{{"id", s.id}, {"isotropy", iso}});
  }
  Json adj = Json::array();
  for (const auto& [a, b] : d.adjacencies()) adj.push_back(Json::array({d.stratum(a).id, d.stratum(b).id}));
  return Json{{"extension", to_json(d.ambient())}, {"strata", strata}, {"adjacencies", adj}};
}

Json section_json(const StratifiedIsotropyDiagram& d, const FlatSection& s) {
  Json out = Json::object();
  for (std::size_t i = 0; i < d.size(); ++i) out[d.stratum(i).id] = to_json(s.assignment[i]);
  return out;
}

}  // namespace multfree::io
