// Acceptance suite: one line per criterion, PASS/FAIL with the measured time
// against the limit. All comparisons are exact (rational arithmetic); the
// only tolerance is the wall-clock limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "fixtures.hpp"
#include "multfree/errors.hpp"
#include "multfree/toricreps.hpp"
#include "oracles.hpp"

using namespace multfree;

namespace {

constexpr unsigned kSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::string detail;
};

#define REQUIRE(cond, msg)              \
  do {                                  \
    if (!(cond)) return {false, (msg)}; \
  } while (0)

// --- 1 -------------------------------------------------------------------------

Outcome cylinder() {
  const auto r = cli::dispatch({"multfree", "casestudy", "cylinder"});
  REQUIRE(r.exit_code == 0, "casestudy command failed");
  const auto& p = r.payload;
  const long count = p["section_count"].get<long>();
  REQUIRE(count == 8, "section count " + std::to_string(count) + ", expected 8");
  REQUIRE(p["sections"].size() == 8, "payload lists " + std::to_string(p["sections"].size()) + " sections");
  REQUIRE(p["stalk_sizes"]["p+"] == 4 && p["stalk_sizes"]["p-"] == 4, "fixed-point stalks are not of size 4");
  REQUIRE(p["second_components_coincide"] == true, "second germ components differ in some section");
  std::set<long> matched;
  for (const auto& t : p["tau_table"]) {
    REQUIRE(!t["section"].is_null(), t["tau"].get<std::string>() + " matches no section");
    matched.insert(t["section"].get<long>());
  }
  REQUIRE(matched.size() == 8, "tau columns do not match the sections bijectively");
  return {true, "8 sections, stalks |p+| = |p-| = 4, coincidence holds, tau1..tau8 matched 1:1"};
}

// --- 2 -------------------------------------------------------------------------

Outcome structure_group() {
  const auto m = fixtures::product_sign(2);
  const auto h = cohomology_torus(m, 1);
  const std::vector<Integer> two_two{2, 2};
  REQUIRE(h.order() == 4, "|H^1| = " + h.order().get_str());
  REQUIRE(h.invariant_factors == two_two, "invariant factors are not (2,2)");
  REQUIRE(cohomology_lattice(m, 2) == two_two, "H^2(Gamma, Lambda) is not (2,2)");
  const std::size_t b16 = oracle::brute_h1_count(m, 4, 16);
  const std::size_t b32 = oracle::brute_h1_count(m, 4, 32);
  REQUIRE(b16 == 4 && b32 == 4,
          "brute force counts " + std::to_string(b16) + " (1/16) and " + std::to_string(b32) + " (1/32)");
  return {true, "order 4, factors (2,2); lattice H^2 = (2,2); brute force 4 at 1/16 and 1/32"};
}

// --- 3 -------------------------------------------------------------------------

PolytopeData cube(std::size_t n, const std::vector<long>& side) {
  std::vector<RationalVector> vs;
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    RationalVector v(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) v[i] = side[i];
    vs.push_back(v);
  }
  return PolytopeData(n, vs);
}

PolytopeData simplex(std::size_t n, long scale) {
  std::vector<RationalVector> vs{RationalVector(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector v(n, 0);
    v[i] = scale;
    vs.push_back(v);
  }
  return PolytopeData(n, vs);
}

PolytopeData from_longs(std::vector<std::vector<long>> pts) {
  std::vector<RationalVector> vs;
  for (const auto& p : pts) vs.emplace_back(p.begin(), p.end());
  return PolytopeData(pts.front().size(), vs);
}

// Columns primitive, determinant k.
IntegerMatrix index_k(std::size_t n, long k) {
  IntegerMatrix b = IntegerMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) b(i, n - 1) = 1;
  b(n - 1, n - 1) = k;
  return b;
}

IntegerMatrix signed_permutation(std::mt19937& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  IntegerMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) q(i, p[i]) = (rng() % 2) ? 1 : -1;
  return q;
}

Outcome delzant() {
  REQUIRE(is_delzant_polytope(from_longs({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).delzant, "unit square rejected");
  REQUIRE(is_delzant_polytope(from_longs({{0, 0}, {1, 0}, {0, 1}})).delzant, "standard simplex rejected");
  const auto bad = is_delzant_polytope(from_longs({{0, 0}, {1, 0}, {0, 2}}));
  REQUIRE(!bad.delzant && bad.failing_vertex && *bad.failing_vertex == RationalVector({1, 0}),
          "conv{(0,0),(1,0),(0,2)} not reported failing at (1,0)");

  std::mt19937 rng(kSeed + 3);
  std::size_t good = 0, modified = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = t < 100 ? 2 : 3;
    const bool use_cube = rng() % 2;
    std::vector<long> side(n);
    for (auto& s : side) s = 1 + static_cast<long>(rng() % 3);
    const PolytopeData base = use_cube ? cube(n, side) : simplex(n, side[0]);
    RationalVector shift(n);
    for (auto& x : shift) x = static_cast<long>(rng() % 7) - 3;

    const IntegerMatrix u = fixtures::random_unimodular(rng, n);
    const PolytopeData p = transform(u, shift, base);
    const auto lib = is_delzant_polytope(p);
    const auto ora = oracle::edge_determinant_delzant(n, p.vertices());
    REQUIRE(lib.delzant && ora.delzant, "unimodular image #" + std::to_string(t) + " rejected (library " +
                                            std::to_string(lib.delzant) + ", oracle " + std::to_string(ora.delzant) + ")");
    ++good;

    const long k = 2 + static_cast<long>(rng() % 3);
    const IntegerMatrix a = fixtures::random_unimodular(rng, n) * index_k(n, k) * signed_permutation(rng, n);
    const PolytopeData q = transform(a, shift, base);
    const auto lib2 = is_delzant_polytope(q);
    const auto ora2 = oracle::edge_determinant_delzant(n, q.vertices());
    REQUIRE(!lib2.delzant && !ora2.delzant, "index-" + std::to_string(k) + " variant #" + std::to_string(t) +
                                                " accepted (library " + std::to_string(lib2.delzant) + ", oracle " +
                                                std::to_string(ora2.delzant) + ")");
    REQUIRE(lib2.failing_vertex == ora2.failing_vertex, "first failing vertex disagrees with the oracle");
    ++modified;
  }
  return {true, "fixed cases ok; " + std::to_string(good) + " unimodular images pass, " + std::to_string(modified) +
                    " index-modified variants fail, all agreeing with the edge-determinant oracle"};
}

// --- 4 -------------------------------------------------------------------------

std::vector<LatticeModule> round_trip_modules() {
  using fixtures::diag;
  std::vector<LatticeModule> out;
  const auto id = [](std::size_t n) { return IntegerMatrix::identity(n); };
  for (std::size_t n = 1; n <= 3; ++n) out.push_back(LatticeModule::trivial(FiniteGroup::trivial(), n));
  const IntegerMatrix swap2 = fixtures::swap2();
  const IntegerMatrix sswap2{{0, -1}, {-1, 0}};
  const IntegerMatrix swap3{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
  const IntegerMatrix sswap3{{0, -1, 0}, {-1, 0, 0}, {0, 0, 1}};
  for (std::size_t n = 1; n <= 3; ++n) out.push_back(LatticeModule::trivial(FiniteGroup::cyclic(2), n));
  for (const auto& m : {swap2, sswap2, swap3, sswap3}) out.push_back(fixtures::z2_module(m));
  const FiniteGroup k = FiniteGroup::signs(2);
  out.push_back(LatticeModule::trivial(k, 2));
  for (const auto& [a, b] : std::vector<std::pair<IntegerMatrix, IntegerMatrix>>{
           {swap2, id(2)}, {sswap2, id(2)}, {swap2, swap2}, {swap3, id(3)}, {sswap3, swap3}, {sswap3, id(3)}})
    out.emplace_back(k, a.rows(), std::vector<IntegerMatrix>{id(a.rows()), a, b, a * b});
  // sign actions: no invariant smooth pointed cones exist, kept to show the
  // filter handles them
  out.push_back(fixtures::z2_sign(1));
  out.push_back(fixtures::product_sign(2));
  return out;
}

std::vector<ConeData> candidate_cones(std::size_t n) {
  std::vector<IntegerVector> vecs;
  std::vector<long> c(n, -1);
  for (;;) {
    IntegerVector v(c.begin(), c.end());
    if (content(v) != 0) vecs.push_back(v);
    std::size_t i = 0;
    while (i < n && ++c[i] == 2) c[i++] = -1;
    if (i == n) break;
  }
  std::set<std::vector<IntegerVector>> seen;
  std::vector<ConeData> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == n) {
      std::vector<IntegerVector> g;
      for (auto j : pick) g.push_back(vecs[j]);
      if (!is_unimodular(IntegerMatrix::from_columns(g, n))) return;
      if (seen.insert(g).second) out.emplace_back(n, g);
      return;
    }
    for (std::size_t j = start; j < vecs.size(); ++j) {
      pick.push_back(j);
      rec(j + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

Outcome classification_round_trip() {
  std::mt19937 rng(kSeed + 4);
  std::map<std::size_t, std::vector<ConeData>> cones;
  for (std::size_t n = 1; n <= 3; ++n) cones[n] = candidate_cones(n);
  std::size_t pairs = 0, extensions = 0, invariant_cones = 0;
  for (const auto& m : round_trip_modules()) {
    const LatticeGroupAction act(m.group(), m.rank(), m.matrices());
    std::vector<ConeData> inv;
    for (const auto& c : cones[m.rank()])
      if (is_invariant(c, act)) inv.push_back(c);
    invariant_cones += inv.size();
    std::vector<RationalVector> s(m.group().order(), RationalVector(m.rank(), 0));
    for (std::size_t x = 0; x < s.size(); ++x)
      if (x != m.group().identity())
        for (auto& q : s[x]) q = fixtures::q(static_cast<long>(rng() % 6), 6);
    for (const ExtensionData& ext : {ExtensionData(m), ExtensionData(fixtures::coboundary_kappa(m, s))}) {
      ++extensions;
      const auto i1 = i1_set(ext);
      REQUIRE(!i1.empty(), "split fixture reported empty I^1");
      for (const auto& c : inv)
        for (const auto& e : i1) {
          const auto rep = construct_representation(c, ext, e.representative());
          const IsoInvariants got = iso_invariants(rep);
          REQUIRE(got.cone == c, "cone not recovered");
          REQUIRE(got.ext_class == e, "ext-class not recovered");
          ++pairs;
        }
    }
  }
  REQUIRE(pairs > 0, "no (cone, class) pairs exercised");
  return {true, std::to_string(pairs) + " (cone, class) pairs over " + std::to_string(extensions) + " extensions, " +
                    std::to_string(invariant_cones) + " invariant cone fixtures; all recovered"};
}

// --- 5 -------------------------------------------------------------------------

Outcome splitting_and_torsor() {
  const auto nm = fixtures::normalizer_model();
  REQUIRE(!is_split(nm), "normalizer model reported split");
  REQUIRE(i1_set(nm).empty(), "normalizer model has nonempty I^1");
  std::mt19937 rng(kSeed + 5);
  std::size_t fixtures_checked = 0, actions = 0;
  for (const auto& m : fixtures::small_modules()) {
    std::vector<RationalVector> s(m.group().order(), RationalVector(m.rank(), 0));
    for (std::size_t x = 0; x < s.size(); ++x)
      if (x != m.group().identity())
        for (auto& q : s[x]) q = fixtures::q(static_cast<long>(rng() % 8), 8);
    for (const ExtensionData& ext : {ExtensionData(m), ExtensionData(fixtures::coboundary_kappa(m, s))}) {
      const auto h1 = cohomology_torus(m, 1);
      const auto i1 = i1_set(ext);
      REQUIRE(is_split(ext), "split fixture reported non-split");
      REQUIRE(Integer(i1.size()) == h1.order(), "|I^1| = " + std::to_string(i1.size()) + " but |H^1| = " +
                                                     h1.order().get_str());
      for (const auto& e : i1) {
        std::set<std::vector<RationalVector>> orbit;
        for (const auto& h : h1.representatives) {
          orbit.insert(torsor_act(TorusOneCocycle(m, h.values), e).representative());
          ++actions;
        }
        REQUIRE(orbit.size() == i1.size(), "torsor action not free and transitive");
      }
      ++fixtures_checked;
    }
  }
  // trivial action with kappa(g,g) = 1/2 splits
  const ExtensionData half(fixtures::z2_kappa(LatticeModule::trivial(FiniteGroup::cyclic(2), 1), {Rational(1, 2)}));
  REQUIRE(is_split(half) && i1_set(half).size() == 2, "Z2 trivial action with kappa = 1/2 mis-reported");
  return {true, "normalizer model non-split, I^1 empty; " + std::to_string(fixtures_checked) +
                    " split fixtures with |I^1| = |H^1|; " + std::to_string(actions) +
                    " torsor actions, free and transitive"};
}

// --- 6 -------------------------------------------------------------------------

bool divides(const Integer& a, const Integer& b) { return b % a == 0; }

Outcome linear_algebra() {
  std::mt19937 rng(kSeed + 6);
  std::size_t solved = 0, certified = 0, mod1_solved = 0, mod1_certified = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntegerMatrix m = fixtures::random_matrix(rng, r, c, 20);
    if (t % 4 == 0 && c > 1)  // force rank deficiency now and then
      for (std::size_t i = 0; i < r; ++i) m(i, c - 1) = m(i, 0) * 2;
    const std::string id = "matrix #" + std::to_string(t);

    const auto s = snf(m);
    REQUIRE(s.U * m * s.V == s.S, id + ": U M V != S");
    REQUIRE(is_unimodular(s.U) && is_unimodular(s.V), id + ": transforms not unimodular");
    const auto f = s.invariant_factors();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j || i >= f.size()) REQUIRE(s.S(i, j) == 0, id + ": S not diagonal");
    for (std::size_t i = 0; i < f.size(); ++i) {
      REQUIRE(f[i] > 0, id + ": nonpositive invariant factor");
      if (i + 1 < f.size()) REQUIRE(divides(f[i], f[i + 1]), id + ": divisibility chain broken");
    }

    const auto h = hnf(m);
    REQUIRE(m * h.U == h.H && is_unimodular(h.U), id + ": M U != H");
    std::size_t last = 0;
    bool first = true, zero = false;
    for (std::size_t j = 0; j < c; ++j) {
      std::size_t i = 0;
      while (i < r && h.H(i, j) == 0) ++i;
      if (i == r) {
        zero = true;
        continue;
      }
      REQUIRE(!zero && (first || i > last) && h.H(i, j) > 0, id + ": H not in column echelon form");
      last = i;
      first = false;
    }

    // integer systems
    IntegerVector b(r);
    if (t % 2 == 0) {
      IntegerVector x(c);
      for (auto& v : x) v = static_cast<long>(rng() % 11) - 5;
      b = m.apply(x);
    } else {
      for (auto& v : b) v = static_cast<long>(rng() % 41) - 20;
    }
    const auto sol = solve_integer(m, b);
    const auto cert = oracle::integer_obstruction(m, b);
    if (sol) {
      REQUIRE(m.apply(sol->particular) == b, id + ": particular integer solution fails substitution");
      for (const auto& k : sol->kernel_basis) REQUIRE(m.apply(k) == IntegerVector(r, 0), id + ": kernel vector");
      REQUIRE(sol->kernel_basis.size() == c - s.rank(), id + ": kernel rank");
      REQUIRE(!cert, id + ": obstruction certificate for a solvable system");
      ++solved;
    } else {
      REQUIRE(cert.has_value(), id + ": no solution reported without an obstruction");
      Rational yb = 0;
      for (std::size_t i = 0; i < r; ++i) yb += (*cert)[i] * Rational(b[i]);
      REQUIRE(yb.get_den() != 1, id + ": certificate does not separate b");
      for (std::size_t j = 0; j < c; ++j) {
        Rational ym = 0;
        for (std::size_t i = 0; i < r; ++i) ym += (*cert)[i] * Rational(m(i, j));
        REQUIRE(ym.get_den() == 1, id + ": certificate y M not integral");
      }
      ++certified;
    }

    // torus systems
    RationalVector bq(r);
    if (t % 2 == 1) {
      RationalVector x(c);
      for (auto& v : x) v = fixtures::q(static_cast<long>(rng() % 12), 12);
      bq = reduce_mod1(m.apply(x));
    } else {
      for (auto& v : bq) v = fixtures::q(static_cast<long>(rng() % 6), 6);
    }
    const auto ms = solve_mod1(m, bq);
    const auto mcert = oracle::mod1_obstruction(m, bq);
    auto check = [&](const RationalVector& x) {
      RationalVector d = m.apply(x);
      for (std::size_t i = 0; i < r; ++i) d[i] -= bq[i];
      return is_zero_mod1(d);
    };
    if (ms) {
      REQUIRE(!mcert, id + ": torus obstruction for a solvable system");
      REQUIRE(check(ms->particular), id + ": particular torus solution fails substitution");
      // every torsion combination (bounded) plus free samples
      std::vector<std::size_t> digits(ms->torsion.size(), 0);
      std::size_t combos = 0;
      for (;;) {
        RationalVector x = ms->particular;
        for (std::size_t k = 0; k < digits.size(); ++k)
          for (std::size_t i = 0; i < c; ++i) x[i] += Rational(static_cast<long>(digits[k])) * ms->torsion[k].generator[i];
        for (const Rational& w : {Rational(0), Rational(1, 7), Rational(-3, 11)})
          for (const auto& dir : ms->free_directions) {
            RationalVector y = x;
            for (std::size_t i = 0; i < c; ++i) y[i] += w * Rational(dir[i]);
            REQUIRE(check(y), id + ": free-direction sample fails");
          }
        REQUIRE(check(x), id + ": torsion combination fails");
        if (++combos > 512) break;
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == ms->torsion[k].order.get_ui()) digits[k++] = 0;
        if (k == digits.size()) break;
      }
      ++mod1_solved;
    } else {
      REQUIRE(mcert.has_value(), id + ": empty torus solution set without an obstruction");
      for (std::size_t j = 0; j < c; ++j) {
        Integer ym = 0;
        for (std::size_t i = 0; i < r; ++i) ym += (*mcert)[i] * m(i, j);
        REQUIRE(ym == 0, id + ": torus certificate y M != 0");
      }
      ++mod1_certified;
    }
  }
  return {true, "1000 matrices; integer systems " + std::to_string(solved) + " solved / " + std::to_string(certified) +
                    " certified empty; torus systems " + std::to_string(mod1_solved) + " solved / " +
                    std::to_string(mod1_certified) + " certified empty"};
}

// --- 7 -------------------------------------------------------------------------

Outcome sheaf_equivalence() {
  std::mt19937 rng(kSeed + 7);
  std::size_t done = 0, sections = 0, attempts = 0;
  while (done < 100) {
    REQUIRE(++attempts < 1000, "could not draw 100 diagrams within the size bound");
    const auto d = fixtures::random_diagram(rng);
    std::size_t product = 1;
    for (std::size_t i = 0; i < d.size(); ++i) product *= std::max<std::size_t>(1, d.classes(i).size());
    if (product > 10000) continue;
    const auto got = enumerate_global_sections(d);
    const auto want = oracle::product_filter_sections(d);
    REQUIRE(got.size() == want.size(), "diagram #" + std::to_string(done) + ": " + std::to_string(got.size()) +
                                           " sections vs " + std::to_string(want.size()) + " by brute force");
    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i].choice == want[i], "section lists differ");
    sections += got.size();
    ++done;
  }
  return {true, "100 random diagrams, " + std::to_string(sections) + " sections, identical to product-filter enumeration"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "cylinder case study", 1.0, cylinder},
      {2, "structure group H^1(Z2xZ2, T^2)", 5.0, structure_group},
      {3, "Delzant checks", 10.0, delzant},
      {4, "classification round trip", 10.0, classification_round_trip},
      {5, "splitting and I^1 torsor", 5.0, splitting_and_torsor},
      {6, "exact linear algebra properties", 30.0, linear_algebra},
      {7, "brute-force sheaf equivalence", 30.0, sheaf_equivalence},
  };
  int failures = 0;
  std::printf("acceptance suite (seed %u, exact arithmetic, limits are wall-clock)\n", kSeed);
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit) {
      o.ok = false;
      o.detail += " [over time limit]";
    }
    failures += !o.ok;
    std::printf("%s  %d. %-34s %8.3f s / %4.0f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
