#include "multfree/groupcoh.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "multfree/errors.hpp"
#include "normalizer.hpp"

namespace multfree {

namespace {

// Entry budget for dense bar-resolution matrices.
constexpr std::size_t kMaxMatrixEntries = std::size_t{1} << 22;

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<std::size_t> decode(std::size_t index, std::size_t degree, std::size_t order) {
  std::vector<std::size_t> t(degree);
  for (std::size_t i = degree; i-- > 0;) {
    t[i] = index % order;
    index /= order;
  }
  return t;
}

std::size_t encode(const std::vector<std::size_t>& t, std::size_t order) {
  std::size_t index = 0;
  for (std::size_t x : t) index = index * order + x;
  return index;
}

void check_entries(std::size_t rows, std::size_t cols) {
  if (cols != 0 && rows > kMaxMatrixEntries / cols)
    throw PreconditionError("bar resolution too large (" + std::to_string(rows) + " x " +
                            std::to_string(cols) + "); reduce group order, rank or degree");
}

RationalVector add(RationalVector a, const RationalVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

RationalVector sub(RationalVector a, const RationalVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

RationalVector neg(RationalVector a) {
  for (auto& x : a) x = -x;
  return a;
}

void check_values(const std::vector<RationalVector>& values, std::size_t count, std::size_t rank,
                  const char* what) {
  if (values.size() != count)
    throw PreconditionError(std::string(what) + " has " + std::to_string(values.size()) +
                            " values, expected " + std::to_string(count));
  for (const auto& v : values)
    if (v.size() != rank)
      throw PreconditionError(std::string(what) + " value has wrong dimension");
}

std::vector<RationalVector> reduce_all(std::vector<RationalVector> values) {
  for (auto& v : values) v = reduce_mod1(std::move(v));
  return values;
}

// All combinations sum c_i g_i with 0 <= c_i < order_i, in mixed-radix order.
template <typename F>
void for_each_combination(const RationalVector& base, const std::vector<TorsionGenerator>& gens,
                          F&& visit) {
  std::vector<unsigned long> digits(gens.size(), 0);
  for (;;) {
    RationalVector x = base;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += gens[i].generator[j] * digits[i];
    visit(reduce_mod1(std::move(x)));
    std::size_t i = 0;
    while (i < gens.size()) {
      if (++digits[i] < gens[i].order.get_ui()) break;
      digits[i] = 0;
      ++i;
    }
    if (i == gens.size()) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// LatticeModule

LatticeModule::LatticeModule(FiniteGroup group, std::size_t rank, std::vector<IntegerMatrix> matrices)
    : group_(std::move(group)), rank_(rank), matrices_(std::move(matrices)) {
  if (group_.order() > kMaxGroupOrder)
    throw PreconditionError("group order " + std::to_string(group_.order()) + " exceeds the limit " +
                            std::to_string(kMaxGroupOrder));
  if (rank_ > kMaxModuleRank)
    throw PreconditionError("module rank " + std::to_string(rank_) + " exceeds the limit " +
                            std::to_string(kMaxModuleRank));
  if (matrices_.size() != group_.order())
    throw PreconditionError("module needs one matrix per group element");
  for (std::size_t g = 0; g < matrices_.size(); ++g) {
    const auto& m = matrices_[g];
    if (m.rows() != rank_ || m.cols() != rank_)
      throw PreconditionError("matrix for '" + group_.name(g) + "' has wrong shape");
    if (!is_unimodular(m) && rank_ > 0)
      throw PreconditionError("matrix for '" + group_.name(g) + "' is not unimodular");
  }
  if (matrices_[group_.identity()] != IntegerMatrix::identity(rank_))
    throw PreconditionError("identity element does not act as the identity");
  for (std::size_t g = 0; g < group_.order(); ++g)
    for (std::size_t h = 0; h < group_.order(); ++h)
      if (matrices_[group_.mul(g, h)] != matrices_[g] * matrices_[h])
        throw PreconditionError("matrices are not a homomorphism at ('" + group_.name(g) + "', '" +
                                group_.name(h) + "')");
  right_.reserve(matrices_.size());
  for (const auto& m : matrices_) right_.push_back(m.transpose());
}

LatticeModule LatticeModule::trivial(FiniteGroup group, std::size_t rank) {
  std::vector<IntegerMatrix> ms(group.order(), IntegerMatrix::identity(rank));
  return LatticeModule(std::move(group), rank, std::move(ms));
}

RationalVector LatticeModule::act(const RationalVector& a, std::size_t g) const {
  return right_[g].apply(a);
}

IntegerVector LatticeModule::act_character(const IntegerVector& alpha, std::size_t g) const {
  return matrices_[g].apply(alpha);
}

LatticeModule LatticeModule::restrict(const GroupEmbedding& embedding) const {
  if (embedding.target_order() != group_.order())
    throw PreconditionError("embedding target does not match the module's group");
  std::vector<IntegerMatrix> ms;
  for (std::size_t a = 0; a < embedding.source().order(); ++a) ms.push_back(matrices_[embedding(a)]);
  return LatticeModule(embedding.source(), rank_, std::move(ms));
}

// ---------------------------------------------------------------------------
// Cochains

Cochain zero_cochain(const LatticeModule& module, std::size_t degree) {
  const std::size_t count = power(module.group().order(), degree);
  return Cochain{degree, std::vector<RationalVector>(count, RationalVector(module.rank(), 0))};
}

RationalVector flatten(const Cochain& c) {
  RationalVector flat;
  for (const auto& v : c.values) flat.insert(flat.end(), v.begin(), v.end());
  return flat;
}

Cochain unflatten(const RationalVector& flat, std::size_t degree, std::size_t rank) {
  Cochain c{degree, {}};
  if (rank == 0) {
    // The count is not recoverable from an empty vector; callers of rank 0
    // use zero_cochain instead.
    return c;
  }
  for (std::size_t i = 0; i < flat.size(); i += rank)
    c.values.emplace_back(flat.begin() + static_cast<long>(i), flat.begin() + static_cast<long>(i + rank));
  return c;
}

Cochain coboundary(const LatticeModule& module, const Cochain& cochain) {
  const FiniteGroup& g = module.group();
  const std::size_t m = g.order();
  const std::size_t k = cochain.degree;
  check_values(cochain.values, power(m, k), module.rank(), "cochain");
  const std::size_t out_count = power(m, k + 1);
  Cochain out{k + 1, {}};
  out.values.reserve(out_count);
  for (std::size_t idx = 0; idx < out_count; ++idx) {
    const auto t = decode(idx, k + 1, m);
    RationalVector v;
    if (k == 0) {
      v = sub(module.act(cochain.values[0], t[0]), cochain.values[0]);
    } else {
      std::vector<std::size_t> tail(t.begin() + 1, t.end());
      v = cochain.values[encode(tail, m)];
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> merged;
        for (std::size_t j = 0; j < k + 1; ++j) {
          if (j == i) {
            merged.push_back(g.mul(t[i], t[i + 1]));
            ++j;
          } else {
            merged.push_back(t[j]);
          }
        }
        const RationalVector& term = cochain.values[encode(merged, m)];
        v = (i % 2 == 0) ? sub(std::move(v), term) : add(std::move(v), term);  // sign (-1)^{i+1}
      }
      std::vector<std::size_t> head(t.begin(), t.begin() + static_cast<long>(k));
      const RationalVector last = module.act(cochain.values[encode(head, m)], t[k]);
      v = (k % 2 == 1) ? add(std::move(v), last) : sub(std::move(v), last);
    }
    out.values.push_back(reduce_mod1(std::move(v)));
  }
  return out;
}

IntegerMatrix bar_differential(const LatticeModule& module, std::size_t degree, bool normalized) {
  const FiniteGroup& g = module.group();
  const std::size_t m = g.order();
  const std::size_t n = module.rank();
  const std::size_t e = g.identity();
  const std::size_t k = degree;

  // Tuple index -> column/row block, or npos when dropped by normalization.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  auto build_index = [&](std::size_t deg) {
    const std::size_t count = power(m, deg);
    std::vector<std::size_t> map(count, npos);
    std::size_t next = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto t = decode(i, deg, m);
      if (normalized && std::find(t.begin(), t.end(), e) != t.end()) continue;
      map[i] = next++;
    }
    return std::make_pair(map, next);
  };
  const auto [in_map, in_count] = build_index(k);
  const auto [out_map, out_count] = build_index(k + 1);
  check_entries(out_count * n, in_count * n);
  IntegerMatrix d(out_count * n, in_count * n);

  auto add_block = [&](std::size_t row_block, std::size_t in_tuple, long sign, const IntegerMatrix* a) {
    const std::size_t col_block = in_map[in_tuple];
    if (col_block == npos) return;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Integer v = a ? (*a)(c, r) : Integer(r == c ? 1 : 0);  // M^T for the action
        if (v != 0) d(row_block * n + r, col_block * n + c) += sign * v;
      }
  };

  for (std::size_t idx = 0; idx < out_map.size(); ++idx) {
    if (out_map[idx] == npos) continue;
    const std::size_t rb = out_map[idx];
    const auto t = decode(idx, k + 1, m);
    if (k == 0) {
      add_block(rb, 0, 1, &module.matrix(t[0]));
      add_block(rb, 0, -1, nullptr);
      continue;
    }
    std::vector<std::size_t> tail(t.begin() + 1, t.end());
    add_block(rb, encode(tail, m), 1, nullptr);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> merged;
      for (std::size_t j = 0; j < k + 1; ++j) {
        if (j == i) {
          merged.push_back(g.mul(t[i], t[i + 1]));
          ++j;
        } else {
          merged.push_back(t[j]);
        }
      }
      add_block(rb, encode(merged, m), (i % 2 == 0) ? -1 : 1, nullptr);
    }
    std::vector<std::size_t> head(t.begin(), t.begin() + static_cast<long>(k));
    add_block(rb, encode(head, m), (k % 2 == 1) ? 1 : -1, &module.matrix(t[k]));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Cocycles

TorusOneCocycle::TorusOneCocycle(LatticeModule module, std::vector<RationalVector> values)
    : module_(std::move(module)) {
  check_values(values, module_.group().order(), module_.rank(), "1-cocycle");
  values_ = reduce_all(std::move(values));
  const Cochain d = coboundary(module_, Cochain{1, values_});
  for (std::size_t i = 0; i < d.values.size(); ++i)
    if (!is_zero_mod1(d.values[i])) {
      const auto m = module_.group().order();
      throw PreconditionError("1-cocycle identity fails at ('" + module_.group().name(i / m) + "', '" +
                              module_.group().name(i % m) + "')");
    }
}

TorusTwoCocycle::TorusTwoCocycle(LatticeModule module, std::vector<RationalVector> values)
    : module_(std::move(module)) {
  const FiniteGroup& g = module_.group();
  const std::size_t m = g.order();
  check_values(values, m * m, module_.rank(), "2-cocycle");
  values_ = reduce_all(std::move(values));
  for (std::size_t x = 0; x < m; ++x)
    if (!is_zero_mod1(values_[g.identity() * m + x]) || !is_zero_mod1(values_[x * m + g.identity()]))
      throw PreconditionError("2-cocycle is not normalized at '" + g.name(x) + "'");
  const Cochain d = coboundary(module_, Cochain{2, values_});
  for (std::size_t i = 0; i < d.values.size(); ++i)
    if (!is_zero_mod1(d.values[i])) {
      const auto t = decode(i, 3, m);
      throw PreconditionError("2-cocycle identity fails at ('" + g.name(t[0]) + "', '" + g.name(t[1]) +
                              "', '" + g.name(t[2]) + "')");
    }
}

TorusTwoCocycle TorusTwoCocycle::zero(LatticeModule module) {
  const std::size_t m = module.group().order();
  const std::size_t n = module.rank();
  return TorusTwoCocycle(std::move(module), std::vector<RationalVector>(m * m, RationalVector(n, 0)));
}

bool TorusTwoCocycle::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const RationalVector& v) { return is_zero_mod1(v); });
}

// ---------------------------------------------------------------------------
// Canonical representatives

namespace detail {

CocycleNormalizer::CocycleNormalizer(const LatticeModule& module, std::size_t degree, Integer grid)
    : degree_(degree), grid_(std::move(grid)) {
  if (degree_ == 0) throw std::logic_error("normalizer needs degree >= 1");
  forward_ = bar_differential(module, degree_);
  const std::size_t width = forward_.cols();
  SmithDecomposition sd = snf_right(forward_);
  rank_ = sd.rank();
  v_ = std::move(sd.V);
  auto vinv = unimodular_inverse(v_);
  if (!vinv) throw std::logic_error("Smith transform is not unimodular");
  v_inverse_ = std::move(*vinv);
  for (std::size_t i = 0; i < rank_; ++i) {
    const Integer& d = sd.S(i, i);
    if (d == 1) continue;
    RationalVector gen(width);
    for (std::size_t r = 0; r < width; ++r) gen[r] = Rational(v_(r, i), d);
    torsion_.push_back({reduce_mod1(std::move(gen)), d});
  }

  // Lattice of grid-scaled coboundaries: saturated image of d_{k-1} plus
  // grid * Z^N. The saturation equals the real span meeting Z^N.
  const IntegerMatrix prev = bar_differential(module, degree_ - 1);
  SmithDecomposition sp = snf(prev);
  const std::size_t r0 = sp.rank();
  auto uinv = unimodular_inverse(sp.U);
  if (!uinv) throw std::logic_error("Smith transform is not unimodular");
  IntegerMatrix gens(width, r0 + width);
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = 0; j < r0; ++j) gens(i, j) = (*uinv)(i, j);
    gens(i, r0 + i) = grid_;
  }
  const IntegerMatrix h = hnf(gens).H;
  lattice_ = IntegerMatrix(width, width);
  for (std::size_t i = 0; i < width; ++i)
    for (std::size_t j = 0; j < width; ++j) lattice_(i, j) = h(i, j);
  for (std::size_t i = 0; i < width; ++i)
    if (lattice_(i, i) <= 0) throw std::logic_error("coboundary lattice is not of full rank");
}

RationalVector CocycleNormalizer::canonical(const RationalVector& flat) const {
  const std::size_t width = v_.cols();
  if (flat.size() != width) throw std::logic_error("cochain has wrong size for normalizer");
  RationalVector y = v_inverse_.apply(flat);
  for (std::size_t j = rank_; j < width; ++j) y[j] = 0;
  RationalVector f = reduce_mod1(v_.apply(y));
  IntegerVector z(width);
  for (std::size_t i = 0; i < width; ++i) {
    Rational s = f[i] * grid_;
    if (s.get_den() != 1) throw std::logic_error("class representative is off the torsion grid");
    z[i] = s.get_num();
  }
  for (std::size_t i = 0; i < width; ++i) {
    Integer c;
    mpz_fdiv_q(c.get_mpz_t(), z[i].get_mpz_t(), lattice_(i, i).get_mpz_t());
    if (c == 0) continue;
    for (std::size_t r = i; r < width; ++r) z[r] -= c * lattice_(r, i);
  }
  RationalVector out(width);
  for (std::size_t i = 0; i < width; ++i) out[i] = Rational(z[i], grid_);
  for (auto& x : out) x.canonicalize();
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ExtensionData

struct ExtensionData::State {
  LatticeModule module;
  TorusTwoCocycle kappa;
  Integer grid;
  detail::CocycleNormalizer normalizer;
};

namespace {

Integer grid_for(const TorusTwoCocycle& kappa) {
  Integer den = 1;
  for (const auto& v : kappa.values()) den = lcm(den, common_denominator(v));
  return den * static_cast<unsigned long>(kappa.module().group().order());
}

}  // namespace

ExtensionData::ExtensionData(LatticeModule module) : ExtensionData(TorusTwoCocycle::zero(std::move(module))) {}

ExtensionData::ExtensionData(TorusTwoCocycle kappa) {
  Integer grid = grid_for(kappa);
  const LatticeModule& mod = kappa.module();
  state_ = std::make_shared<const State>(
      State{mod, kappa, grid, detail::CocycleNormalizer(mod, 1, grid)});
}

const LatticeModule& ExtensionData::module() const noexcept { return state_->module; }
const TorusTwoCocycle& ExtensionData::kappa() const noexcept { return state_->kappa; }
const Integer& ExtensionData::grid() const noexcept { return state_->grid; }
const detail::CocycleNormalizer& ExtensionData::normalizer() const noexcept { return state_->normalizer; }

ExtensionData ExtensionData::restrict(const GroupEmbedding& embedding) const {
  LatticeModule sub = module().restrict(embedding);
  const std::size_t m = embedding.source().order();
  std::vector<RationalVector> values;
  values.reserve(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) values.push_back(kappa()(embedding(a), embedding(b)));
  return ExtensionData(TorusTwoCocycle(std::move(sub), std::move(values)));
}

bool operator==(const ExtensionData& a, const ExtensionData& b) {
  if (a.state_ == b.state_) return true;
  return a.module() == b.module() && a.kappa().values() == b.kappa().values();
}

// ---------------------------------------------------------------------------
// ExtClass

namespace {

std::vector<RationalVector> canonical_gamma_part(const ExtensionData& ext, const RationalVector& flat) {
  const RationalVector c = ext.normalizer().canonical(flat);
  if (ext.rank() == 0) return std::vector<RationalVector>(ext.group().order());
  return unflatten(c, 1, ext.rank()).values;
}

}  // namespace

ExtClass::ExtClass(ExtensionData extension, std::vector<RationalVector> gamma_part)
    : extension_(std::move(extension)) {
  const FiniteGroup& g = extension_.group();
  const std::size_t m = g.order();
  check_values(gamma_part, m, extension_.rank(), "class representative");
  const Cochain d = coboundary(extension_.module(), Cochain{1, gamma_part});
  for (std::size_t i = 0; i < d.values.size(); ++i)
    if (!is_zero_mod1(sub(d.values[i], extension_.kappa().values()[i])))
      throw PreconditionError("representative does not satisfy d f = kappa at ('" + g.name(i / m) +
                              "', '" + g.name(i % m) + "')");
  rep_ = canonical_gamma_part(extension_, flatten(Cochain{1, gamma_part}));
}

// ---------------------------------------------------------------------------
// Cohomology

std::vector<Integer> cohomology_lattice(const LatticeModule& module, std::size_t degree) {
  if (degree > 3) throw PreconditionError("lattice cohomology is supported for degrees 0..3");
  if (degree == 0) {
    const std::size_t r = rank(bar_differential(module, 0, true));
    return std::vector<Integer>(module.rank() - r, Integer(0));
  }
  std::vector<Integer> out;
  for (const Integer& d : invariant_factors(bar_differential(module, degree - 1, true)))
    if (d > 1) out.push_back(d);
  return out;
}

Integer TorusCohomology::order() const {
  Integer r = 1;
  for (const auto& d : invariant_factors) r *= d;
  return r;
}

TorusCohomology cohomology_torus(const LatticeModule& module, std::size_t degree) {
  if (degree != 1 && degree != 2) throw PreconditionError("torus cohomology is supported for degrees 1 and 2");
  const std::size_t m = module.group().order();
  detail::CocycleNormalizer norm(module, degree, Integer(static_cast<unsigned long>(m)));
  TorusCohomology out;
  for (const auto& t : norm.torsion()) out.invariant_factors.push_back(t.order);
  std::sort(out.invariant_factors.begin(), out.invariant_factors.end());

  const std::size_t width = norm.differential().cols();
  std::set<RationalVector> reps;
  for_each_combination(RationalVector(width, 0), norm.torsion(),
                       [&](const RationalVector& x) { reps.insert(norm.canonical(x)); });
  if (Integer(static_cast<unsigned long>(reps.size())) != out.order())
    throw std::logic_error("torus cohomology representatives are not distinct");
  std::vector<RationalVector> sorted(reps.begin(), reps.end());
  // The zero class is the lexicographic minimum, already first.
  for (const auto& r : sorted) {
    Cochain c = module.rank() == 0 ? zero_cochain(module, degree) : unflatten(r, degree, module.rank());
    out.representatives.push_back(std::move(c));
  }
  return out;
}

namespace {

RationalVector flat_kappa(const ExtensionData& ext, bool negate) {
  RationalVector b = flatten(Cochain{2, ext.kappa().values()});
  return reduce_mod1(negate ? neg(std::move(b)) : std::move(b));
}

}  // namespace

std::optional<std::vector<RationalVector>> is_split(const ExtensionData& ext) {
  const auto& norm = ext.normalizer();
  auto sol = solve_mod1(norm.differential(), flat_kappa(ext, true));
  if (!sol) return std::nullopt;
  std::optional<RationalVector> best;
  for_each_combination(sol->particular, sol->torsion, [&](const RationalVector& x) {
    RationalVector c = norm.canonical(x);
    if (!best || c < *best) best = std::move(c);
  });
  if (ext.rank() == 0) return std::vector<RationalVector>(ext.group().order());
  return unflatten(*best, 1, ext.rank()).values;
}

std::vector<ExtClass> i1_set(const ExtensionData& ext) {
  const auto& norm = ext.normalizer();
  auto sol = solve_mod1(norm.differential(), flat_kappa(ext, false));
  if (!sol) return {};
  std::set<RationalVector> reps;
  for_each_combination(sol->particular, sol->torsion,
                       [&](const RationalVector& x) { reps.insert(norm.canonical(x)); });
  std::vector<ExtClass> out;
  for (const auto& r : reps) {
    std::vector<RationalVector> values =
        ext.rank() == 0 ? std::vector<RationalVector>(ext.group().order()) : unflatten(r, 1, ext.rank()).values;
    out.emplace_back(ext, std::move(values));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExtClass torsor_act(const TorusOneCocycle& structure_class, const ExtClass& e) {
  if (!(structure_class.module() == e.extension().module()))
    throw PreconditionError("structure class and ext-class live over different modules");
  std::vector<RationalVector> values;
  for (std::size_t g = 0; g < e.representative().size(); ++g)
    values.push_back(add(structure_class(g), e(g)));
  return ExtClass(e.extension(), std::move(values));
}

ExtClass restrict_class(const ExtClass& e, const GroupEmbedding& subgroup) {
  ExtensionData sub = e.extension().restrict(subgroup);
  std::vector<RationalVector> values;
  for (std::size_t a = 0; a < subgroup.source().order(); ++a) values.push_back(e(subgroup(a)));
  return ExtClass(std::move(sub), std::move(values));
}

// ---------------------------------------------------------------------------
// Embeddings of extensions

ExtensionEmbedding::ExtensionEmbedding(ExtensionData sub, ExtensionData full,
                                       std::vector<std::size_t> group_map, IntegerMatrix torus_map)
    : ExtensionEmbedding(sub, full, group_map, torus_map,
                         std::vector<RationalVector>(sub.group().order(), RationalVector(full.rank(), 0))) {}

ExtensionEmbedding::ExtensionEmbedding(ExtensionData sub, ExtensionData full,
                                       std::vector<std::size_t> group_map, IntegerMatrix torus_map,
                                       std::vector<RationalVector> offsets)
    : sub_(std::move(sub)),
      full_(std::move(full)),
      group_map_(std::move(group_map)),
      torus_map_(std::move(torus_map)),
      offsets_(std::move(offsets)) {
  const FiniteGroup& gs = sub_.group();
  const FiniteGroup& gf = full_.group();
  GroupEmbedding hom(gs, gf, group_map_);  // validates the homomorphism property
  const std::size_t p = sub_.rank(), n = full_.rank();
  if (torus_map_.rows() != n || torus_map_.cols() != p)
    throw PreconditionError("torus map has wrong shape");
  if (p > 0) {
    const auto factors = invariant_factors(torus_map_);
    if (factors.size() != p || std::any_of(factors.begin(), factors.end(), [](const Integer& d) { return d != 1; }))
      throw PreconditionError("torus map is not injective onto a direct summand");
  }
  check_values(offsets_, gs.order(), n, "offsets");
  offsets_ = reduce_all(std::move(offsets_));
  if (!is_zero_mod1(offsets_[gs.identity()])) throw PreconditionError("offset at the identity must vanish");

  for (std::size_t a = 0; a < gs.order(); ++a) {
    // (J t).iota(a) = J (t.a)
    const IntegerMatrix lhs = full_.module().matrix(group_map_[a]).transpose() * torus_map_;
    const IntegerMatrix rhs = torus_map_ * sub_.module().matrix(a).transpose();
    if (lhs != rhs)
      throw PreconditionError("torus map is not equivariant at '" + gs.name(a) + "'");
  }
  for (std::size_t a = 0; a < gs.order(); ++a)
    for (std::size_t b = 0; b < gs.order(); ++b) {
      RationalVector lhs = full_.kappa()(group_map_[a], group_map_[b]);
      lhs = add(std::move(lhs), offsets_[b]);
      lhs = multfree::sub(std::move(lhs), offsets_[gs.mul(a, b)]);
      lhs = add(std::move(lhs), full_.module().act(offsets_[a], group_map_[b]));
      const RationalVector rhs = torus_map_.apply(sub_.kappa()(a, b));
      if (!is_zero_mod1(multfree::sub(std::move(lhs), rhs)))
        throw PreconditionError("embedding does not respect the 2-cocycles at ('" + gs.name(a) + "', '" +
                                gs.name(b) + "')");
    }
}

bool ExtensionEmbedding::components_bijective() const {
  return std::set<std::size_t>(group_map_.begin(), group_map_.end()).size() == group_map_.size() &&
         group_map_.size() == full_.group().order();
}

ExtClass extend_class(const ExtClass& e, const ExtensionEmbedding& emb) {
  if (!(e.extension() == emb.sub())) throw PreconditionError("class does not live over the embedded extension");
  if (!emb.components_bijective())
    throw PreconditionError("component comparison map is not bijective; extension is not unique");
  const std::size_t m = emb.full().group().order();
  std::vector<RationalVector> values(m);
  for (std::size_t a = 0; a < emb.group_map().size(); ++a)
    values[emb.group_map()[a]] = sub(emb.torus_map().apply(e(a)), emb.offsets()[a]);
  return ExtClass(emb.full(), std::move(values));
}

ExtClass restrict_along(const ExtClass& e, const ExtensionEmbedding& emb) {
  if (!(e.extension() == emb.full())) throw PreconditionError("class does not live over the target extension");
  const std::size_t n = emb.full().rank(), p = emb.sub().rank();
  const std::size_t ms = emb.sub().group().order();
  const LatticeModule& full = emb.full().module();

  // U J V = [I; 0]: rows p.. of U cut out the subtorus, V * (rows ..p of U) inverts J on it.
  SmithDecomposition sd = snf(emb.torus_map());
  IntegerMatrix q(n - p, n), jplus(p, n);
  for (std::size_t i = p; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i - p, j) = sd.U(i, j);
  {
    IntegerMatrix top(p, n);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < n; ++j) top(i, j) = sd.U(i, j);
    jplus = p > 0 ? sd.V * top : IntegerMatrix(0, n);
  }

  // g0(a) = f(iota a) + theta(a); find t with Q (g0(a) + t.iota(a) - t) = 0 for all a.
  std::vector<RationalVector> g0(ms);
  for (std::size_t a = 0; a < ms; ++a) g0[a] = add(e(emb.group_map()[a]), emb.offsets()[a]);
  IntegerMatrix system((n - p) * ms, n);
  RationalVector rhs((n - p) * ms);
  for (std::size_t a = 0; a < ms; ++a) {
    IntegerMatrix block = full.matrix(emb.group_map()[a]).transpose();
    for (std::size_t i = 0; i < n; ++i) block(i, i) -= 1;
    const IntegerMatrix qb = q * block;
    const RationalVector qg = q.apply(g0[a]);
    for (std::size_t i = 0; i < n - p; ++i) {
      for (std::size_t j = 0; j < n; ++j) system(a * (n - p) + i, j) = qb(i, j);
      rhs[a * (n - p) + i] = -qg[i];
    }
  }
  std::optional<SolutionSetMod1> sol;
  if (n == p) {
    sol = SolutionSetMod1{RationalVector(n, 0), {}, {}};
  } else {
    sol = solve_mod1(system, reduce_mod1(rhs));
  }
  if (!sol) throw PreconditionError("no representative of the class takes values in the subtorus");

  auto pull_back = [&](const RationalVector& t) {
    std::vector<RationalVector> values(ms);
    for (std::size_t a = 0; a < ms; ++a) {
      const std::size_t ia = emb.group_map()[a];
      RationalVector g = sub(add(g0[a], full.act(t, ia)), t);
      values[a] = reduce_mod1(jplus.apply(g));
    }
    return ExtClass(emb.sub(), std::move(values));
  };
  ExtClass result = pull_back(sol->particular);
  for (const auto& tg : sol->torsion) {
    if (!(pull_back(reduce_mod1(add(sol->particular, tg.generator))) == result))
      throw PreconditionError("restriction along the embedding depends on the representative");
  }
  for (const auto& dir : sol->free_directions) {
    // A circle of solutions: sample a generic rational point on it.
    RationalVector shifted = sol->particular;
    for (std::size_t j = 0; j < n; ++j) shifted[j] += Rational(dir[j]) / 7;
    if (!(pull_back(reduce_mod1(shifted)) == result))
      throw PreconditionError("restriction along the embedding depends on the representative");
  }
  return result;
}

}  // namespace multfree
