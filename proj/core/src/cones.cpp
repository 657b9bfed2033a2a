#include "multfree/cones.hpp"

#include <algorithm>
#include <set>

#include "lp.hpp"
#include "multfree/errors.hpp"

namespace multfree {

namespace {

std::vector<RationalVector> as_rational(const std::vector<IntegerVector>& vs) {
  std::vector<RationalVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(to_rational(v));
  return out;
}

IntegerVector negated(IntegerVector v) {
  for (auto& x : v) x = -x;
  return v;
}

bool is_zero_vector(const IntegerVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// Quotient Z^n -> Z^n / L for a saturated sublattice L with basis `lin`.
struct Quotient {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  IntegerMatrix project;     // dim x ambient
  IntegerMatrix lift;        // ambient x dim
  IntegerMatrix lineality;   // ambient x l, column Hermite form

  IntegerVector reduce(IntegerVector x) const {
    // Subtract lineality columns to bring pivot coordinates into [0, pivot).
    for (std::size_t j = 0; j < lineality.cols(); ++j) {
      std::size_t pr = 0;
      while (pr < ambient && lineality(pr, j) == 0) ++pr;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), x[pr].get_mpz_t(), lineality(pr, j).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t i = 0; i < ambient; ++i) x[i] -= q * lineality(i, j);
    }
    return x;
  }
};

Quotient quotient_by(std::size_t n, const std::vector<IntegerVector>& lin) {
  Quotient q;
  q.ambient = n;
  q.dim = n - lin.size();
  q.lineality = IntegerMatrix::from_columns(lin, n);
  if (lin.empty()) {
    q.project = IntegerMatrix::identity(n);
    q.lift = IntegerMatrix::identity(n);
    return q;
  }
  SmithDecomposition sd = snf(q.lineality);
  auto uinv = unimodular_inverse(sd.U);
  const std::size_t l = lin.size();
  q.project = IntegerMatrix(q.dim, n);
  q.lift = IntegerMatrix(n, q.dim);
  for (std::size_t i = 0; i < q.dim; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      q.project(i, j) = sd.U(l + i, j);
      q.lift(j, i) = (*uinv)(j, l + i);
    }
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------

ConeData::ConeData(std::size_t rank, std::vector<IntegerVector> generators) : rank_(rank) {
  if (rank_ > kMaxConeRank)
    throw PreconditionError("cone rank " + std::to_string(rank_) + " exceeds the limit " +
                            std::to_string(kMaxConeRank));
  for (auto& g : generators) {
    if (g.size() != rank_) throw PreconditionError("cone generator has wrong dimension");
    if (is_zero_vector(g)) throw PreconditionError("cone generator is zero");
    g = primitive(g);
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  generators_ = std::move(generators);
}

bool ConeData::contains(const RationalVector& v) const {
  if (v.size() != rank_) throw PreconditionError("vector has wrong dimension for cone");
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) return true;
  return detail::in_cone(as_rational(generators_), v);
}

bool ConeData::contains(const IntegerVector& v) const { return contains(to_rational(v)); }

bool same_cone(const ConeData& a, const ConeData& b) {
  if (a.rank() != b.rank()) return false;
  for (const auto& g : a.generators())
    if (!b.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

PolytopeData::PolytopeData(std::size_t rank, std::vector<RationalVector> vertices) : rank_(rank) {
  if (rank_ > kMaxPolytopeRank)
    throw PreconditionError("polytope rank " + std::to_string(rank_) + " exceeds the limit " +
                            std::to_string(kMaxPolytopeRank));
  if (vertices.empty()) throw PreconditionError("polytope has no vertices");
  for (auto& v : vertices) {
    if (v.size() != rank_) throw PreconditionError("vertex has wrong dimension");
    for (auto& x : v) x.canonicalize();
  }
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw PreconditionError("vertex list contains duplicates");

  // Full-dimensional: the differences to the first point span R^n.
  std::vector<IntegerVector> diffs;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    RationalVector d(rank_);
    for (std::size_t j = 0; j < rank_; ++j) d[j] = vertices[i][j] - vertices[0][j];
    diffs.push_back(primitive_direction(d));
  }
  if (multfree::rank(IntegerMatrix::from_columns(diffs, rank_)) != rank_ && rank_ > 0)
    throw PreconditionError("polytope is not full-dimensional");

  // Each point must be a vertex: (p, 1) is not in the cone over the others.
  for (std::size_t i = 0; i < vertices.size() && vertices.size() > 1; ++i) {
    std::vector<RationalVector> others;
    for (std::size_t j = 0; j < vertices.size(); ++j) {
      if (j == i) continue;
      RationalVector q = vertices[j];
      q.push_back(1);
      others.push_back(std::move(q));
    }
    RationalVector p = vertices[i];
    p.push_back(1);
    if (detail::in_cone(others, p)) {
      std::string s = "(";
      for (std::size_t j = 0; j < rank_; ++j) s += (j ? "," : "") + to_string(vertices[i][j]);
      throw PreconditionError("point " + s + ") is not a vertex of the convex hull");
    }
  }
  vertices_ = std::move(vertices);
}

bool PolytopeData::has_vertex(const RationalVector& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

LatticeGroupAction::LatticeGroupAction(FiniteGroup group, std::size_t rank, std::vector<IntegerMatrix> matrices)
    : group_(std::move(group)), rank_(rank), matrices_(std::move(matrices)) {
  if (rank_ > kMaxConeRank) throw PreconditionError("action rank exceeds the limit");
  if (matrices_.size() != group_.order()) throw PreconditionError("action needs one matrix per group element");
  for (std::size_t g = 0; g < matrices_.size(); ++g) {
    if (matrices_[g].rows() != rank_ || matrices_[g].cols() != rank_)
      throw PreconditionError("matrix for '" + group_.name(g) + "' has wrong shape");
    if (rank_ > 0 && !is_unimodular(matrices_[g]))
      throw PreconditionError("matrix for '" + group_.name(g) + "' is not unimodular");
  }
  if (matrices_[group_.identity()] != IntegerMatrix::identity(rank_))
    throw PreconditionError("identity element does not act as the identity");
  for (std::size_t g = 0; g < group_.order(); ++g)
    for (std::size_t h = 0; h < group_.order(); ++h)
      if (matrices_[group_.mul(g, h)] != matrices_[g] * matrices_[h])
        throw PreconditionError("matrices are not a homomorphism");
}

// ---------------------------------------------------------------------------

std::vector<IntegerVector> lineality_space(const ConeData& c) {
  const std::size_t n = c.rank();
  std::vector<IntegerVector> in_lineality;
  for (const auto& g : c.generators())
    if (c.contains(negated(g))) in_lineality.push_back(g);
  if (in_lineality.empty()) return {};

  // Saturate: the first r columns of U^{-1} span (span G) ∩ Z^n.
  const IntegerMatrix gm = IntegerMatrix::from_columns(in_lineality, n);
  SmithDecomposition sd = snf(gm);
  const std::size_t r = sd.rank();
  auto uinv = unimodular_inverse(sd.U);
  IntegerMatrix basis(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) basis(i, j) = (*uinv)(i, j);
  const IntegerMatrix h = hnf(basis).H;
  std::vector<IntegerVector> out;
  for (std::size_t j = 0; j < r; ++j) out.push_back(h.column(j));
  return out;
}

bool is_pointed(const ConeData& c) { return lineality_space(c).empty(); }

std::vector<IntegerVector> extremal_rays(const ConeData& c) {
  const std::size_t n = c.rank();
  const auto lin = lineality_space(c);
  const Quotient q = quotient_by(n, lin);

  std::vector<IntegerVector> images;
  for (const auto& g : c.generators()) {
    IntegerVector y = q.project.apply(g);
    if (is_zero_vector(y)) continue;
    images.push_back(primitive(y));
  }
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());

  std::vector<IntegerVector> rays;
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::vector<RationalVector> others;
    for (std::size_t j = 0; j < images.size(); ++j)
      if (j != i) others.push_back(to_rational(images[j]));
    if (detail::in_cone(others, to_rational(images[i]))) continue;
    if (lin.empty()) {
      rays.push_back(images[i]);
    } else {
      rays.push_back(q.reduce(q.lift.apply(images[i])));
    }
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

SmoothnessReport is_smooth(const ConeData& c) {
  const std::size_t n = c.rank();
  const auto lin = lineality_space(c);
  const auto rays = extremal_rays(c);
  SmoothnessReport out;
  if (rays.size() + lin.size() != n) return out;
  std::vector<IntegerVector> cols = rays;
  cols.insert(cols.end(), lin.begin(), lin.end());
  if (n > 0 && !is_unimodular(IntegerMatrix::from_columns(cols, n))) return out;
  out.smooth = true;
  out.witness = std::move(cols);
  return out;
}

ConeData tangent_cone_at_vertex(const PolytopeData& p, const RationalVector& v) {
  if (!p.has_vertex(v)) throw PreconditionError("point is not a vertex of the polytope");
  std::vector<IntegerVector> dirs;
  for (const auto& u : p.vertices()) {
    if (u == v) continue;
    RationalVector d(p.rank());
    for (std::size_t j = 0; j < p.rank(); ++j) d[j] = u[j] - v[j];
    dirs.push_back(primitive_direction(d));
  }
  // The cone over all u - v is the tangent cone; its rays are the edges.
  return ConeData(p.rank(), extremal_rays(ConeData(p.rank(), std::move(dirs))));
}

DelzantReport is_delzant_polytope(const PolytopeData& p) {
  for (const auto& v : p.vertices()) {
    const ConeData t = tangent_cone_at_vertex(p, v);
    if (!is_pointed(t) || !is_smooth(t).smooth) return {false, v};
  }
  return {true, std::nullopt};
}

bool is_invariant(const ConeData& c, const LatticeGroupAction& action) {
  if (action.rank() != c.rank()) throw PreconditionError("action and cone live in different spaces");
  for (std::size_t g = 0; g < action.group().order(); ++g)
    for (const auto& v : c.generators())
      if (!c.contains(action.matrix(g).apply(v))) return false;
  return true;
}

bool is_invariant(const PolytopeData& p, const LatticeGroupAction& action) {
  if (action.rank() != p.rank()) throw PreconditionError("action and polytope live in different spaces");
  for (std::size_t g = 0; g < action.group().order(); ++g)
    for (const auto& v : p.vertices())
      if (!p.has_vertex(action.matrix(g).apply(v))) return false;
  return true;
}

ConeData transform(const IntegerMatrix& a, const ConeData& c) {
  if (a.rows() != c.rank() || a.cols() != c.rank()) throw PreconditionError("matrix has wrong shape");
  std::vector<IntegerVector> gens;
  for (const auto& g : c.generators()) gens.push_back(a.apply(g));
  return ConeData(c.rank(), std::move(gens));
}

PolytopeData transform(const IntegerMatrix& a, const RationalVector& b, const PolytopeData& p) {
  if (a.rows() != p.rank() || a.cols() != p.rank() || b.size() != p.rank())
    throw PreconditionError("affine map has wrong shape");
  std::vector<RationalVector> vs;
  for (const auto& v : p.vertices()) {
    RationalVector w = a.apply(v);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += b[i];
    vs.push_back(std::move(w));
  }
  return PolytopeData(p.rank(), std::move(vs));
}

}  // namespace multfree
