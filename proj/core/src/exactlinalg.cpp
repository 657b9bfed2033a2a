#include "multfree/exactlinalg.hpp"

#include "multfree/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace multfree {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw PreconditionError("IntegerMatrix: ragged initializer");
    for (long v : r) entries_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntegerVector>& rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw PreconditionError("IntegerMatrix: row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntegerVector>& cols,
                                          std::size_t rows) {
  IntegerMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw PreconditionError("IntegerMatrix: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntegerVector IntegerMatrix::row(std::size_t i) const {
  return IntegerVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                       entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntegerVector IntegerMatrix::column(std::size_t j) const {
  IntegerVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

IntegerVector IntegerMatrix::apply(const IntegerVector& v) const {
  if (v.size() != cols_) throw PreconditionError("IntegerMatrix::apply: dimension mismatch");
  IntegerVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0) mpz_addmul(out[i].get_mpz_t(), (*this)(i, j).get_mpz_t(), v[j].get_mpz_t());
  return out;
}

RationalVector IntegerMatrix::apply(const RationalVector& v) const {
  if (v.size() != cols_) throw PreconditionError("IntegerMatrix::apply: dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0) out[i] += Rational((*this)(i, j)) * v[j];
  return out;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("IntegerMatrix: product dimension mismatch");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return c;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

// Row/column operations on a dense matrix, optionally mirrored into the
// accumulated transforms and a set of right-hand sides.
class Eliminator {
 public:
  Eliminator(IntegerMatrix a, bool track_u, bool track_v, std::vector<RationalVector>* rhs)
      : a_(std::move(a)), rhs_(rhs) {
    if (track_u) u_ = IntegerMatrix::identity(a_.rows());
    if (track_v) v_ = IntegerMatrix::identity(a_.cols());
  }

  IntegerMatrix& a() { return a_; }
  IntegerMatrix& u() { return u_; }
  IntegerMatrix& v() { return v_; }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    swap_rows_of(a_, i, k);
    if (!u_.empty()) swap_rows_of(u_, i, k);
    if (rhs_)
      for (auto& b : *rhs_) std::swap(b[i], b[k]);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    swap_cols_of(a_, j, k);
    if (!v_.empty()) swap_cols_of(v_, j, k);
  }
  // row_i -= q * row_t
  void sub_row(std::size_t i, std::size_t t, const Integer& q) {
    sub_row_of(a_, i, t, q);
    if (!u_.empty()) sub_row_of(u_, i, t, q);
    if (rhs_)
      for (auto& b : *rhs_) b[i] -= Rational(q) * b[t];
  }
  // col_j -= q * col_t
  void sub_col(std::size_t j, std::size_t t, const Integer& q) {
    sub_col_of(a_, j, t, q);
    if (!v_.empty()) sub_col_of(v_, j, t, q);
  }
  void negate_row(std::size_t i) {
    negate_row_of(a_, i);
    if (!u_.empty()) negate_row_of(u_, i);
    if (rhs_)
      for (auto& b : *rhs_) b[i] = -b[i];
  }

 private:
  static void swap_rows_of(IntegerMatrix& m, std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_swap(m(i, j).get_mpz_t(), m(k, j).get_mpz_t());
  }
  static void swap_cols_of(IntegerMatrix& m, std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < m.rows(); ++i) mpz_swap(m(i, j).get_mpz_t(), m(i, k).get_mpz_t());
  }
  static void sub_row_of(IntegerMatrix& m, std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(t, j)) != 0) mpz_submul(m(i, j).get_mpz_t(), q.get_mpz_t(), m(t, j).get_mpz_t());
  }
  static void sub_col_of(IntegerMatrix& m, std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (sgn(m(i, t)) != 0) mpz_submul(m(i, j).get_mpz_t(), q.get_mpz_t(), m(i, t).get_mpz_t());
  }
  static void negate_row_of(IntegerMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_neg(m(i, j).get_mpz_t(), m(i, j).get_mpz_t());
  }

  IntegerMatrix a_;
  IntegerMatrix u_;
  IntegerMatrix v_;
  std::vector<RationalVector>* rhs_;
};

// Runs the Smith reduction in place. Returns the rank.
std::size_t smith_reduce(Eliminator& el) {
  IntegerMatrix& a = el.a();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t steps = std::min(m, n);
  Integer q;
  std::size_t t = 0;
  for (; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero absolute entry in the trailing block.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (sgn(a(i, j)) == 0) continue;
          if (pi == m || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
            if (mpz_cmpabs_ui(a(pi, pj).get_mpz_t(), 1) == 0) goto found;
          }
        }
    found:
      if (pi == m) return t;
      el.swap_rows(t, pi);
      el.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) el.sub_row(i, t, q);
        if (sgn(a(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        if (sgn(q) != 0) el.sub_col(j, t, q);
        if (sgn(a(t, j)) != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility: fold an offending row into row t and retry.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      el.sub_row(t, bad, Integer(-1));
    }
    if (sgn(a(t, t)) < 0) el.negate_row(t);
  }
  return t;
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  while (r < std::min(S.rows(), S.cols()) && S(r, r) != 0) ++r;
  return r;
}

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < rank(); ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition snf(const IntegerMatrix& m) {
  Eliminator el(m, true, true, nullptr);
  smith_reduce(el);
  return {el.a(), el.u(), el.v()};
}

SmithDecomposition snf_right(const IntegerMatrix& m) {
  Eliminator el(m, false, true, nullptr);
  smith_reduce(el);
  return {el.a(), IntegerMatrix(), el.v()};
}

std::vector<Integer> invariant_factors(const IntegerMatrix& m) {
  Eliminator el(m, false, false, nullptr);
  const std::size_t r = smith_reduce(el);
  std::vector<Integer> d;
  for (std::size_t i = 0; i < r; ++i) d.push_back(el.a()(i, i));
  return d;
}

HermiteDecomposition hnf(const IntegerMatrix& m) {
  IntegerMatrix h = m;
  IntegerMatrix u = IntegerMatrix::identity(m.cols());
  const std::size_t rows = h.rows();
  const std::size_t cols = h.cols();

  auto col_op = [&](std::size_t k, std::size_t j, const Integer& a11, const Integer& a12,
                    const Integer& a21, const Integer& a22) {
    // (col_k, col_j) <- (a11 col_k + a21 col_j, a12 col_k + a22 col_j)
    for (IntegerMatrix* mat : {&h, &u})
      for (std::size_t i = 0; i < mat->rows(); ++i) {
        Integer ck = (*mat)(i, k);
        Integer cj = (*mat)(i, j);
        (*mat)(i, k) = a11 * ck + a21 * cj;
        (*mat)(i, j) = a12 * ck + a22 * cj;
      }
  };
  auto sub_col = [&](std::size_t j, std::size_t k, const Integer& q) {
    for (IntegerMatrix* mat : {&h, &u})
      for (std::size_t i = 0; i < mat->rows(); ++i)
        mpz_submul((*mat)(i, j).get_mpz_t(), q.get_mpz_t(), (*mat)(i, k).get_mpz_t());
  };
  auto swap_col = [&](std::size_t j, std::size_t k) {
    for (IntegerMatrix* mat : {&h, &u})
      for (std::size_t i = 0; i < mat->rows(); ++i)
        mpz_swap((*mat)(i, j).get_mpz_t(), (*mat)(i, k).get_mpz_t());
  };

  std::size_t k = 0;
  Integer g, s, t, q;
  for (std::size_t i = 0; i < rows && k < cols; ++i) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      if (sgn(h(i, k)) == 0) {
        swap_col(k, j);
        continue;
      }
      if (mpz_divisible_p(h(i, j).get_mpz_t(), h(i, k).get_mpz_t())) {
        mpz_divexact(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
        sub_col(j, k, q);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(i, k).get_mpz_t(),
                 h(i, j).get_mpz_t());
      Integer ak = h(i, k) / g;
      Integer aj = h(i, j) / g;
      col_op(k, j, s, Integer(-aj), t, ak);
    }
    if (sgn(h(i, k)) == 0) continue;
    if (sgn(h(i, k)) < 0)
      for (IntegerMatrix* mat : {&h, &u})
        for (std::size_t r = 0; r < mat->rows(); ++r) mpz_neg((*mat)(r, k).get_mpz_t(), (*mat)(r, k).get_mpz_t());
    for (std::size_t j = 0; j < k; ++j) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
      if (sgn(q) != 0) sub_col(j, k, q);
    }
    ++k;
  }
  return {h, u};
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a(p, c)) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Integer f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) = a(i, j) * a(r, c) - f * a(r, j);
      Integer g = content(a.row(i));
      if (g > 1)
        for (std::size_t j = c; j < cols; ++j) mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), g.get_mpz_t());
    }
    ++r;
  }
  return r;
}

bool is_unimodular(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

std::optional<IntegerMatrix> unimodular_inverse(const IntegerMatrix& m) {
  if (!is_unimodular(m)) return std::nullopt;
  // U M V = S = diag(1, ..., 1) up to the sign fixed in snf, so M^{-1} = V U.
  SmithDecomposition d = snf(m);
  return d.V * d.U;
}

std::optional<IntegerSolution> solve_integer(const IntegerMatrix& m, const IntegerVector& b) {
  if (b.size() != m.rows()) throw PreconditionError("solve_integer: dimension mismatch");
  std::vector<RationalVector> rhs{to_rational(b)};
  Eliminator el(m, false, true, &rhs);
  const std::size_t r = smith_reduce(el);
  const RationalVector& c = rhs.front();
  IntegerVector y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Integer ci = c[i].get_num();  // rhs stays integral under integer row ops
    if (i < r) {
      if (!mpz_divisible_p(ci.get_mpz_t(), el.a()(i, i).get_mpz_t())) return std::nullopt;
      y[i] = ci / el.a()(i, i);
    } else if (ci != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution out;
  out.particular = el.v().apply(y);
  if (r < m.cols()) {
    std::vector<IntegerVector> kernel;
    for (std::size_t j = r; j < m.cols(); ++j) kernel.push_back(el.v().column(j));
    IntegerMatrix h = hnf(IntegerMatrix::from_columns(kernel, m.cols())).H;
    for (std::size_t j = 0; j < h.cols(); ++j) out.kernel_basis.push_back(h.column(j));
  }
  return out;
}

std::optional<SolutionSetMod1> solve_mod1(const IntegerMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw PreconditionError("solve_mod1: dimension mismatch");
  std::vector<RationalVector> rhs{reduce_mod1(b)};
  Eliminator el(m, false, true, &rhs);
  const std::size_t r = smith_reduce(el);
  const RationalVector& c = rhs.front();
  RationalVector y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < r) {
      y[i] = frac(c[i]) / Rational(el.a()(i, i));
    } else if (frac(c[i]) != 0) {
      return std::nullopt;
    }
  }
  SolutionSetMod1 out;
  out.particular = reduce_mod1(el.v().apply(y));
  for (std::size_t i = 0; i < r; ++i) {
    const Integer& d = el.a()(i, i);
    if (d == 1) continue;
    RationalVector g = to_rational(el.v().column(i));
    for (auto& x : g) x /= Rational(d);
    out.torsion.push_back({reduce_mod1(std::move(g)), d});
  }
  for (std::size_t j = r; j < m.cols(); ++j) out.free_directions.push_back(el.v().column(j));
  return out;
}

Rational frac(const Rational& x) {
  Rational q = x;  // gmpxx does not canonicalize Rational(num, den)
  q.canonicalize();
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

RationalVector reduce_mod1(RationalVector v) {
  for (auto& x : v) x = frac(x);
  return v;
}

bool is_zero_mod1(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return frac(x) == 0; });
}

RationalVector to_rational(const IntegerVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

Integer content(const IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntegerVector primitive(const IntegerVector& v) {
  Integer g = content(v);
  if (g == 0 || g == 1) return v;
  IntegerVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

Integer common_denominator(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

IntegerVector primitive_direction(const RationalVector& v) {
  Integer l = common_denominator(v);
  IntegerVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i] * Rational(l)).get_num();
  return primitive(out);
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto valid_int = [](const std::string& t) {
    std::size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') return std::nullopt;
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace multfree
