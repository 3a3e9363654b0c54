// SPDX-License-Identifier: Apache-2.0

#include "vabset/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace vabset {

void check_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": dimension " << got << " does not match " << want;
    throw DimensionMismatch(os.str());
  }
}

IntVec zero_vec(std::size_t k) { return IntVec(k, Int(0)); }

IntVec unit_vec(std::size_t k, std::size_t i) {
  IntVec v = zero_vec(k);
  v[i] = 1;
  return v;
}

IntVec operator+(const IntVec& x, const IntVec& y) {
  check_dim(y.size(), x.size(), "vector addition");
  IntVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

IntVec operator-(const IntVec& x, const IntVec& y) {
  check_dim(y.size(), x.size(), "vector subtraction");
  IntVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

IntVec operator-(const IntVec& x) {
  IntVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
  return r;
}

IntVec scale(const Int& c, const IntVec& x) {
  IntVec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

Int dot(const IntVec& x, const IntVec& y) {
  check_dim(y.size(), x.size(), "dot product");
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool is_zero(const IntVec& x) {
  return std::all_of(x.begin(), x.end(), [](const Int& c) { return c == 0; });
}

Int gcd_of(const IntVec& x) {
  Int g = 0;
  for (const Int& c : x) g = gcd(g, c);
  return g;
}

std::string to_string(const IntVec& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += x[i].get_str();
  }
  return s + "]";
}

IntMat::IntMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check_dim(rows[i].size(), cols, "matrix row");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMat IntMat::from_columns(const std::vector<IntVec>& cols, std::size_t rows) {
  IntMat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    check_dim(cols[j].size(), rows, "matrix column");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVec IntMat::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVec IntMat::column(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& other) const {
  check_dim(other.rows_, cols_, "matrix product");
  IntMat r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const Int& a = (*this)(i, l);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(l, j);
    }
  return r;
}

IntVec IntMat::operator*(const IntVec& v) const {
  check_dim(v.size(), cols_, "matrix-vector product");
  IntVec r = zero_vec(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

IntVec left_multiply(const IntVec& x, const IntMat& m) {
  check_dim(x.size(), m.rows(), "row-vector product");
  IntVec r = zero_vec(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += x[i] * m(i, j);
  }
  return r;
}

WeightFn::WeightFn(std::vector<Int> weights) : weights_(std::move(weights)) {
  for (const Int& w : weights_)
    if (w < 1) throw PreconditionViolation("weights must be positive");
}

WeightFn WeightFn::unit(std::size_t k) {
  return WeightFn(std::vector<Int>(k, Int(1)));
}

Int WeightFn::min_weight() const {
  if (weights_.empty()) return 1;
  return *std::min_element(weights_.begin(), weights_.end());
}

Int weighted_norm(const WeightFn& w, const IntVec& z) {
  check_dim(z.size(), w.dim(), "weighted norm");
  Int n = 0;
  for (std::size_t i = 0; i < z.size(); ++i) n += abs(z[i]) * w[i];
  return n;
}

AffineMap::AffineMap(IntMat matrix, IntVec offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  check_dim(offset_.size(), matrix_.rows(), "affine offset");
}

AffineMap AffineMap::identity(std::size_t n) {
  return AffineMap(IntMat::identity(n), zero_vec(n));
}

AffineMap AffineMap::translation(IntVec q) {
  const std::size_t n = q.size();
  return AffineMap(IntMat::identity(n), std::move(q));
}

IntVec affine_apply(const AffineMap& a, const IntVec& z) {
  check_dim(z.size(), a.source_dim(), "affine_apply");
  return a.matrix() * z + a.offset();
}

AffineMap affine_compose(const AffineMap& outer, const AffineMap& inner) {
  check_dim(inner.target_dim(), outer.source_dim(), "affine_compose");
  return AffineMap(outer.matrix() * inner.matrix(),
                   outer.matrix() * inner.offset() + outer.offset());
}

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += c * row[src]
void add_row(IntMat& m, std::size_t dst, std::size_t src, const Int& c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += c * m(src, j);
}

void add_col(IntMat& m, std::size_t dst, std::size_t src, const Int& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += c * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{IntMat::identity(m), a, IntMat::identity(n), 0};
  IntMat& d = s.d;

  const std::size_t steps = std::min(m, n);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block, first in row-major
      // order on ties.
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          Int mag = abs(d(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (!found) break;
      swap_rows(d, t, pi);
      swap_rows(s.u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(s.v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);  // truncating
        if (q != 0) {
          add_row(d, i, t, -q);
          add_row(s.u, i, t, -q);
        }
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        if (q != 0) {
          add_col(d, j, t, -q);
          add_col(s.v, j, t, -q);
        }
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_t | every remaining entry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, Int(1));
            add_row(s.u, t, i, Int(1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d(t, t) == 0) break;
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) s.u(t, j) = -s.u(t, j);
    }
  }
  s.rank = t;
  return s;
}

std::size_t integer_rank(const IntMat& a) { return smith_normal_form(a).rank; }

std::optional<DiophantineSolution> snf_solve(const IntMat& a, const IntVec& b) {
  check_dim(b.size(), a.rows(), "snf_solve right-hand side");
  const SmithForm s = smith_normal_form(a);
  const IntVec c = s.u * b;
  IntVec y = zero_vec(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.diag(i) != 0) return std::nullopt;
      y[i] = c[i] / s.diag(i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  DiophantineSolution sol;
  sol.particular = s.v * y;
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    sol.kernel_basis.push_back(s.v.column(j));
  return sol;
}

std::vector<IntVec> lattice_basis(const std::vector<IntVec>& generators,
                                  std::size_t k) {
  if (generators.empty()) return {};
  const IntMat g = IntMat::from_columns(generators, k);
  const SmithForm s = smith_normal_form(g);
  // G V = U^{-1} D: the first `rank` columns of G V span the same lattice.
  const IntMat gv = g * s.v;
  std::vector<IntVec> basis;
  for (std::size_t j = 0; j < s.rank; ++j) basis.push_back(gv.column(j));
  return basis;
}

bool in_lattice(const std::vector<IntVec>& basis, const IntVec& v) {
  if (basis.empty()) return is_zero(v);
  return snf_solve(IntMat::from_columns(basis, v.size()), v).has_value();
}

std::optional<std::vector<Rat>> rational_coordinates(const IntMat& m,
                                                     const IntVec& v) {
  check_dim(v.size(), m.rows(), "rational_coordinates");
  const SmithForm s = smith_normal_form(m);
  const IntVec c = s.u * v;
  std::vector<Rat> y(m.cols(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < s.rank) {
      y[i] = Rat(c[i], s.diag(i));
      y[i].canonicalize();
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  if (s.rank < m.cols()) {
    throw PreconditionViolation("rational_coordinates needs full column rank");
  }
  std::vector<Rat> x(m.cols(), Rat(0));
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x[i] += Rat(s.v(i, j)) * y[j];
  return x;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace vabset
