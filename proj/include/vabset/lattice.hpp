// SPDX-License-Identifier: Apache-2.0
//
// Exact integer vectors, matrices, weight functions and affine maps over Z^k,
// plus Smith normal form based linear Diophantine solving.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vabset {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension, arity or group.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was handed input outside its documented domain.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

void check_dim(std::size_t got, std::size_t want, const char* what);

IntVec zero_vec(std::size_t k);
IntVec unit_vec(std::size_t k, std::size_t i);
IntVec operator+(const IntVec& x, const IntVec& y);
IntVec operator-(const IntVec& x, const IntVec& y);
IntVec operator-(const IntVec& x);
IntVec scale(const Int& c, const IntVec& x);
Int dot(const IntVec& x, const IntVec& y);
bool is_zero(const IntVec& x);
Int gcd_of(const IntVec& x);
std::string to_string(const IntVec& x);

/// Dense row-major integer matrix.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols);

  static IntMat identity(std::size_t n);
  static IntMat from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  static IntMat from_columns(const std::vector<IntVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const;
  IntVec column(std::size_t j) const;
  IntMat transpose() const;

  IntMat operator*(const IntMat& other) const;
  IntVec operator*(const IntVec& v) const;
  bool operator==(const IntMat& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Row-vector times matrix: returns x^T M.
IntVec left_multiply(const IntVec& x, const IntMat& m);

/// Positive weights ||e_i|| on the standard basis, defining the weighted l1
/// norm sum |z_i| * w_i.
class WeightFn {
 public:
  WeightFn() = default;
  explicit WeightFn(std::vector<Int> weights);
  static WeightFn unit(std::size_t k);

  std::size_t dim() const { return weights_.size(); }
  const std::vector<Int>& weights() const { return weights_; }
  const Int& operator[](std::size_t i) const { return weights_[i]; }
  Int min_weight() const;

 private:
  std::vector<Int> weights_;
};

Int weighted_norm(const WeightFn& w, const IntVec& z);

/// Integer affine map z -> M z + q from Z^source to Z^target. The matrix is
/// stored target x source so that it acts on column vectors.
class AffineMap {
 public:
  AffineMap(IntMat matrix, IntVec offset);

  static AffineMap identity(std::size_t n);
  static AffineMap translation(IntVec q);

  std::size_t source_dim() const { return matrix_.cols(); }
  std::size_t target_dim() const { return matrix_.rows(); }
  const IntMat& matrix() const { return matrix_; }
  const IntVec& offset() const { return offset_; }

  bool operator==(const AffineMap& other) const = default;

 private:
  IntMat matrix_;
  IntVec offset_;
};

IntVec affine_apply(const AffineMap& a, const IntVec& z);

/// Returns the map applying `inner` first and then `outer`.
AffineMap affine_compose(const AffineMap& outer, const AffineMap& inner);

/// U * A * V = D with U, V unimodular and D diagonal, d_0 | d_1 | ... and
/// d_i > 0 for i < rank.
struct SmithForm {
  IntMat u;
  IntMat d;
  IntMat v;
  std::size_t rank = 0;

  Int diag(std::size_t i) const { return d(i, i); }
};

SmithForm smith_normal_form(const IntMat& a);

std::size_t integer_rank(const IntMat& a);

struct DiophantineSolution {
  IntVec particular;
  std::vector<IntVec> kernel_basis;
};

/// Solves A x = b over the integers. Returns nullopt when no integer solution
/// exists. The kernel basis is a lattice basis of {x : A x = 0}.
std::optional<DiophantineSolution> snf_solve(const IntMat& a, const IntVec& b);

/// A lattice basis for the subgroup of Z^k generated by `generators`.
std::vector<IntVec> lattice_basis(const std::vector<IntVec>& generators,
                                  std::size_t k);

/// Is v an integer combination of the basis vectors?
bool in_lattice(const std::vector<IntVec>& basis, const IntVec& v);

/// Unique rational coordinates of v in the column space of the full column
/// rank matrix m, or nullopt if v is outside its rational span.
std::optional<std::vector<Rat>> rational_coordinates(const IntMat& m,
                                                     const IntVec& v);

Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

}  // namespace vabset
