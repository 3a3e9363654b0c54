// SPDX-License-Identifier: Apache-2.0
//
// Polyhedral subsets of Z^k: finite unions of finite intersections of
// elementary regions u.z = a, u.z = a (mod b) and u.z > a.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vabset/lattice.hpp"

namespace vabset {

enum class RegionKind { Equation, Congruence, Inequality };

struct ElementaryRegion {
  RegionKind kind = RegionKind::Equation;
  IntVec u;
  Int a;
  Int b = 1;  // modulus, Congruence only

  static ElementaryRegion equation(IntVec u, Int a);
  static ElementaryRegion congruence(IntVec u, Int a, Int b);
  /// u.z > a
  static ElementaryRegion greater(IntVec u, Int a);
  /// u.z >= a, stored as u.z > a - 1
  static ElementaryRegion at_least(IntVec u, const Int& a);

  std::size_t dim() const { return u.size(); }
  bool contains(const IntVec& z) const;

  bool operator<(const ElementaryRegion& other) const;
  bool operator==(const ElementaryRegion& other) const = default;
};

/// Conjunction of regions; no regions means all of Z^k.
struct BasicPolyhedral {
  std::vector<ElementaryRegion> regions;

  bool contains(const IntVec& z) const;
  bool operator==(const BasicPolyhedral& other) const = default;
};

class PolyhedralSet {
 public:
  explicit PolyhedralSet(std::size_t dim, std::vector<BasicPolyhedral> basics = {});

  static PolyhedralSet empty(std::size_t dim) { return PolyhedralSet(dim); }
  static PolyhedralSet full(std::size_t dim);
  static PolyhedralSet of(std::size_t dim, std::vector<ElementaryRegion> regions);

  std::size_t dim() const { return dim_; }
  const std::vector<BasicPolyhedral>& basics() const { return basics_; }
  bool is_syntactically_empty() const { return basics_.empty(); }

  bool contains(const IntVec& z) const;

  bool operator==(const PolyhedralSet& other) const = default;

 private:
  std::size_t dim_;
  std::vector<BasicPolyhedral> basics_;
};

bool poly_contains(const PolyhedralSet& p, const IntVec& z);

enum class PolyOp { Union, Intersect, Complement, Product };

/// Syntactic Boolean algebra. Q is required for every op except Complement.
PolyhedralSet poly_combine(PolyOp op, const PolyhedralSet& p,
                           const std::optional<PolyhedralSet>& q = std::nullopt);

PolyhedralSet poly_union(const PolyhedralSet& p, const PolyhedralSet& q);
PolyhedralSet poly_intersect(const PolyhedralSet& p, const PolyhedralSet& q);
PolyhedralSet poly_complement(const PolyhedralSet& p);
PolyhedralSet poly_product(const PolyhedralSet& p, const PolyhedralSet& q);

/// {z : A(z) in Q}
PolyhedralSet poly_preimage(const AffineMap& a, const PolyhedralSet& q);

/// All points of P in the box lo <= z <= hi, in lexicographic order.
std::vector<IntVec> poly_enumerate_box(const PolyhedralSet& p, const IntVec& lo,
                                       const IntVec& hi);

/// Calls f on every point of the box lo <= z <= hi in lexicographic order.
template <class F>
void for_each_box_point(const IntVec& lo, const IntVec& hi, F&& f) {
  check_dim(hi.size(), lo.size(), "box bounds");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return;
  IntVec z = lo;
  for (;;) {
    f(static_cast<const IntVec&>(z));
    std::size_t i = z.size();
    while (i > 0) {
      --i;
      if (z[i] < hi[i]) {
        z[i] += 1;
        break;
      }
      z[i] = lo[i];
      if (i == 0) return;
    }
    if (z.empty()) return;
  }
}

/// Upper bound on the number of basics an intersection may produce before
/// the operation gives up.
inline constexpr std::size_t kMaxBasics = 1u << 16;

/// Normalises every region and drops basics with a detectable contradiction.
/// Returns nullopt when the basic is certainly empty.
std::optional<BasicPolyhedral> simplify_basic(const BasicPolyhedral& basic);

}  // namespace vabset
