// SPDX-License-Identifier: Apache-2.0
//
// Linear sets a + B* and finite unions of them (semilinear sets) in Z^k, and
// the two-way conversion with polyhedral sets.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vabset/lattice.hpp"
#include "vabset/polyhedral.hpp"

namespace vabset {

struct LinearSet {
  IntVec offset;
  std::vector<IntVec> periods;  // nonzero

  LinearSet() = default;
  LinearSet(IntVec offset, std::vector<IntVec> periods);

  std::size_t dim() const { return offset.size(); }
  bool operator==(const LinearSet& other) const = default;
  bool operator<(const LinearSet& other) const;
};

class SemilinearSet {
 public:
  explicit SemilinearSet(std::size_t dim, std::vector<LinearSet> components = {});

  static SemilinearSet empty(std::size_t dim) { return SemilinearSet(dim); }
  /// 0 + {+-e_1, ..., +-e_k}*
  static SemilinearSet full(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<LinearSet>& components() const { return components_; }
  bool is_empty() const { return components_.empty(); }

  bool operator==(const SemilinearSet& other) const = default;

 private:
  std::size_t dim_;
  std::vector<LinearSet> components_;
};

/// Orthant Q_I: coordinate i is >= 0 when nonneg[i], else < 0.
struct OrthantIndex {
  std::vector<bool> nonneg;

  bool contains(const IntVec& z) const;
  PolyhedralSet region() const;
  bool operator==(const OrthantIndex& other) const = default;
};

/// Exact membership, through the polyhedral representation.
bool sl_contains(const SemilinearSet& s, const IntVec& z);

SemilinearSet sl_affine_image(const AffineMap& a, const SemilinearSet& s);

/// Rewrites a + B* as a union of linear sets with linearly independent
/// periods drawn from B.
SemilinearSet sl_decompose_linindep(const LinearSet& l);

PolyhedralSet sl_to_polyhedral(const SemilinearSet& s);
SemilinearSet poly_to_semilinear(const PolyhedralSet& p);

SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet sl_intersect(const SemilinearSet& a, const SemilinearSet& b);

/// Disjoint monotone pieces, one per nonempty orthant, in the order
/// Q_{1..k} (all nonnegative) first, then by descending bit mask.
std::vector<std::pair<OrthantIndex, SemilinearSet>> sl_monotone_decompose(
    const SemilinearSet& s);

/// {z : u.z > a} as a single linear set, following the half-space construction
/// with an integral basis change sending u to a multiple of e_1.
SemilinearSet halfspace_to_semilinear(const IntVec& u, const Int& a);

/// Conjunction of regions: parametrise the equation/congruence lattice, split
/// the parameter space into orthants and cover each pointed piece by
/// simplicial cones over its recession rays.
SemilinearSet basic_to_semilinear(const BasicPolyhedral& basic, std::size_t dim);

/// Integer points p = sum f_i m_i with f in [0,1)^k, for the rows m_i of a
/// nonsingular square matrix.
std::vector<IntVec> parallelepiped_points(const IntMat& rows);

/// Drops redundant periods and components contained in another component.
SemilinearSet sl_simplify(const SemilinearSet& s);

bool periods_independent(const std::vector<IntVec>& periods, std::size_t dim);

/// Index of a linear set's orthant, or nullopt when it is not monotone.
std::optional<OrthantIndex> monotone_orthant(const LinearSet& l);

}  // namespace vabset
