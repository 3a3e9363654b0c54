// SPDX-License-Identifier: Apache-2.0
//
// Non-negative integer solutions of linear Diophantine systems A x = b,
// by the Contejean-Devie completion procedure. The solution set is
//   union over minimal solutions s of (s + H*)
// where H is the Hilbert basis of {x >= 0 : A x = 0}.

#pragma once

#include <cstddef>
#include <vector>

#include "vabset/lattice.hpp"

namespace vabset {

struct NonnegSolutions {
  std::vector<IntVec> minimal;        // minimal solutions of A x = b
  std::vector<IntVec> hilbert_basis;  // minimal nonzero solutions of A x = 0
};

struct NonnegOptions {
  bool first_only = false;  // stop at the first solution of A x = b
  // Also collect the Hilbert basis. Without it the search has nothing to
  // prune with when the homogeneous system has nonzero solutions, and it
  // need not terminate.
  bool homogeneous = true;
  std::size_t candidate_limit = 4'000'000;
};

NonnegSolutions nonneg_solve(const IntMat& a, const IntVec& b,
                             const NonnegOptions& opts = {});

/// Is v a non-negative integer combination of the generators?
bool monoid_contains(const std::vector<IntVec>& generators, const IntVec& v);

}  // namespace vabset
