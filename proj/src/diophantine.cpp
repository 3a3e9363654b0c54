// SPDX-License-Identifier: Apache-2.0

#include "vabset/diophantine.hpp"

#include <set>
#include <utility>

namespace vabset {

namespace {

bool dominates(const IntVec& x, const IntVec& m) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < m[i]) return false;
  return true;
}

bool dominated_by_any(const IntVec& x, const std::vector<IntVec>& found) {
  for (const IntVec& m : found)
    if (dominates(x, m)) return true;
  return false;
}

}  // namespace

NonnegSolutions nonneg_solve(const IntMat& a, const IntVec& b,
                             const NonnegOptions& opts) {
  check_dim(b.size(), a.rows(), "nonneg_solve right-hand side");
  const std::size_t n = a.cols();
  // Homogenised system [A | -b] with the extra unknown bounded by 1.
  const std::size_t ext = n;
  const std::size_t width = n + 1;
  std::vector<IntVec> image(width);
  for (std::size_t j = 0; j < n; ++j) image[j] = a.column(j);
  image[ext] = -b;

  NonnegSolutions out;
  std::vector<IntVec> found;  // all solutions so far, for the minimality test

  // Candidate -> A' candidate.
  std::set<std::pair<IntVec, IntVec>> frontier;
  for (std::size_t j = 0; j < width; ++j) {
    if (j != ext && !opts.homogeneous) continue;
    IntVec x = zero_vec(width);
    x[j] = 1;
    frontier.emplace(std::move(x), image[j]);
  }

  std::size_t processed = 0;
  while (!frontier.empty()) {
    std::vector<std::pair<IntVec, IntVec>> pending;
    for (const auto& [x, ax] : frontier) {
      if (is_zero(ax)) {
        found.push_back(x);
        IntVec sol(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        if (x[ext] == 1) {
          out.minimal.push_back(std::move(sol));
          if (opts.first_only) return out;
        } else {
          out.hilbert_basis.push_back(std::move(sol));
        }
      } else {
        pending.emplace_back(x, ax);
      }
    }
    std::set<std::pair<IntVec, IntVec>> next;
    for (const auto& [x, ax] : pending) {
      for (std::size_t j = 0; j < width; ++j) {
        if (j == ext && x[ext] == 1) continue;
        if (!opts.homogeneous && j != ext && x[ext] == 0) continue;
        if (dot(ax, image[j]) >= 0) continue;
        IntVec y = x;
        y[j] += 1;
        if (dominated_by_any(y, found)) continue;
        next.emplace(std::move(y), ax + image[j]);
        if (++processed > opts.candidate_limit)
          throw Error("nonneg_solve: candidate limit exceeded");
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool monoid_contains(const std::vector<IntVec>& generators, const IntVec& v) {
  if (is_zero(v)) return true;
  if (generators.empty()) return false;
  NonnegOptions opts;
  opts.first_only = true;
  const IntMat a = IntMat::from_columns(generators, v.size());
  return !nonneg_solve(a, v, opts).minimal.empty();
}

}  // namespace vabset
