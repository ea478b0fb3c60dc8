#pragma once

#include <vector>

#include "blockcv/split.hpp"

namespace blockcv {

// Per-sample and per-pair occurrence counts over the n-2v test blocks of an
// hv-block family. Storage is a dense n x n matrix (O(n^2) memory), with the
// convention that the diagonal holds the single-sample counts:
//   lambda_at(i, j) for i != j  -- number of test blocks containing both,
//   lambda_at(i, i) == r_at(i)  -- number of test blocks containing i.
struct OccurrenceProfile {
  int n = 0;
  int v = 0;
  std::vector<int> r;    // length n, sample i at r[i-1]
  std::vector<int> lam;  // n*n row-major, (i,j) at lam[(i-1)*n + (j-1)]

  int r_at(int i) const;
  int lambda_at(int i, int j) const;

  friend bool operator==(const OccurrenceProfile&, const OccurrenceProfile&) =
      default;
};

// Exact counts by naive enumeration of every test block. This is the
// authoritative oracle for the closed forms below. The gap width h plays no
// role in which samples share a test block, so cfg.h is accepted and ignored.
// Time O((n-2v)(2v+1)^2).
OccurrenceProfile count_bruteforce(const SplitConfig& cfg);

// Closed form for the number of test blocks containing sample i:
// min(n-v, i+v) - max(v+1, i-v) + 1. Rises from 1 at the boundary to the
// plateau min(2v+1, n-2v), then descends symmetrically.
int r_analytic(int n, int v, int i);

// Closed form for the number of test blocks containing both i and j (i != j;
// either argument order). Zero whenever |i-j| > 2v.
int lambda_analytic(int n, int v, int i, int j);

// Full profile via the closed forms; equals count_bruteforce entrywise.
OccurrenceProfile occurrence_matrix(int n, int v);

}  // namespace blockcv
