#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockcv/rational.hpp"
#include "blockcv/split.hpp"

namespace blockcv {

// A design: points 1..n_points and a collection of nonempty point subsets.
// Blocks are a multiset -- repeats are meaningful and must not be
// deduplicated.
struct Design {
  int n_points = 0;
  std::vector<std::vector<int>> blocks;
};

// Text format: first contentful line "n <n>", then one block per line as
// space-separated 1-based point labels; '#' starts a comment. Throws
// MalformedDesign on syntax errors.
Design design_from_stream(std::istream& in);
Design design_from_file(const std::string& path);

enum class ViolationKind {
  kBlockSize,         // two blocks of different sizes
  kKTooSmall,         // constant block size below 2 (or no blocks at all)
  kIncompleteness,    // n <= k: the design is not incomplete
  kRNotConstant,      // two points contained in a different number of blocks
  kLambdaNotConstant  // two pairs contained in a different number of blocks
};

const char* to_string(ViolationKind kind);

// One concrete witness of a failed balance condition. The subjects are the
// offending blocks (1-based positions), points, or point pairs, each with
// its observed count.
struct Violation {
  ViolationKind kind{};
  std::vector<int> subject_a;
  long long count_a = 0;
  std::vector<int> subject_b;
  long long count_b = 0;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Verdict of verify_bibd. k, r and lambda are set only when the respective
// quantity is constant across the design; when is_bibd is true both
// identities r(k-1) = lambda(n-1) and bk = nr hold exactly and `identities`
// carries the evaluated sides.
struct BibdReport {
  int n = 0;
  long long b = 0;
  std::optional<int> k;
  std::optional<long long> r;
  std::optional<long long> lambda;
  bool is_bibd = false;
  std::vector<Violation> violations;

  struct Identities {
    long long r_times_k_minus_1 = 0;
    long long lambda_times_n_minus_1 = 0;
    long long b_times_k = 0;
    long long n_times_r = 0;
    friend bool operator==(const Identities&, const Identities&) = default;
  };
  std::optional<Identities> identities;
};

// Checks, in order: constant block size with k >= 2; incompleteness n > k;
// constant per-point count r; constant per-pair count lambda; then both
// identities, exactly. Stops at the first failing stage and reports a
// concrete witness for it. Throws MalformedDesign for an empty block, a
// block with a repeated label, or a label outside 1..n.
BibdReport verify_bibd(const Design& d);

// The (r, lambda) forced by the identities given (n, k, b): r = bk/n and
// lambda = r(k-1)/(n-1), as exact reduced rationals.
std::pair<Rational, Rational> forced_params(long long n, long long k,
                                            long long b);

// The parameters an hv-block family would need as a block design:
// x = (n-2v)(2v+1)/n and y = 2v(n-2v)(2v+1)/(n(n-1)). `integral` is true iff
// both are integers -- a necessary condition for any BIBD.
struct HvCandidate {
  Rational x;
  Rational y;
  bool integral = false;
};
HvCandidate hv_bibd_candidate(int n, int v);

// The design whose blocks are the n-2v contiguous test blocks on {1..n}.
Design hv_design(int n, int v);

// The disproof certificate returned by not_bibd_certificate: three
// independent lines of evidence, each conclusive on its own when marked so.
struct Evidence1 {
  Rational x;
  Rational y;
  bool integral = false;
  bool conclusive = false;  // true iff x or y fails to be an integer
  friend bool operator==(const Evidence1&, const Evidence1&) = default;
};

struct Evidence2 {
  int sample_a = 0;  // sample with the smallest occurrence count
  long long r_a = 0;
  int sample_b = 0;  // first sample attaining the largest count
  long long r_b = 0;
  std::array<int, 2> pair_a{};  // pair with the smallest co-occurrence count
  long long lambda_a = 0;
  std::array<int, 2> pair_b{};  // first pair attaining the largest count
  long long lambda_b = 0;
  bool conclusive = false;
  friend bool operator==(const Evidence2&, const Evidence2&) = default;
};

// Same witnesses as Evidence2 but recounted by brute-force enumeration;
// matches_analytic records that the full brute-force profile equals the
// closed-form profile entrywise.
struct Evidence3 {
  Evidence2 counts;
  bool matches_analytic = false;
  friend bool operator==(const Evidence3&, const Evidence3&) = default;
};

struct NotBibdCertificate {
  int n = 0;
  int v = 0;
  // v == 0 degenerates to h-block: all blocks are singletons, so the design
  // fails the k >= 2 requirement outright and the three evidences do not
  // apply.
  bool degenerate = false;
  std::string summary;
  std::optional<Evidence1> evidence1;
  std::optional<Evidence2> evidence2;
  std::optional<Evidence3> evidence3;
};

// Produces the full certificate that the hv-block family on (n, v) is not a
// BIBD. Requires n >= 2v+2; v = 0 yields the degenerate k = 1 certificate.
NotBibdCertificate not_bibd_certificate(int n, int v);

}  // namespace blockcv
