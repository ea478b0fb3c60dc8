#include "blockcv/bibd.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "blockcv/occurrence.hpp"

namespace blockcv {

namespace {

std::string block_label(std::size_t pos) {
  return "block " + std::to_string(pos + 1);
}

void check_design(const Design& d) {
  if (d.n_points < 1) {
    throw MalformedDesign("design needs at least one point, got n = " +
                          std::to_string(d.n_points));
  }
  std::vector<int> sorted;
  for (std::size_t pos = 0; pos < d.blocks.size(); ++pos) {
    const auto& block = d.blocks[pos];
    if (block.empty()) {
      throw MalformedDesign(block_label(pos) + " is empty");
    }
    for (int label : block) {
      if (label < 1 || label > d.n_points) {
        throw MalformedDesign(block_label(pos) + " contains point " +
                              std::to_string(label) + " outside 1.." +
                              std::to_string(d.n_points));
      }
    }
    sorted = block;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw MalformedDesign(block_label(pos) + " repeats a point label");
    }
  }
}

Violation make_violation(ViolationKind kind, std::vector<int> subject_a,
                         long long count_a, std::vector<int> subject_b,
                         long long count_b, std::string message) {
  Violation v;
  v.kind = kind;
  v.subject_a = std::move(subject_a);
  v.count_a = count_a;
  v.subject_b = std::move(subject_b);
  v.count_b = count_b;
  v.message = std::move(message);
  return v;
}

// Witness scan shared by the analytic and brute-force evidences: smallest
// index (or lexicographically first pair) attaining the extreme counts.
Evidence2 occurrence_witnesses(const OccurrenceProfile& p) {
  Evidence2 e;
  const int n = p.n;

  int amin = 1;
  int amax = 1;
  for (int i = 2; i <= n; ++i) {
    if (p.r_at(i) < p.r_at(amin)) amin = i;
    if (p.r_at(i) > p.r_at(amax)) amax = i;
  }
  e.sample_a = amin;
  e.r_a = p.r_at(amin);
  e.sample_b = amax;
  e.r_b = p.r_at(amax);

  std::array<int, 2> pmin{1, 2};
  std::array<int, 2> pmax{1, 2};
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (p.lambda_at(i, j) < p.lambda_at(pmin[0], pmin[1])) pmin = {i, j};
      if (p.lambda_at(i, j) > p.lambda_at(pmax[0], pmax[1])) pmax = {i, j};
    }
  }
  e.pair_a = pmin;
  e.lambda_a = p.lambda_at(pmin[0], pmin[1]);
  e.pair_b = pmax;
  e.lambda_b = p.lambda_at(pmax[0], pmax[1]);

  e.conclusive = (e.r_a != e.r_b) || (e.lambda_a != e.lambda_b);
  return e;
}

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBlockSize:
      return "block_size";
    case ViolationKind::kKTooSmall:
      return "k_too_small";
    case ViolationKind::kIncompleteness:
      return "incompleteness";
    case ViolationKind::kRNotConstant:
      return "r_not_constant";
    case ViolationKind::kLambdaNotConstant:
      return "lambda_not_constant";
  }
  return "unknown";
}

Design design_from_stream(std::istream& in) {
  Design d;
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto pos = line.find('#'); pos != std::string::npos) {
      line.erase(pos);
    }
    std::istringstream ss(line);
    if (!have_header) {
      std::string tag;
      if (!(ss >> tag)) continue;  // blank or comment-only line
      int n = 0;
      if (tag != "n" || !(ss >> n)) {
        throw MalformedDesign("line " + std::to_string(lineno) +
                              ": expected header 'n <points>'");
      }
      if (n < 1) {
        throw MalformedDesign("line " + std::to_string(lineno) +
                              ": point count must be positive");
      }
      std::string extra;
      if (ss >> extra) {
        throw MalformedDesign("line " + std::to_string(lineno) +
                              ": unexpected token '" + extra +
                              "' after header");
      }
      d.n_points = n;
      have_header = true;
      continue;
    }
    std::vector<int> block;
    int label = 0;
    while (ss >> label) block.push_back(label);
    if (!ss.eof()) {
      throw MalformedDesign("line " + std::to_string(lineno) +
                            ": invalid point label");
    }
    if (!block.empty()) d.blocks.push_back(std::move(block));
  }
  if (!have_header) {
    throw MalformedDesign("missing header line 'n <points>'");
  }
  check_design(d);
  return d;
}

Design design_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open design file: " + path);
  return design_from_stream(in);
}

BibdReport verify_bibd(const Design& d) {
  check_design(d);

  BibdReport report;
  const int n = d.n_points;
  report.n = n;
  report.b = static_cast<long long>(d.blocks.size());

  // Stage 1: block sizes constant and at least 2.
  if (d.blocks.empty()) {
    report.violations.push_back(make_violation(
        ViolationKind::kKTooSmall, {}, 0, {}, 0,
        "design has no blocks, so no block size k >= 2 exists"));
    return report;
  }
  const std::size_t k0 = d.blocks.front().size();
  for (std::size_t pos = 1; pos < d.blocks.size(); ++pos) {
    if (d.blocks[pos].size() != k0) {
      report.violations.push_back(make_violation(
          ViolationKind::kBlockSize, {1}, static_cast<long long>(k0),
          {static_cast<int>(pos + 1)},
          static_cast<long long>(d.blocks[pos].size()),
          "block 1 has " + std::to_string(k0) + " points but " +
              block_label(pos) + " has " +
              std::to_string(d.blocks[pos].size())));
      return report;
    }
  }
  const int k = static_cast<int>(k0);
  report.k = k;
  if (k < 2) {
    report.violations.push_back(make_violation(
        ViolationKind::kKTooSmall, {1}, k, {}, 0,
        "block size k = " + std::to_string(k) + " violates k >= 2"));
    return report;
  }

  // Stage 2: incompleteness n > k.
  if (n <= k) {
    report.violations.push_back(make_violation(
        ViolationKind::kIncompleteness, {}, n, {}, k,
        "n = " + std::to_string(n) + " <= k = " + std::to_string(k) +
            ": blocks cover the whole point set"));
    return report;
  }

  // Stage 3: every point in the same number of blocks.
  std::vector<long long> point_count(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& block : d.blocks) {
    for (int label : block) ++point_count[static_cast<std::size_t>(label)];
  }
  for (int i = 2; i <= n; ++i) {
    if (point_count[static_cast<std::size_t>(i)] != point_count[1]) {
      report.violations.push_back(make_violation(
          ViolationKind::kRNotConstant, {1}, point_count[1], {i},
          point_count[static_cast<std::size_t>(i)],
          "point 1 occurs in " + std::to_string(point_count[1]) +
              " blocks but point " + std::to_string(i) + " occurs in " +
              std::to_string(point_count[static_cast<std::size_t>(i)])));
      return report;
    }
  }
  const long long r = point_count[1];
  report.r = r;

  // Stage 4: every pair in the same number of blocks. Explicit enumeration
  // over blocks, O(b k^2); pair counts in a dense n x n triangle.
  std::vector<long long> pair_count(static_cast<std::size_t>(n) * n, 0);
  const auto pair_index = [n](int a, int b) {
    return static_cast<std::size_t>(a - 1) * n + (b - 1);
  };
  for (const auto& block : d.blocks) {
    for (std::size_t s = 0; s < block.size(); ++s) {
      for (std::size_t t = s + 1; t < block.size(); ++t) {
        const int a = std::min(block[s], block[t]);
        const int b = std::max(block[s], block[t]);
        ++pair_count[pair_index(a, b)];
      }
    }
  }
  const long long lambda = pair_count[pair_index(1, 2)];
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (pair_count[pair_index(i, j)] != lambda) {
        report.violations.push_back(make_violation(
            ViolationKind::kLambdaNotConstant, {1, 2}, lambda, {i, j},
            pair_count[pair_index(i, j)],
            "pair (1,2) occurs in " + std::to_string(lambda) +
                " blocks but pair (" + std::to_string(i) + "," +
                std::to_string(j) + ") occurs in " +
                std::to_string(pair_count[pair_index(i, j)])));
        return report;
      }
    }
  }
  report.lambda = lambda;

  // Both identities are forced once everything above is constant; evaluate
  // them exactly and record the sides.
  BibdReport::Identities ids;
  ids.r_times_k_minus_1 = r * (k - 1);
  ids.lambda_times_n_minus_1 = lambda * (n - 1);
  ids.b_times_k = report.b * k;
  ids.n_times_r = static_cast<long long>(n) * r;
  report.identities = ids;
  report.is_bibd = (ids.r_times_k_minus_1 == ids.lambda_times_n_minus_1) &&
                   (ids.b_times_k == ids.n_times_r);
  return report;
}

std::pair<Rational, Rational> forced_params(long long n, long long k,
                                            long long b) {
  if (!(n > k && k >= 2 && b >= 1)) {
    throw BadParameters("forced_params requires n > k >= 2 and b >= 1, got n=" +
                        std::to_string(n) + " k=" + std::to_string(k) +
                        " b=" + std::to_string(b));
  }
  const Rational r = Rational(b) * Rational(k) / Rational(n);
  const Rational lambda = r * Rational(k - 1, n - 1);
  return {r, lambda};
}

HvCandidate hv_bibd_candidate(int n, int v) {
  if (v < 1) {
    throw BadParameters("hv candidate requires v >= 1, got v = " +
                        std::to_string(v));
  }
  if (n < 2 * v + 2) {
    throw BadParameters("hv candidate requires n >= 2v+2, got n = " +
                        std::to_string(n) + ", v = " + std::to_string(v));
  }
  // As a design the family has k = 2v+1 points per block and b = n-2v
  // blocks, so the identities force these two values.
  HvCandidate c;
  const long long nn = n;
  const long long vv = v;
  c.x = Rational((nn - 2 * vv) * (2 * vv + 1), nn);
  c.y = c.x * Rational(2 * vv, nn - 1);
  c.integral = c.x.is_integer() && c.y.is_integer();
  return c;
}

Design hv_design(int n, int v) {
  Design d;
  d.n_points = n;
  for (const Split& s : SplitRange({n, 0, v})) {
    d.blocks.push_back(s.test_indices());
  }
  return d;
}

NotBibdCertificate not_bibd_certificate(int n, int v) {
  if (v < 0) {
    throw BadParameters("v must be non-negative, got " + std::to_string(v));
  }
  if (n < 2 * v + 2) {
    throw BadParameters("certificate requires n >= 2v+2, got n = " +
                        std::to_string(n) + ", v = " + std::to_string(v));
  }

  NotBibdCertificate cert;
  cert.n = n;
  cert.v = v;

  if (v == 0) {
    cert.degenerate = true;
    cert.summary =
        "v = 0 degenerates to h-block: every test block is a singleton, so "
        "k = 1 fails the BIBD requirement n > k >= 2";
    return cert;
  }

  cert.evidence1 = [&] {
    const HvCandidate c = hv_bibd_candidate(n, v);
    Evidence1 e;
    e.x = c.x;
    e.y = c.y;
    e.integral = c.integral;
    e.conclusive = !c.integral;
    return e;
  }();

  cert.evidence2 = occurrence_witnesses(occurrence_matrix(n, v));

  const OccurrenceProfile brute = count_bruteforce({n, 0, v});
  Evidence3 e3;
  e3.counts = occurrence_witnesses(brute);
  e3.matches_analytic = (brute == occurrence_matrix(n, v));
  cert.evidence3 = e3;

  if (!cert.evidence1->conclusive && !cert.evidence2->conclusive &&
      !cert.evidence3->counts.conclusive) {
    throw Error("internal: no conclusive evidence for (n=" +
                std::to_string(n) + ", v=" + std::to_string(v) + ")");
  }

  std::ostringstream summary;
  summary << "hv-block on (n=" << n << ", v=" << v << ") is not a BIBD: ";
  if (cert.evidence2->conclusive && cert.evidence2->r_a != cert.evidence2->r_b) {
    summary << "sample occurrence is non-constant (r[" << cert.evidence2->sample_a
            << "] = " << cert.evidence2->r_a << " but r["
            << cert.evidence2->sample_b << "] = " << cert.evidence2->r_b << ")";
  } else if (cert.evidence1->conclusive) {
    summary << "the forced parameters (" << cert.evidence1->x.str() << ", "
            << cert.evidence1->y.str() << ") are not integers";
  } else {
    summary << "pair occurrence is non-constant";
  }
  cert.summary = summary.str();
  return cert;
}

}  // namespace blockcv
