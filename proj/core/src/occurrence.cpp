#include "blockcv/occurrence.hpp"

#include <algorithm>

namespace blockcv {

namespace {

void check_sample_index(int n, int i) {
  if (i < 1 || i > n) throw IndexOutOfRange(i, n);
}

void check_counting_params(int n, int v) {
  validate_config({n, 0, v}, Purpose::kCounting);
}

int r_value(int n, int v, int i) {
  const int hi = std::min(n - v, i + v);  // last center whose block holds i
  const int lo = std::max(v + 1, i - v);  // first such center
  return std::max(0, hi - lo + 1);
}

int lambda_value(int n, int v, int a, int b) {
  // a < b. A center's block holds both samples iff it holds the pair's span.
  const int hi = std::min(n - v, a + v);
  const int lo = std::max(v + 1, b - v);
  return std::max(0, hi - lo + 1);
}

}  // namespace

int OccurrenceProfile::r_at(int i) const {
  check_sample_index(n, i);
  return r[static_cast<std::size_t>(i - 1)];
}

int OccurrenceProfile::lambda_at(int i, int j) const {
  check_sample_index(n, i);
  check_sample_index(n, j);
  return lam[static_cast<std::size_t>(i - 1) * n + (j - 1)];
}

OccurrenceProfile count_bruteforce(const SplitConfig& cfg) {
  validate_config(cfg, Purpose::kCounting);
  const int n = cfg.n;

  OccurrenceProfile p;
  p.n = n;
  p.v = cfg.v;
  p.r.assign(static_cast<std::size_t>(n), 0);
  p.lam.assign(static_cast<std::size_t>(n) * n, 0);

  for (const Split& s : SplitRange({cfg.n, 0, cfg.v})) {
    for (int i = s.test.first; i <= s.test.last; ++i) {
      ++p.r[static_cast<std::size_t>(i - 1)];
      for (int j = i + 1; j <= s.test.last; ++j) {
        ++p.lam[static_cast<std::size_t>(i - 1) * n + (j - 1)];
        ++p.lam[static_cast<std::size_t>(j - 1) * n + (i - 1)];
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    p.lam[static_cast<std::size_t>(i - 1) * n + (i - 1)] =
        p.r[static_cast<std::size_t>(i - 1)];
  }
  return p;
}

int r_analytic(int n, int v, int i) {
  check_counting_params(n, v);
  check_sample_index(n, i);
  return r_value(n, v, i);
}

int lambda_analytic(int n, int v, int i, int j) {
  check_counting_params(n, v);
  check_sample_index(n, i);
  check_sample_index(n, j);
  if (i == j) throw BadPair(i);
  return lambda_value(n, v, std::min(i, j), std::max(i, j));
}

OccurrenceProfile occurrence_matrix(int n, int v) {
  check_counting_params(n, v);

  OccurrenceProfile p;
  p.n = n;
  p.v = v;
  p.r.resize(static_cast<std::size_t>(n));
  p.lam.assign(static_cast<std::size_t>(n) * n, 0);

  for (int i = 1; i <= n; ++i) {
    p.r[static_cast<std::size_t>(i - 1)] = r_value(n, v, i);
    p.lam[static_cast<std::size_t>(i - 1) * n + (i - 1)] =
        p.r[static_cast<std::size_t>(i - 1)];
    for (int j = i + 1; j <= n; ++j) {
      const int lam = lambda_value(n, v, i, j);
      p.lam[static_cast<std::size_t>(i - 1) * n + (j - 1)] = lam;
      p.lam[static_cast<std::size_t>(j - 1) * n + (i - 1)] = lam;
    }
  }
  return p;
}

}  // namespace blockcv
