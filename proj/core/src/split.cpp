#include "blockcv/split.hpp"

#include <algorithm>

namespace blockcv {

namespace {

void append_range(std::vector<int>& out, const IndexRange& r) {
  for (int i = r.first; i <= r.last; ++i) out.push_back(i);
}

}  // namespace

std::vector<int> Split::test_indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(test.size()));
  append_range(out, test);
  return out;
}

std::vector<int> Split::gap_indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(gap_size()));
  append_range(out, gap_left);
  append_range(out, gap_right);
  return out;
}

std::vector<int> Split::train_indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(train_size()));
  append_range(out, train_left);
  append_range(out, train_right);
  return out;
}

SplitConfig validate_config(const SplitConfig& cfg, Purpose purpose) {
  if (cfg.h < 0) throw BadParameters("h must be non-negative, got " + std::to_string(cfg.h));
  if (cfg.v < 0) throw BadParameters("v must be non-negative, got " + std::to_string(cfg.v));
  const long long n = cfg.n;
  const long long v = cfg.v;
  const long long h = cfg.h;
  if (purpose == Purpose::kCounting) {
    const long long required = 2 * v + 1;
    if (n < required) throw TooFewSamples(required, n, "n >= 2v+1");
  } else {
    const long long required = 2 * v + 2 * h + 2;
    if (n < required) throw TooFewSamples(required, n, "n >= 2v+2h+2");
  }
  return cfg;
}

Split split_at(const SplitConfig& cfg, int center) {
  validate_config(cfg, Purpose::kCounting);
  if (center < cfg.first_center() || center > cfg.last_center()) {
    throw IllegitimateCenter(center, cfg.first_center(), cfg.last_center());
  }

  const long long n = cfg.n;
  const long long h = cfg.h;
  const long long v = cfg.v;
  const long long c = center;

  // Wide arithmetic, then clamp into [1, n] before narrowing: h may exceed
  // the distance to either boundary by an arbitrary amount.
  const auto clamp = [&](long long x) {
    return static_cast<int>(std::max(0LL, std::min(n + 1, x)));
  };

  Split s;
  s.center = center;
  s.test = {static_cast<int>(c - v), static_cast<int>(c + v)};
  // Gap pieces are clipped to [1, n]: near the boundary whatever samples
  // remain between the test block and the edge are discarded entirely.
  s.gap_left = {std::max(1, clamp(c - v - h)), static_cast<int>(c - v - 1)};
  s.gap_right = {static_cast<int>(c + v + 1), std::min(cfg.n, clamp(c + v + h))};
  // Train keeps everything farther than v+h from the center.
  s.train_left = {1, clamp(c - v - h - 1)};
  s.train_right = {std::max(1, clamp(c + v + h + 1)), cfg.n};
  // Normalize empty pieces so Split equality is structural.
  if (s.gap_left.empty()) s.gap_left = {1, 0};
  if (s.gap_right.empty()) s.gap_right = {1, 0};
  if (s.train_left.empty()) s.train_left = {1, 0};
  if (s.train_right.empty()) s.train_right = {1, 0};
  return s;
}

std::vector<Split> hv_splits(const SplitConfig& cfg) {
  SplitRange range(cfg);
  std::vector<Split> out;
  out.reserve(static_cast<std::size_t>(range.size()));
  for (const Split& s : range) out.push_back(s);
  return out;
}

}  // namespace blockcv
