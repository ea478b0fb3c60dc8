#pragma once

#include <cstddef>
#include <iterator>
#include <vector>

#include "blockcv/errors.hpp"

namespace blockcv {

// Inclusive 1-based index range; empty when first > last.
struct IndexRange {
  int first = 1;
  int last = 0;

  bool empty() const { return first > last; }
  int size() const { return empty() ? 0 : last - first + 1; }
  bool contains(int i) const { return first <= i && i <= last; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// (n, h, v) triple defining a family of hv-block splits over samples 1..n.
// The test block has 2v+1 samples; up to h samples on each side of it are
// discarded as the gap. All indices in this library are 1-based.
struct SplitConfig {
  int n = 0;  // series length
  int h = 0;  // gap half-width
  int v = 0;  // test half-width

  int test_block_size() const { return 2 * v + 1; }  // n_v
  int split_count() const { return n - 2 * v; }
  int first_center() const { return v + 1; }
  int last_center() const { return n - v; }

  friend bool operator==(const SplitConfig&, const SplitConfig&) = default;
};

// What a config is being validated for. Counting only needs a legitimate
// test block (n >= 2v+1); CV evaluation additionally needs every split to
// have a nonempty training set (n >= 2v+2h+2 -- the central split has the
// smallest train, of size n-2v-1-2h).
enum class Purpose { kCounting, kCv };

// One train/test/gap partition of {1..n}. The test block is contiguous;
// the gap and train each consist of at most one piece on each side of it.
// Near the series boundary the gap is truncated: whatever samples remain
// between the test block and the edge are discarded and the train on that
// side is empty.
struct Split {
  int center = 0;
  IndexRange test;
  IndexRange gap_left;
  IndexRange gap_right;
  IndexRange train_left;
  IndexRange train_right;

  int test_size() const { return test.size(); }
  int gap_size() const { return gap_left.size() + gap_right.size(); }
  int train_size() const { return train_left.size() + train_right.size(); }

  std::vector<int> test_indices() const;
  std::vector<int> gap_indices() const;    // ascending
  std::vector<int> train_indices() const;  // ascending

  friend bool operator==(const Split&, const Split&) = default;
};

// Returns cfg unchanged if it satisfies the bounds for `purpose`, throws
// TooFewSamples (naming the violated bound) or BadParameters otherwise.
SplitConfig validate_config(const SplitConfig& cfg, Purpose purpose);

// The split whose test block is centered at `center`. Legitimate centers
// are v+1 .. n-v; anything else throws IllegitimateCenter.
Split split_at(const SplitConfig& cfg, int center);

// Lazy view of the n-2v splits in increasing center order. Splits are cheap
// to recompute, so nothing is stored; use hv_splits() to materialize.
class SplitRange {
 public:
  explicit SplitRange(const SplitConfig& cfg)
      : cfg_(validate_config(cfg, Purpose::kCounting)) {}

  class iterator {
   public:
    using value_type = Split;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    Split operator*() const { return split_at(cfg_, center_); }
    iterator& operator++() {
      ++center_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy(*this);
      ++center_;
      return copy;
    }
    bool operator==(const iterator& other) const {
      return center_ == other.center_;
    }

   private:
    friend class SplitRange;
    iterator(const SplitConfig& cfg, int center) : cfg_(cfg), center_(center) {}

    SplitConfig cfg_;
    int center_;
  };

  iterator begin() const { return iterator(cfg_, cfg_.first_center()); }
  iterator end() const { return iterator(cfg_, cfg_.last_center() + 1); }
  int size() const { return cfg_.split_count(); }
  const SplitConfig& config() const { return cfg_; }

 private:
  SplitConfig cfg_;
};

// All n-2v splits, centers v+1, v+2, ..., n-v, materialized.
std::vector<Split> hv_splits(const SplitConfig& cfg);

}  // namespace blockcv
