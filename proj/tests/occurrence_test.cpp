#include "blockcv/occurrence.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace blockcv {
namespace {

// The known occurrence matrix for n = 10, v = 2: diagonal entries are the
// per-sample counts, off-diagonal entries the per-pair counts.
const int kMatrix10x2[10][10] = {
    {1, 1, 1, 1, 1, 0, 0, 0, 0, 0},
    {1, 2, 2, 2, 2, 1, 0, 0, 0, 0},
    {1, 2, 3, 3, 3, 2, 1, 0, 0, 0},
    {1, 2, 3, 4, 4, 3, 2, 1, 0, 0},
    {1, 2, 3, 4, 5, 4, 3, 2, 1, 0},
    {0, 1, 2, 3, 4, 5, 4, 3, 2, 1},
    {0, 0, 1, 2, 3, 4, 4, 3, 2, 1},
    {0, 0, 0, 1, 2, 3, 3, 3, 2, 1},
    {0, 0, 0, 0, 1, 2, 2, 2, 2, 1},
    {0, 0, 0, 0, 0, 1, 1, 1, 1, 1},
};

void expect_matches_golden(const OccurrenceProfile& p) {
  ASSERT_EQ(p.n, 10);
  ASSERT_EQ(p.v, 2);
  for (int i = 1; i <= 10; ++i) {
    EXPECT_EQ(p.r_at(i), kMatrix10x2[i - 1][i - 1]) << "r at " << i;
    for (int j = 1; j <= 10; ++j) {
      EXPECT_EQ(p.lambda_at(i, j), kMatrix10x2[i - 1][j - 1])
          << "entry (" << i << "," << j << ")";
    }
  }
}

TEST(CountBruteforce, ReproducesGoldenMatrix) {
  expect_matches_golden(count_bruteforce({10, 0, 2}));
}

TEST(CountBruteforce, GapWidthIsIgnored) {
  EXPECT_EQ(count_bruteforce({10, 3, 2}), count_bruteforce({10, 0, 2}));
  EXPECT_EQ(count_bruteforce({10, 100, 2}), count_bruteforce({10, 0, 2}));
}

TEST(CountBruteforce, SingletonBlocksShareNoPairs) {
  const OccurrenceProfile p = count_bruteforce({4, 0, 0});
  for (int i = 1; i <= 4; ++i) {
    EXPECT_EQ(p.r_at(i), 1);
    for (int j = 1; j <= 4; ++j) {
      if (i != j) {
        EXPECT_EQ(p.lambda_at(i, j), 0);
      }
    }
  }
}

TEST(CountBruteforce, SingleBlockContainingEverything) {
  const OccurrenceProfile p = count_bruteforce({7, 0, 3});
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 7; ++j) {
      EXPECT_EQ(p.lambda_at(i, j), 1);
    }
  }
}

TEST(CountBruteforce, PropagatesTooFewSamples) {
  EXPECT_THROW(count_bruteforce({4, 0, 2}), TooFewSamples);
}

TEST(RAnalytic, BoundaryAndPlateauValues) {
  // Left edge of the table: sample v+1 sits in v+1 blocks, then one more
  // per step until the plateau 2v+1 that runs through n-2v.
  const int n = 100;
  const int v = 7;
  EXPECT_EQ(r_analytic(n, v, v + 1), v + 1);
  EXPECT_EQ(r_analytic(n, v, v + 2), v + 2);
  EXPECT_EQ(r_analytic(n, v, 2 * v + 1), 2 * v + 1);
  EXPECT_EQ(r_analytic(n, v, n - 2 * v), 2 * v + 1);
  EXPECT_EQ(r_analytic(n, v, n - v - 1), v + 2);
  EXPECT_EQ(r_analytic(n, v, n - v), v + 1);
  EXPECT_EQ(r_analytic(10, 2, 1), 1);
}

TEST(RAnalytic, RejectsBadIndices) {
  EXPECT_THROW(r_analytic(10, 2, 0), IndexOutOfRange);
  EXPECT_THROW(r_analytic(10, 2, 11), IndexOutOfRange);
  EXPECT_THROW(r_analytic(4, 2, 1), TooFewSamples);
}

TEST(LambdaAnalytic, GoldenEntries) {
  EXPECT_EQ(lambda_analytic(10, 2, 5, 6), 4);
  EXPECT_EQ(lambda_analytic(10, 2, 1, 6), 0);
  EXPECT_EQ(lambda_analytic(10, 2, 4, 7), 2);
  // Symmetric in the argument order.
  EXPECT_EQ(lambda_analytic(10, 2, 6, 5), 4);
  EXPECT_EQ(lambda_analytic(10, 2, 7, 4), 2);
}

TEST(LambdaAnalytic, RejectsEqualPairAndBadIndices) {
  EXPECT_THROW(lambda_analytic(10, 2, 3, 3), BadPair);
  EXPECT_THROW(lambda_analytic(10, 2, 0, 3), IndexOutOfRange);
  EXPECT_THROW(lambda_analytic(10, 2, 3, 11), IndexOutOfRange);
}

TEST(OccurrenceMatrix, MatchesGoldenMatrix) {
  expect_matches_golden(occurrence_matrix(10, 2));
}

TEST(OccurrenceMatrix, AllOnesForSingleBlock) {
  const OccurrenceProfile p = occurrence_matrix(7, 3);
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 7; ++j) {
      EXPECT_EQ(p.lambda_at(i, j), 1);
    }
  }
}

TEST(OccurrenceMatrix, EqualsBruteForceEverywhere) {
  // The closed forms against the naive counter, for every (n, v) in range.
  for (int n = 1; n <= 60; ++n) {
    for (int v = 0; 2 * v + 1 <= n; ++v) {
      ASSERT_EQ(occurrence_matrix(n, v), count_bruteforce({n, 0, v}))
          << "n=" << n << " v=" << v;
    }
  }
}

TEST(OccurrenceMatrix, SymmetryAndMass) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 120)(rng);
    const int v = std::uniform_int_distribution<int>(0, (n - 1) / 2)(rng);
    const OccurrenceProfile p = occurrence_matrix(n, v);

    long long r_total = 0;
    long long lambda_total = 0;
    for (int i = 1; i <= n; ++i) {
      r_total += p.r_at(i);
      // Reversal symmetry of the family.
      ASSERT_EQ(p.r_at(i), p.r_at(n + 1 - i));
      for (int j = i + 1; j <= n; ++j) {
        lambda_total += p.lambda_at(i, j);
        ASSERT_EQ(p.lambda_at(i, j), p.lambda_at(j, i));
        ASSERT_EQ(p.lambda_at(i, j), p.lambda_at(n + 1 - j, n + 1 - i));
        // Band structure: pairs farther apart than 2v never share a block.
        ASSERT_EQ(p.lambda_at(i, j) == 0, j - i > 2 * v);
      }
    }
    const long long b = n - 2 * v;
    const long long k = 2 * v + 1;
    ASSERT_EQ(r_total, b * k);
    ASSERT_EQ(lambda_total, b * v * k);
  }
}

TEST(OccurrenceMatrix, RConstantOnlyInDegenerateCases) {
  const auto r_constant = [](const OccurrenceProfile& p) {
    for (int i = 2; i <= p.n; ++i) {
      if (p.r_at(i) != p.r_at(1)) return false;
    }
    return true;
  };
  // v = 0 keeps r constant for every n.
  for (int n : {1, 2, 5, 17}) {
    EXPECT_TRUE(r_constant(occurrence_matrix(n, 0)));
  }
  // A single block covering everything is constant too.
  EXPECT_TRUE(r_constant(occurrence_matrix(9, 4)));
  // Any v >= 1 with at least two blocks is not.
  for (int v = 1; v <= 6; ++v) {
    for (int n = 2 * v + 2; n <= 2 * v + 12; ++n) {
      EXPECT_FALSE(r_constant(occurrence_matrix(n, v))) << "n=" << n
                                                        << " v=" << v;
    }
  }
}

}  // namespace
}  // namespace blockcv
