#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blockcv/cv.hpp"

namespace blockcv {

// Standard normal draws from mt19937_64 through an explicit Box-Muller
// transform, so a seed pins the sequence independently of the standard
// library's normal_distribution implementation. This is the repository's
// one and only source of randomness.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
  double next();

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Seed for an independent sub-stream (splitmix64 of seed and salt). The
// error process uses salt 0 and the stochastic regressor columns use their
// column index as salt.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t salt);

// Stationary AR(1) noise: e[1] drawn from the stationary distribution with
// variance sigma^2/(1-rho^2), then e[t] = rho e[t-1] + sigma z[t].
// Deterministic per (n, rho, sigma, seed); requires |rho| < 1, sigma >= 0.
std::vector<double> gen_ar1(int n, double rho, double sigma,
                            std::uint64_t seed);

// The fixed regressor dictionary, in column order:
//   const  -- intercept, identically 1
//   z1, z2 -- i.i.d. standard normal, one seeded sub-stream per column
//   season -- sin(2 pi t / 12) for t = 1..n
//   trend  -- t / n
inline constexpr int kDictionarySize = 5;
const std::array<std::string, kDictionarySize>& dictionary_names();
int dictionary_column(const std::string& name);  // BadParameters if unknown

// Data-generating process: y = X beta + e with X the dictionary above and
// e the AR(1) error process. Fully determined by its fields.
struct Dgp {
  int n = 0;
  std::vector<double> beta;  // kDictionarySize coefficients
  double rho = 0.0;          // AR(1) error correlation, |rho| < 1
  double sigma = 1.0;        // innovation scale, >= 0
  std::uint64_t seed = 0;

  friend bool operator==(const Dgp&, const Dgp&) = default;
};

struct LinearData {
  Eigen::MatrixXd X;  // n x kDictionarySize
  Eigen::VectorXd y;
};
LinearData gen_linear(const Dgp& dgp);

// Least squares via column-pivoted QR. Throws RankDeficient when X has
// fewer rows than columns or is numerically rank-deficient.
Eigen::VectorXd ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

// One cross-validation variant to compare: ungapped (0,0), h-block (h,0)
// or hv-block (h,v).
struct Method {
  std::string name;
  int h = 0;
  int v = 0;

  friend bool operator==(const Method&, const Method&) = default;
};

struct ExperimentConfig {
  Dgp dgp;  // template; replication i runs with seed dgp.seed + i
  std::vector<std::vector<int>> candidates;  // dictionary column subsets
  std::vector<Method> methods;
  int replications = 1;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) =
      default;
};

int default_block_h(int n);  // ceil(n/10)
// Largest v with n >= 2v+2h+2 that also keeps the smallest training set
// (the central split's, n-2v-2h-1 samples) at least min_train, so every
// candidate stays fittable.
int default_hv_v(int n, int h, int min_train);

// n = 100, rho = 0.5, sigma = 1, beta = (1, 2, 0, 0, 0), 200 replications,
// seed 42. Candidates are the nested dictionary prefixes from {const, z1}
// up to the full dictionary; methods are ungapped, h-block with
// h = default_block_h(n), and hv-block with the same h and
// v = default_hv_v(n, h, kDictionarySize).
ExperimentConfig default_experiment_config();

std::string candidate_name(const std::vector<int>& columns);  // "const+z1"
// Index of the candidate whose columns are exactly the nonzero entries of
// beta; BadParameters when absent.
int true_candidate_index(const ExperimentConfig& cfg);

// Selection counts per (method, candidate) over all replications.
struct FrequencyTable {
  ExperimentConfig config;
  int true_candidate = 0;
  std::vector<std::vector<long long>> counts;  // [method][candidate]
};

// Runs the replications, each drawing fresh data and selecting a candidate
// per method by CV minimization with squared-error loss. Deterministic for
// a given config regardless of `threads`.
FrequencyTable run_experiment(const ExperimentConfig& cfg, int threads = 1);

}  // namespace blockcv
