#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "blockcv/split.hpp"

namespace blockcv {

// Per-split evaluation contract: given the series and one split, return a
// finite, lower-is-better loss. Sample index i of a Split refers to
// series[i-1]. The engine owns no modeling; fitting and prediction live
// entirely inside the evaluator.
struct Evaluator {
  std::function<double(std::span<const double>, const Split&)> fn;
  // When false the engine never invokes fn from more than one thread.
  bool thread_safe = true;
};

struct CvResult {
  double score = 0.0;             // mean of per_split, summed in center order
  std::vector<double> per_split;  // losses for centers v+1, ..., n-v
  SplitConfig config;
};

// The hv-block cross-validation score: the evaluator's loss averaged over
// the n-2v splits in increasing center order. Requires a cv-valid config
// (n >= 2v+2h+2) so every training set is nonempty. threads > 1 evaluates
// splits concurrently when the evaluator allows it; the reduction stays in
// center order, so the result is identical.
CvResult cv_hv(std::span<const double> series, const SplitConfig& cfg,
               const Evaluator& eval, int threads = 1);

// A candidate for model selection: fit on the split's training set and
// return a predictor over 1-based sample indices.
struct ModelCandidate {
  std::string name;
  int n_params = 0;  // parsimony key for tie-breaking
  std::function<std::function<double(int)>(std::span<const double>,
                                           const Split&)>
      fit;
  bool thread_safe = true;
};

using PointLoss = std::function<double(double predicted, double actual)>;

struct SelectionResult {
  int chosen = 0;              // index into the candidate list
  std::vector<double> scores;  // CV score per candidate
  bool tie_broken = false;
};

// Two scores tie when they differ by at most kScoreTieAbs absolutely or
// kScoreTieRel relative to the larger magnitude. Candidates that agree up to
// rounding -- nested least-squares fits on noiseless data, say -- must
// compare equal so the parsimony rule, not floating-point dust, decides.
inline constexpr double kScoreTieAbs = 1e-12;
inline constexpr double kScoreTieRel = 1e-9;

// Scores every candidate with cv_hv (per-split loss = mean point loss over
// the test block) and picks the minimizer; among tied scores the candidate
// with the fewest parameters wins, then the lowest index.
SelectionResult select_model(std::span<const double> series,
                             const SplitConfig& cfg,
                             const std::vector<ModelCandidate>& candidates,
                             const PointLoss& loss, int threads = 1);

double squared_error(double predicted, double actual);

// Built-in evaluator: predict the training mean for every test sample,
// score by mean squared error over the test block.
Evaluator train_mean_evaluator();

}  // namespace blockcv
