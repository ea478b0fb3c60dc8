#include "blockcv/cv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace blockcv {

namespace {

struct SplitFailure {
  int center;
  std::string cause;
};

// Evaluates the centers [begin_idx, end_idx) into losses, recording the
// first failure by center instead of throwing across threads.
void evaluate_chunk(std::span<const double> series, const SplitConfig& cfg,
                    const Evaluator& eval, int begin_idx, int end_idx,
                    std::vector<double>& losses,
                    std::optional<SplitFailure>& failure) {
  for (int idx = begin_idx; idx < end_idx; ++idx) {
    const int center = cfg.first_center() + idx;
    try {
      losses[static_cast<std::size_t>(idx)] =
          eval.fn(series, split_at(cfg, center));
    } catch (const std::exception& e) {
      failure = SplitFailure{center, e.what()};
      return;
    }
  }
}

}  // namespace

CvResult cv_hv(std::span<const double> series, const SplitConfig& cfg,
               const Evaluator& eval, int threads) {
  validate_config(cfg, Purpose::kCv);
  if (static_cast<int>(series.size()) != cfg.n) {
    throw BadParameters("series length " + std::to_string(series.size()) +
                        " does not match n = " + std::to_string(cfg.n));
  }
  if (!eval.fn) throw BadParameters("evaluator has no function");

  const int count = cfg.split_count();
  std::vector<double> losses(static_cast<std::size_t>(count));

  int workers = std::clamp(threads, 1, count);
  if (!eval.thread_safe) workers = 1;

  if (workers == 1) {
    std::optional<SplitFailure> failure;
    evaluate_chunk(series, cfg, eval, 0, count, losses, failure);
    if (failure) throw EvaluatorFailure(failure->center, failure->cause);
  } else {
    std::vector<std::optional<SplitFailure>> failures(
        static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int begin_idx = static_cast<int>(
          static_cast<long long>(count) * w / workers);
      const int end_idx = static_cast<int>(
          static_cast<long long>(count) * (w + 1) / workers);
      pool.emplace_back([&, w, begin_idx, end_idx] {
        evaluate_chunk(series, cfg, eval, begin_idx, end_idx, losses,
                       failures[static_cast<std::size_t>(w)]);
      });
    }
    for (auto& t : pool) t.join();
    // Report the failure with the smallest center so the outcome does not
    // depend on thread scheduling.
    const std::optional<SplitFailure>* first = nullptr;
    for (const auto& f : failures) {
      if (f && (!first || f->center < (*first)->center)) first = &f;
    }
    if (first) throw EvaluatorFailure((*first)->center, (*first)->cause);
  }

  for (int idx = 0; idx < count; ++idx) {
    if (!std::isfinite(losses[static_cast<std::size_t>(idx)])) {
      throw EvaluatorFailure(cfg.first_center() + idx,
                             "evaluator returned a non-finite loss");
    }
  }

  CvResult result;
  result.config = cfg;
  result.per_split = std::move(losses);
  double total = 0.0;
  for (double loss : result.per_split) total += loss;
  result.score = total / count;
  return result;
}

SelectionResult select_model(std::span<const double> series,
                             const SplitConfig& cfg,
                             const std::vector<ModelCandidate>& candidates,
                             const PointLoss& loss, int threads) {
  if (candidates.empty()) {
    throw BadParameters("model selection needs at least one candidate");
  }
  if (!loss) throw BadParameters("no point loss given");

  SelectionResult result;
  result.scores.reserve(candidates.size());
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const ModelCandidate& cand = candidates[ci];
    if (!cand.fit) {
      throw BadParameters("candidate " + std::to_string(ci + 1) + " (" +
                          cand.name + ") has no fit function");
    }
    Evaluator eval;
    eval.thread_safe = cand.thread_safe;
    eval.fn = [&cand, &loss](std::span<const double> s, const Split& split) {
      const auto predict = cand.fit(s, split);
      double total = 0.0;
      for (int i = split.test.first; i <= split.test.last; ++i) {
        total += loss(predict(i), s[static_cast<std::size_t>(i - 1)]);
      }
      return total / split.test_size();
    };
    try {
      result.scores.push_back(cv_hv(series, cfg, eval, threads).score);
    } catch (const Error& e) {
      throw Error("candidate " + std::to_string(ci + 1) + " (" + cand.name +
                  "): " + e.what());
    }
  }

  const auto tied = [](double a, double b) {
    const double diff = std::abs(a - b);
    return diff <= kScoreTieAbs ||
           diff <= kScoreTieRel * std::max(std::abs(a), std::abs(b));
  };

  const double best_score =
      *std::min_element(result.scores.begin(), result.scores.end());
  int chosen = -1;
  int in_tie = 0;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    if (!tied(result.scores[ci], best_score)) continue;
    ++in_tie;
    if (chosen < 0 ||
        candidates[ci].n_params <
            candidates[static_cast<std::size_t>(chosen)].n_params) {
      chosen = static_cast<int>(ci);
    }
  }
  result.chosen = chosen;
  result.tie_broken = in_tie > 1;
  return result;
}

double squared_error(double predicted, double actual) {
  const double diff = predicted - actual;
  return diff * diff;
}

Evaluator train_mean_evaluator() {
  Evaluator eval;
  eval.fn = [](std::span<const double> series, const Split& split) {
    double sum = 0.0;
    int count = 0;
    for (const IndexRange& part : {split.train_left, split.train_right}) {
      for (int i = part.first; i <= part.last; ++i) {
        sum += series[static_cast<std::size_t>(i - 1)];
        ++count;
      }
    }
    if (count == 0) {
      // Empty train set; let the engine surface this as a failure.
      return std::numeric_limits<double>::quiet_NaN();
    }
    const double mean = sum / count;
    double mse = 0.0;
    for (int i = split.test.first; i <= split.test.last; ++i) {
      mse += squared_error(mean, series[static_cast<std::size_t>(i - 1)]);
    }
    return mse / split.test_size();
  };
  return eval;
}

}  // namespace blockcv
