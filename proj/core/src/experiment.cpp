#include "blockcv/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <thread>

namespace blockcv {

double NormalSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms; u1 in (0, 1] so the log is finite, u2 in [0, 1).
  const std::uint64_t a = rng_();
  const std::uint64_t b = rng_();
  const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + (salt + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<double> gen_ar1(int n, double rho, double sigma,
                            std::uint64_t seed) {
  if (n < 1) throw BadParameters("gen_ar1 needs n >= 1, got " + std::to_string(n));
  if (!(std::abs(rho) < 1.0)) {
    throw BadParameters("gen_ar1 needs |rho| < 1, got " + std::to_string(rho));
  }
  if (!(sigma >= 0.0)) {
    throw BadParameters("gen_ar1 needs sigma >= 0, got " +
                        std::to_string(sigma));
  }

  NormalSampler z(seed);
  std::vector<double> e(static_cast<std::size_t>(n));
  const double stationary_sd = sigma / std::sqrt(1.0 - rho * rho);
  e[0] = stationary_sd * z.next();
  for (int t = 1; t < n; ++t) {
    e[static_cast<std::size_t>(t)] =
        rho * e[static_cast<std::size_t>(t - 1)] + sigma * z.next();
  }
  return e;
}

const std::array<std::string, kDictionarySize>& dictionary_names() {
  static const std::array<std::string, kDictionarySize> names = {
      "const", "z1", "z2", "season", "trend"};
  return names;
}

int dictionary_column(const std::string& name) {
  const auto& names = dictionary_names();
  for (int c = 0; c < kDictionarySize; ++c) {
    if (names[static_cast<std::size_t>(c)] == name) return c;
  }
  throw BadParameters("unknown dictionary column '" + name + "'");
}

LinearData gen_linear(const Dgp& dgp) {
  if (dgp.n < 1) {
    throw BadParameters("dgp needs n >= 1, got " + std::to_string(dgp.n));
  }
  if (static_cast<int>(dgp.beta.size()) != kDictionarySize) {
    throw BadParameters("beta must have " + std::to_string(kDictionarySize) +
                        " coefficients, got " +
                        std::to_string(dgp.beta.size()));
  }

  const int n = dgp.n;
  LinearData data;
  data.X.resize(n, kDictionarySize);
  NormalSampler z1(sub_seed(dgp.seed, 1));
  NormalSampler z2(sub_seed(dgp.seed, 2));
  for (int t = 1; t <= n; ++t) {
    const int row = t - 1;
    data.X(row, 0) = 1.0;
    data.X(row, 1) = z1.next();
    data.X(row, 2) = z2.next();
    data.X(row, 3) = std::sin(2.0 * std::numbers::pi * t / 12.0);
    data.X(row, 4) = static_cast<double>(t) / n;
  }

  const std::vector<double> e =
      gen_ar1(n, dgp.rho, dgp.sigma, sub_seed(dgp.seed, 0));
  const Eigen::Map<const Eigen::VectorXd> beta(dgp.beta.data(),
                                               kDictionarySize);
  const Eigen::Map<const Eigen::VectorXd> errors(e.data(), n);
  data.y = data.X * beta + errors;
  return data;
}

Eigen::VectorXd ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() != y.size()) {
    throw BadParameters("ols_fit: X has " + std::to_string(X.rows()) +
                        " rows but y has " + std::to_string(y.size()));
  }
  if (X.rows() < X.cols()) {
    throw RankDeficient("ols_fit: " + std::to_string(X.rows()) +
                        " rows cannot determine " + std::to_string(X.cols()) +
                        " coefficients");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols()) {
    throw RankDeficient("ols_fit: column rank " + std::to_string(qr.rank()) +
                        " < " + std::to_string(X.cols()));
  }
  return qr.solve(y);
}

int default_block_h(int n) { return (n + 9) / 10; }

int default_hv_v(int n, int h, int min_train) {
  const int v = (n - 2 * h - 1 - min_train) / 2;
  return std::max(0, v);
}

ExperimentConfig default_experiment_config() {
  ExperimentConfig cfg;
  cfg.dgp.n = 100;
  cfg.dgp.beta = {1.0, 2.0, 0.0, 0.0, 0.0};
  cfg.dgp.rho = 0.5;
  cfg.dgp.sigma = 1.0;
  cfg.dgp.seed = 42;
  cfg.candidates = {{0, 1}, {0, 1, 2}, {0, 1, 2, 3}, {0, 1, 2, 3, 4}};
  const int h = default_block_h(cfg.dgp.n);
  const int v = default_hv_v(cfg.dgp.n, h, kDictionarySize);
  cfg.methods = {{"ungapped", 0, 0}, {"h-block", h, 0}, {"hv-block", h, v}};
  cfg.replications = 200;
  return cfg;
}

std::string candidate_name(const std::vector<int>& columns) {
  const auto& names = dictionary_names();
  std::string out;
  for (int c : columns) {
    if (c < 0 || c >= kDictionarySize) {
      throw BadParameters("candidate column " + std::to_string(c) +
                          " outside the dictionary");
    }
    if (!out.empty()) out += '+';
    out += names[static_cast<std::size_t>(c)];
  }
  return out;
}

namespace {

std::set<int> column_set(const std::vector<int>& columns) {
  std::set<int> cols(columns.begin(), columns.end());
  if (cols.size() != columns.size()) {
    throw BadParameters("candidate repeats a column");
  }
  for (int c : cols) {
    if (c < 0 || c >= kDictionarySize) {
      throw BadParameters("candidate column " + std::to_string(c) +
                          " outside the dictionary");
    }
  }
  if (cols.empty()) throw BadParameters("candidate has no columns");
  return cols;
}

// One replication: fresh data, then one selection per method.
void run_replication(const ExperimentConfig& cfg, int rep,
                     std::vector<std::vector<long long>>& counts) {
  Dgp dgp = cfg.dgp;
  dgp.seed = cfg.dgp.seed + static_cast<std::uint64_t>(rep);
  const LinearData data = gen_linear(dgp);
  const std::span<const double> series(data.y.data(),
                                       static_cast<std::size_t>(dgp.n));

  std::vector<ModelCandidate> model_candidates;
  model_candidates.reserve(cfg.candidates.size());
  for (const auto& columns : cfg.candidates) {
    ModelCandidate mc;
    mc.name = candidate_name(columns);
    mc.n_params = static_cast<int>(columns.size());
    mc.fit = [&X = data.X, columns](std::span<const double> s,
                                    const Split& split) {
      const std::vector<int> train = split.train_indices();
      Eigen::MatrixXd Xtrain(train.size(), columns.size());
      Eigen::VectorXd ytrain(train.size());
      for (std::size_t row = 0; row < train.size(); ++row) {
        ytrain(static_cast<Eigen::Index>(row)) = s[train[row] - 1];
        for (std::size_t col = 0; col < columns.size(); ++col) {
          Xtrain(static_cast<Eigen::Index>(row),
                 static_cast<Eigen::Index>(col)) =
              X(train[row] - 1, columns[col]);
        }
      }
      const Eigen::VectorXd beta = ols_fit(Xtrain, ytrain);
      return [&X, columns, beta](int i) {
        double pred = 0.0;
        for (std::size_t col = 0; col < columns.size(); ++col) {
          pred += beta(static_cast<Eigen::Index>(col)) * X(i - 1, columns[col]);
        }
        return pred;
      };
    };
    model_candidates.push_back(std::move(mc));
  }

  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    const Method& method = cfg.methods[m];
    const SplitConfig split_cfg{dgp.n, method.h, method.v};
    const SelectionResult sel =
        select_model(series, split_cfg, model_candidates, squared_error);
    ++counts[m][static_cast<std::size_t>(sel.chosen)];
  }
}

}  // namespace

int true_candidate_index(const ExperimentConfig& cfg) {
  if (static_cast<int>(cfg.dgp.beta.size()) != kDictionarySize) {
    throw BadParameters("beta must have " + std::to_string(kDictionarySize) +
                        " coefficients");
  }
  std::set<int> truth;
  for (int c = 0; c < kDictionarySize; ++c) {
    if (cfg.dgp.beta[static_cast<std::size_t>(c)] != 0.0) truth.insert(c);
  }
  for (std::size_t i = 0; i < cfg.candidates.size(); ++i) {
    if (column_set(cfg.candidates[i]) == truth) return static_cast<int>(i);
  }
  throw BadParameters(
      "candidates must include the true subset (the nonzero-beta columns)");
}

FrequencyTable run_experiment(const ExperimentConfig& cfg, int threads) {
  if (cfg.replications < 1) {
    throw BadParameters("needs replications >= 1, got " +
                        std::to_string(cfg.replications));
  }
  if (cfg.methods.empty()) throw BadParameters("no methods given");
  if (cfg.candidates.empty()) throw BadParameters("no candidates given");

  FrequencyTable table;
  table.config = cfg;
  table.true_candidate = true_candidate_index(cfg);

  const std::set<int> truth = column_set(
      cfg.candidates[static_cast<std::size_t>(table.true_candidate)]);
  bool has_superset = false;
  for (const auto& columns : cfg.candidates) {
    const std::set<int> cols = column_set(columns);
    if (cols.size() > truth.size() &&
        std::includes(cols.begin(), cols.end(), truth.begin(), truth.end())) {
      has_superset = true;
    }
  }
  if (!has_superset) {
    throw BadParameters(
        "candidates must include a strict superset of the true subset");
  }
  for (const Method& m : cfg.methods) {
    try {
      validate_config({cfg.dgp.n, m.h, m.v}, Purpose::kCv);
    } catch (const Error& e) {
      throw BadParameters("method " + m.name + ": " + e.what());
    }
  }

  table.counts.assign(cfg.methods.size(),
                      std::vector<long long>(cfg.candidates.size(), 0));

  const int reps = cfg.replications;
  const int workers = std::clamp(threads, 1, reps);
  if (workers == 1) {
    for (int rep = 0; rep < reps; ++rep) {
      try {
        run_replication(cfg, rep, table.counts);
      } catch (const std::exception& e) {
        throw Error("replication " + std::to_string(rep + 1) + ": " +
                    e.what());
      }
    }
    return table;
  }

  // Each worker tallies its own replication range; integer merges make the
  // totals independent of the partitioning.
  struct WorkerState {
    std::vector<std::vector<long long>> counts;
    std::optional<std::pair<int, std::string>> failure;  // (rep, message)
  };
  std::vector<WorkerState> states(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin_rep =
        static_cast<int>(static_cast<long long>(reps) * w / workers);
    const int end_rep =
        static_cast<int>(static_cast<long long>(reps) * (w + 1) / workers);
    states[static_cast<std::size_t>(w)].counts.assign(
        cfg.methods.size(), std::vector<long long>(cfg.candidates.size(), 0));
    pool.emplace_back([&cfg, &states, w, begin_rep, end_rep] {
      WorkerState& state = states[static_cast<std::size_t>(w)];
      for (int rep = begin_rep; rep < end_rep; ++rep) {
        try {
          run_replication(cfg, rep, state.counts);
        } catch (const std::exception& e) {
          state.failure = {rep, e.what()};
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  const std::pair<int, std::string>* first = nullptr;
  for (const auto& state : states) {
    if (state.failure && (!first || state.failure->first < first->first)) {
      first = &*state.failure;
    }
  }
  if (first) {
    throw Error("replication " + std::to_string(first->first + 1) + ": " +
                first->second);
  }
  for (const auto& state : states) {
    for (std::size_t m = 0; m < table.counts.size(); ++m) {
      for (std::size_t c = 0; c < table.counts[m].size(); ++c) {
        table.counts[m][c] += state.counts[m][c];
      }
    }
  }
  return table;
}

}  // namespace blockcv
