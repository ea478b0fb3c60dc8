// blockcv -- hv-block cross-validation, occurrence counting and block-design
// verification from the command line. stdout carries the requested artifact
// only; diagnostics go to stderr. Exit codes: 0 success, 1 internal
// consistency failure, 2 user/validation error.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "blockcv/bibd.hpp"
#include "blockcv/cv.hpp"
#include "blockcv/experiment.hpp"
#include "blockcv/occurrence.hpp"
#include "blockcv/serialize.hpp"
#include "blockcv/split.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string format_indices(const std::vector<int>& indices) {
  if (indices.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices[i]);
  }
  return out;
}

void print_split_pretty(const blockcv::Split& s) {
  std::cout << "center " << s.center << ": test "
            << format_indices(s.test_indices()) << "  gap "
            << format_indices(s.gap_indices()) << "  train "
            << format_indices(s.train_indices()) << "\n";
}

std::string matrix_pretty(const blockcv::OccurrenceProfile& p) {
  int width = 1;
  for (int value : p.lam) {
    width = std::max(width, static_cast<int>(std::to_string(value).size()));
  }
  std::ostringstream out;
  for (int i = 1; i <= p.n; ++i) {
    for (int j = 1; j <= p.n; ++j) {
      if (j > 1) out << ' ';
      out << std::setw(width) << p.lambda_at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<double> read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw blockcv::Error("cannot open data file: " + path);
  std::vector<double> series;
  std::string token;
  while (in >> token) {
    // Accept comma-separated as well as whitespace-separated values.
    std::replace(token.begin(), token.end(), ',', ' ');
    std::istringstream ss(token);
    double value = 0.0;
    while (ss >> value) series.push_back(value);
    if (!ss.eof()) {
      throw blockcv::Error("cannot parse '" + token + "' as a number");
    }
  }
  if (series.empty()) throw blockcv::Error("data file is empty: " + path);
  return series;
}

struct SplitsArgs {
  int n = 0;
  int h = 0;
  int v = 0;
  int center = -1;
  bool has_center = false;
  std::string format = "pretty";
};

int run_splits(const SplitsArgs& args) {
  const blockcv::SplitConfig cfg{args.n, args.h, args.v};
  if (args.has_center) {
    const blockcv::Split s = blockcv::split_at(cfg, args.center);
    if (args.format == "json") {
      emit_json(s);
    } else if (args.format == "csv") {
      std::cout << blockcv::split_csv_header() << blockcv::split_csv_row(s);
    } else {
      print_split_pretty(s);
    }
    return kExitOk;
  }

  blockcv::SplitRange range(cfg);
  if (args.format == "json") {
    json j = json::array();
    for (const blockcv::Split& s : range) j.push_back(s);
    emit_json(j);
  } else if (args.format == "csv") {
    std::cout << blockcv::split_csv_header();
    for (const blockcv::Split& s : range) {
      std::cout << blockcv::split_csv_row(s);
    }
  } else {
    for (const blockcv::Split& s : range) print_split_pretty(s);
  }
  return kExitOk;
}

struct OccurrenceArgs {
  int n = 0;
  int v = 0;
  std::string method = "analytic";
  std::string format = "pretty";
};

int run_occurrence(const OccurrenceArgs& args) {
  if (args.method != "both") {
    const blockcv::OccurrenceProfile p =
        args.method == "bruteforce"
            ? blockcv::count_bruteforce({args.n, 0, args.v})
            : blockcv::occurrence_matrix(args.n, args.v);
    if (args.format == "json") {
      emit_json(p);
    } else if (args.format == "csv") {
      std::cout << blockcv::occurrence_csv(p);
    } else {
      std::cout << matrix_pretty(p);
    }
    return kExitOk;
  }

  const blockcv::OccurrenceProfile analytic =
      blockcv::occurrence_matrix(args.n, args.v);
  const blockcv::OccurrenceProfile brute =
      blockcv::count_bruteforce({args.n, 0, args.v});
  json diff = json::array();
  for (int i = 1; i <= args.n; ++i) {
    for (int j = 1; j <= args.n; ++j) {
      if (analytic.lambda_at(i, j) != brute.lambda_at(i, j)) {
        diff.push_back(json{{"i", i},
                            {"j", j},
                            {"analytic", analytic.lambda_at(i, j)},
                            {"bruteforce", brute.lambda_at(i, j)}});
      }
    }
  }

  if (args.format == "json") {
    emit_json(json{{"analytic", analytic},
                   {"bruteforce", brute},
                   {"diff", diff}});
  } else if (args.format == "csv") {
    std::cout << "# analytic\n" << blockcv::occurrence_csv(analytic);
    std::cout << "# bruteforce\n" << blockcv::occurrence_csv(brute);
    std::cout << "# diff\n";
    for (const json& entry : diff) {
      std::cout << entry.at("i").get<int>() << ','
                << entry.at("j").get<int>() << ','
                << entry.at("analytic").get<int>() << ','
                << entry.at("bruteforce").get<int>() << '\n';
    }
  } else {
    std::cout << "analytic:\n" << matrix_pretty(analytic);
    std::cout << "bruteforce:\n" << matrix_pretty(brute);
    if (diff.empty()) {
      std::cout << "diff: identical\n";
    } else {
      std::cout << "diff: " << diff.size() << " entries\n";
    }
  }

  if (!diff.empty()) {
    std::cerr << "error: analytic and brute-force counts disagree on "
              << diff.size() << " entries\n";
    return kExitInternal;
  }
  return kExitOk;
}

struct BibdArgs {
  std::string design_file;
  std::string hv;
  std::string format = "pretty";
};

void print_report_pretty(const blockcv::BibdReport& report) {
  std::cout << "design: n = " << report.n << ", b = " << report.b << "\n";
  if (report.is_bibd) {
    std::cout << "verdict: BIBD with (n, k, b, r, lambda) = (" << report.n
              << ", " << *report.k << ", " << report.b << ", " << *report.r
              << ", " << *report.lambda << ")\n";
    std::cout << "identities: r(k-1) = " << report.identities->r_times_k_minus_1
              << " = lambda(n-1), bk = " << report.identities->b_times_k
              << " = nr\n";
    return;
  }
  std::cout << "verdict: not a BIBD\n";
  for (const blockcv::Violation& v : report.violations) {
    std::cout << "violation [" << blockcv::to_string(v.kind)
              << "]: " << v.message << "\n";
  }
}

void print_report_csv(const blockcv::BibdReport& report) {
  std::cout << "field,value\n";
  std::cout << "is_bibd," << (report.is_bibd ? "true" : "false") << "\n";
  std::cout << "n," << report.n << "\n";
  std::cout << "b," << report.b << "\n";
  if (report.k) std::cout << "k," << *report.k << "\n";
  if (report.r) std::cout << "r," << *report.r << "\n";
  if (report.lambda) std::cout << "lambda," << *report.lambda << "\n";
  for (const blockcv::Violation& v : report.violations) {
    std::cout << "violation," << blockcv::to_string(v.kind) << "\n";
  }
}

int run_bibd(const BibdArgs& args) {
  if (!args.design_file.empty()) {
    const blockcv::Design d = blockcv::design_from_file(args.design_file);
    const blockcv::BibdReport report = blockcv::verify_bibd(d);
    if (args.format == "json") {
      emit_json(report);
    } else if (args.format == "csv") {
      print_report_csv(report);
    } else {
      print_report_pretty(report);
    }
    return kExitOk;
  }

  // --hv n,v: verify the actual hv design and attach the certificate.
  const auto comma = args.hv.find(',');
  int n = 0;
  int v = 0;
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    n = std::stoi(args.hv.substr(0, comma));
    v = std::stoi(args.hv.substr(comma + 1));
  } catch (const std::logic_error&) {
    throw blockcv::Error("--hv expects 'n,v', got '" + args.hv + "'");
  }

  const blockcv::BibdReport report =
      blockcv::verify_bibd(blockcv::hv_design(n, v));
  const blockcv::NotBibdCertificate cert = blockcv::not_bibd_certificate(n, v);

  if (args.format == "json") {
    emit_json(json{{"report", report}, {"certificate", cert}});
  } else if (args.format == "csv") {
    print_report_csv(report);
    if (cert.evidence1) {
      std::cout << "evidence1_x," << cert.evidence1->x.str() << "\n";
      std::cout << "evidence1_y," << cert.evidence1->y.str() << "\n";
      std::cout << "evidence1_integral,"
                << (cert.evidence1->integral ? "true" : "false") << "\n";
    }
    if (cert.evidence2) {
      std::cout << "evidence2_r_witness,r[" << cert.evidence2->sample_a
                << "]=" << cert.evidence2->r_a << " r["
                << cert.evidence2->sample_b << "]=" << cert.evidence2->r_b
                << "\n";
    }
  } else {
    print_report_pretty(report);
    std::cout << "certificate: " << cert.summary << "\n";
    if (cert.evidence1) {
      std::cout << "evidence 1: forced (r, lambda) = ("
                << cert.evidence1->x.str() << ", " << cert.evidence1->y.str()
                << ")" << (cert.evidence1->integral ? "" : " -- not integers")
                << "\n";
    }
    if (cert.evidence2) {
      std::cout << "evidence 2: r[" << cert.evidence2->sample_a
                << "] = " << cert.evidence2->r_a << " vs r["
                << cert.evidence2->sample_b << "] = " << cert.evidence2->r_b
                << "; lambda" << "(" << cert.evidence2->pair_a[0] << ","
                << cert.evidence2->pair_a[1]
                << ") = " << cert.evidence2->lambda_a << " vs lambda("
                << cert.evidence2->pair_b[0] << "," << cert.evidence2->pair_b[1]
                << ") = " << cert.evidence2->lambda_b << "\n";
    }
    if (cert.evidence3) {
      std::cout << "evidence 3: brute-force counts "
                << (cert.evidence3->matches_analytic
                        ? "confirm the closed forms"
                        : "DISAGREE with the closed forms")
                << "\n";
    }
  }
  return kExitOk;
}

struct CvArgs {
  std::string data_file;
  int h = 0;
  int v = 0;
  std::string evaluator = "train-mean";
  int threads = 1;
  std::string format = "pretty";
};

int run_cv(const CvArgs& args) {
  const std::vector<double> series = read_series(args.data_file);
  const int n = static_cast<int>(series.size());
  const blockcv::SplitConfig cfg{n, args.h, args.v};

  blockcv::Evaluator eval;
  if (args.evaluator == "train-mean") {
    eval = blockcv::train_mean_evaluator();
  } else {
    throw blockcv::Error("unknown evaluator '" + args.evaluator +
                         "' (available: train-mean)");
  }

  const blockcv::CvResult result = blockcv::cv_hv(series, cfg, eval,
                                                  args.threads);

  // Ratio of test-set size to the smallest training set, as a diagnostic.
  const int n_v = 2 * args.v + 1;
  const int n_c = n - 2 * args.v - 2 * args.h - 1;
  std::cerr << "diagnostic: n_v = " << n_v << ", smallest n_c = " << n_c
            << ", n_v/n_c = " << std::fixed << std::setprecision(2)
            << static_cast<double>(n_v) / n_c << "\n";

  if (args.format == "json") {
    emit_json(result);
  } else if (args.format == "csv") {
    std::cout << blockcv::cv_csv(result);
  } else {
    std::cout << "n = " << n << ", h = " << args.h << ", v = " << args.v
              << ", splits = " << result.per_split.size() << "\n";
    std::cout << "CV score = " << std::setprecision(17) << result.score
              << "\n";
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string config_file;
  std::uint64_t seed = 0;
  bool has_seed = false;
  int threads = 1;
  std::string format = "pretty";
};

int run_experiment_cmd(const ExperimentArgs& args) {
  blockcv::ExperimentConfig cfg;
  if (args.config_file.empty()) {
    cfg = blockcv::default_experiment_config();
  } else {
    std::ifstream in(args.config_file);
    if (!in) {
      throw blockcv::Error("cannot open config file: " + args.config_file);
    }
    json j;
    try {
      in >> j;
      cfg = j.get<blockcv::ExperimentConfig>();
    } catch (const json::exception& e) {
      throw blockcv::Error("cannot parse config: " + std::string(e.what()));
    }
  }
  if (args.has_seed) cfg.dgp.seed = args.seed;

  const blockcv::FrequencyTable table =
      blockcv::run_experiment(cfg, args.threads);

  if (args.format == "json") {
    emit_json(table);
  } else if (args.format == "csv") {
    std::cout << blockcv::frequency_csv(table);
  } else {
    std::cout << "replications = " << cfg.replications
              << ", n = " << cfg.dgp.n << ", rho = " << cfg.dgp.rho
              << ", sigma = " << cfg.dgp.sigma << ", seed = " << cfg.dgp.seed
              << "\n";
    std::cout << "true model: "
              << blockcv::candidate_name(cfg.candidates[static_cast<
                     std::size_t>(table.true_candidate)])
              << "\n";
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      const blockcv::Method& method = cfg.methods[m];
      std::cout << method.name << " (h=" << method.h << ", v=" << method.v
                << "):";
      for (std::size_t c = 0; c < cfg.candidates.size(); ++c) {
        std::cout << "  " << blockcv::candidate_name(cfg.candidates[c]) << "="
                  << table.counts[m][c];
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hv-block cross-validation toolkit"};
  app.require_subcommand(1);
  // --h is a domain option (the gap half-width), so help is --help only.
  app.set_help_flag("--help", "Print help");

  const auto add_subcommand = [&app](const std::string& name,
                                     const std::string& description) {
    CLI::App* cmd = app.add_subcommand(name, description);
    cmd->set_help_flag("--help", "Print help");
    return cmd;
  };
  const auto add_format = [](CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"pretty", "csv", "json"}))
        ->capture_default_str();
  };

  SplitsArgs splits_args;
  CLI::App* splits = add_subcommand(
      "splits", "Enumerate hv-block train/test/gap splits");
  splits->add_option("--n", splits_args.n, "Series length")->required();
  splits->add_option("--h", splits_args.h, "Gap half-width");
  splits->add_option("--v", splits_args.v, "Test half-width");
  CLI::Option* center_opt =
      splits->add_option("--center", splits_args.center,
                         "Only the split centered here");
  add_format(splits, splits_args.format);

  OccurrenceArgs occurrence_args;
  CLI::App* occurrence = add_subcommand(
      "occurrence", "Per-sample and per-pair counts over the test blocks");
  occurrence->add_option("--n", occurrence_args.n, "Series length")
      ->required();
  occurrence->add_option("--v", occurrence_args.v, "Test half-width");
  occurrence->add_option("--method", occurrence_args.method,
                         "analytic, bruteforce, or both (with diff)")
      ->check(CLI::IsMember({"analytic", "bruteforce", "both"}))
      ->capture_default_str();
  add_format(occurrence, occurrence_args.format);

  BibdArgs bibd_args;
  CLI::App* bibd = add_subcommand(
      "bibd", "Verify a design or the hv-block family against the BIBD "
              "conditions");
  CLI::Option* design_opt = bibd->add_option(
      "--design", bibd_args.design_file, "Design file ('n <n>' then blocks)");
  CLI::Option* hv_opt =
      bibd->add_option("--hv", bibd_args.hv, "hv family as 'n,v'");
  design_opt->excludes(hv_opt);
  add_format(bibd, bibd_args.format);

  CvArgs cv_args;
  CLI::App* cv = add_subcommand(
      "cv", "Score a series by hv-block cross-validation");
  cv->add_option("--data", cv_args.data_file, "Series file (numbers)")
      ->required();
  cv->add_option("--h", cv_args.h, "Gap half-width");
  cv->add_option("--v", cv_args.v, "Test half-width");
  cv->add_option("--evaluator", cv_args.evaluator, "Per-split evaluator")
      ->check(CLI::IsMember({"train-mean"}))
      ->capture_default_str();
  cv->add_option("--threads", cv_args.threads, "Parallel split evaluation");
  add_format(cv, cv_args.format);

  ExperimentArgs experiment_args;
  CLI::App* experiment = add_subcommand(
      "experiment", "Selection-frequency comparison of ungapped, h-block "
                    "and hv-block CV");
  experiment->add_option("--config", experiment_args.config_file,
                         "Experiment config (JSON)");
  CLI::Option* seed_opt =
      experiment->add_option("--seed", experiment_args.seed,
                             "Base seed (overrides the config)")
          ->envname("BLOCKCV_SEED");
  experiment->add_option("--threads", experiment_args.threads,
                         "Parallel replications");
  add_format(experiment, experiment_args.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  splits_args.has_center = center_opt->count() > 0;
  experiment_args.has_seed = seed_opt->count() > 0;
  if (bibd->parsed() && bibd_args.design_file.empty() &&
      bibd_args.hv.empty()) {
    std::cerr << "error: bibd needs --design or --hv\n";
    return kExitUsage;
  }

  try {
    if (splits->parsed()) return run_splits(splits_args);
    if (occurrence->parsed()) return run_occurrence(occurrence_args);
    if (bibd->parsed()) return run_bibd(bibd_args);
    if (cv->parsed()) return run_cv(cv_args);
    if (experiment->parsed()) return run_experiment_cmd(experiment_args);
  } catch (const blockcv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
