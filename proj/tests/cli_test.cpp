// End-to-end tests for the blockcv command-line tool, run as subprocesses
// against the built binary.

#include <gtest/gtest.h>

#include <string>

#include <nlohmann/json.hpp>

#include "blockcv/serialize.hpp"
#include "subprocess.hpp"

namespace blockcv {
namespace {

using nlohmann::json;
using blockcv_testing::CliResult;
using blockcv_testing::run_cli;
using blockcv_testing::temp_path;
using blockcv_testing::write_file;

TEST(CliSplits, SingleCenterJsonMatchesTheLibrary) {
  const CliResult r =
      run_cli("splits --n 7 --h 1 --v 1 --center 2 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.get<Split>(), split_at({7, 1, 1}, 2));
  EXPECT_EQ(j.at("test"), json::array({1, 2, 3}));
  EXPECT_EQ(j.at("gap"), json::array({4}));
  EXPECT_EQ(j.at("train"), json::array({5, 6, 7}));
}

TEST(CliSplits, CountingViewListsAllSplits) {
  // n = 5, h = 1, v = 1 is fine for enumeration even though it is too short
  // for CV use.
  const CliResult r = run_cli("splits --n 5 --h 1 --v 1 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 3u);
  // Round-trips through the repository's own parser.
  for (const json& element : j) {
    EXPECT_EQ(json(element.get<Split>()).dump(), element.dump());
  }
}

TEST(CliSplits, ValidationErrorNamesTheBoundAndExits2) {
  const CliResult r = run_cli("splits --n 4 --h 0 --v 2");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("n >= 2v+1"), std::string::npos) << r.err;
}

TEST(CliSplits, CsvListsQuotedIndexSets) {
  const CliResult r = run_cli("splits --n 7 --h 1 --v 1 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("center,test,gap,train\n"), std::string::npos);
  EXPECT_NE(r.out.find("4,\"3 4 5\",\"2 6\",\"1 7\"\n"), std::string::npos);
}

TEST(CliOccurrence, GoldenCsvMatrix) {
  const CliResult r = run_cli("occurrence --n 10 --v 2 --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out,
            "1,1,1,1,1,0,0,0,0,0\n"
            "1,2,2,2,2,1,0,0,0,0\n"
            "1,2,3,3,3,2,1,0,0,0\n"
            "1,2,3,4,4,3,2,1,0,0\n"
            "1,2,3,4,5,4,3,2,1,0\n"
            "0,1,2,3,4,5,4,3,2,1\n"
            "0,0,1,2,3,4,4,3,2,1\n"
            "0,0,0,1,2,3,3,3,2,1\n"
            "0,0,0,0,1,2,2,2,2,1\n"
            "0,0,0,0,0,1,1,1,1,1\n");
}

TEST(CliOccurrence, SingleBlockIsAllOnes) {
  const CliResult r = run_cli("occurrence --n 7 --v 3 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out,
            "1,1,1,1,1,1,1\n1,1,1,1,1,1,1\n1,1,1,1,1,1,1\n1,1,1,1,1,1,1\n"
            "1,1,1,1,1,1,1\n1,1,1,1,1,1,1\n1,1,1,1,1,1,1\n");
}

TEST(CliOccurrence, BothMethodsAgreeWithEmptyDiff) {
  const CliResult r = run_cli("occurrence --n 40 --v 5 --method both --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("diff").empty());
  EXPECT_EQ(j.at("analytic"), j.at("bruteforce"));
  // Round-trip through the repository parser.
  EXPECT_EQ(j.at("analytic").get<OccurrenceProfile>(),
            occurrence_matrix(40, 5));
}

TEST(CliOccurrence, BothCsvCarriesSections) {
  const CliResult r = run_cli("occurrence --n 9 --v 1 --method both --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("# analytic\n"), std::string::npos);
  EXPECT_NE(r.out.find("# bruteforce\n"), std::string::npos);
  // The diff section is present and empty.
  EXPECT_NE(r.out.find("# diff\n"), std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.size() - 7), "# diff\n");
}

TEST(CliBibd, VerifiesADesignFile) {
  const std::string path = temp_path("design_731.txt");
  write_file(path,
             "# balanced design on seven points\n"
             "n 7\n"
             "1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n");
  const CliResult r = run_cli("bibd --design " + path + " --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("is_bibd").get<bool>());
  const BibdReport report = j.get<BibdReport>();
  EXPECT_EQ(report.k, 3);
  EXPECT_EQ(report.b, 7);
  EXPECT_EQ(report.r, 3);
  EXPECT_EQ(report.lambda, 1);
}

TEST(CliBibd, HvShorthandCarriesTheCertificate) {
  const CliResult r = run_cli("bibd --hv 10,1 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_FALSE(j.at("report").at("is_bibd").get<bool>());
  EXPECT_EQ(j.at("certificate").at("evidence1").at("x").get<std::string>(),
            "12/5");
  EXPECT_EQ(j.at("certificate").at("evidence1").at("y").get<std::string>(),
            "8/15");
  EXPECT_FALSE(
      j.at("certificate").at("evidence1").at("integral").get<bool>());
  // Round-trip through the repository parser.
  const NotBibdCertificate cert =
      j.at("certificate").get<NotBibdCertificate>();
  EXPECT_EQ(cert.n, 10);
  EXPECT_EQ(cert.v, 1);
}

TEST(CliBibd, HvOccurrenceWitness) {
  const CliResult r = run_cli("bibd --hv 10,2 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json e2 = json::parse(r.out).at("certificate").at("evidence2");
  EXPECT_EQ(e2.at("sample_a").get<int>(), 1);
  EXPECT_EQ(e2.at("r_a").get<int>(), 1);
  EXPECT_EQ(e2.at("sample_b").get<int>(), 5);
  EXPECT_EQ(e2.at("r_b").get<int>(), 5);
}

TEST(CliBibd, NeedsDesignOrHv) {
  const CliResult r = run_cli("bibd");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(CliBibd, MalformedFileExits2) {
  const std::string path = temp_path("design_bad.txt");
  write_file(path, "n 3\n1 2 9\n");
  const CliResult r = run_cli("bibd --design " + path);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("outside"), std::string::npos);
}

TEST(CliCv, LeaveOneOutFixture) {
  const std::string path = temp_path("series5.txt");
  write_file(path, "1 2 4 8 16\n");
  const CliResult r =
      run_cli("cv --data " + path + " --h 0 --v 0 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("score").get<double>(), 46.5, 1e-12);
  EXPECT_EQ(j.at("per_split").size(), 5u);
  EXPECT_EQ(j.at("n").get<int>(), 5);
  // stderr carries the train/test size diagnostic.
  EXPECT_NE(r.err.find("n_v"), std::string::npos);
  // Round-trip through the repository parser.
  const CvResult result = j.get<CvResult>();
  EXPECT_EQ(json(result).dump(), j.dump());
}

TEST(CliCv, AcceptsCommaSeparatedData) {
  const std::string path = temp_path("series_commas.txt");
  write_file(path, "1,2,4,8,16\n");
  const CliResult r =
      run_cli("cv --data " + path + " --h 0 --v 0 --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 12), "center,loss\n");
  EXPECT_NE(r.out.find("1,42.25\n"), std::string::npos);
}

TEST(CliCv, TooShortSeriesExits2) {
  const std::string path = temp_path("series_short.txt");
  write_file(path, "1 2 3 4 5\n");
  const CliResult r = run_cli("cv --data " + path + " --h 1 --v 1");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("n >= 2v+2h+2"), std::string::npos);
}

std::string small_experiment_config(double sigma) {
  json j = json{
      {"dgp",
       {{"n", 40},
        {"beta", {1.0, 2.0, 0.0, 0.0, 0.0}},
        {"rho", 0.5},
        {"sigma", sigma},
        {"seed", 7}}},
      {"candidates", {{"const", "z1"}, {"const", "z1", "z2"}}},
      {"methods",
       {{{"name", "ungapped"}, {"h", 0}, {"v", 0}},
        {{"name", "h-block"}, {"h", 4}, {"v", 0}},
        {{"name", "hv-block"}, {"h", 4}, {"v", 10}}}},
      {"replications", 3}};
  return j.dump();
}

TEST(CliExperiment, NoiselessConfigSelectsTheTruthEverywhere) {
  const std::string path = temp_path("experiment_noiseless.json");
  write_file(path, small_experiment_config(0.0));
  const CliResult r =
      run_cli("experiment --config " + path + " --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("true_candidate").get<std::string>(), "const+z1");
  for (const auto& row : j.at("counts")) {
    EXPECT_EQ(row.at(0).get<long long>(), 3);
    EXPECT_EQ(row.at(1).get<long long>(), 0);
  }
  // Round-trip through the repository parser.
  const FrequencyTable table = j.get<FrequencyTable>();
  EXPECT_EQ(json(table).dump(), j.dump());
}

TEST(CliExperiment, SeedFlagOverridesTheConfig) {
  const std::string path = temp_path("experiment_seed.json");
  write_file(path, small_experiment_config(1.0));
  const CliResult r =
      run_cli("experiment --config " + path + " --seed 123 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("config").at("dgp").at("seed")
                .get<std::uint64_t>(),
            123u);
}

TEST(CliExperiment, EnvironmentSeedIsTheFallback) {
  const std::string path = temp_path("experiment_env.json");
  write_file(path, small_experiment_config(1.0));
  const CliResult env_only = run_cli(
      "experiment --config " + path + " --format json", "BLOCKCV_SEED=77");
  ASSERT_EQ(env_only.exit_code, 0) << env_only.err;
  EXPECT_EQ(json::parse(env_only.out).at("config").at("dgp").at("seed")
                .get<std::uint64_t>(),
            77u);

  const CliResult flag_wins =
      run_cli("experiment --config " + path + " --seed 5 --format json",
              "BLOCKCV_SEED=77");
  ASSERT_EQ(flag_wins.exit_code, 0) << flag_wins.err;
  EXPECT_EQ(json::parse(flag_wins.out).at("config").at("dgp").at("seed")
                .get<std::uint64_t>(),
            5u);
}

TEST(CliExperiment, CsvHasTheDocumentedColumns) {
  const std::string path = temp_path("experiment_csv.json");
  write_file(path, small_experiment_config(0.0));
  const CliResult r = run_cli("experiment --config " + path + " --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 32), "method,candidate,count,frequency");
  EXPECT_NE(r.out.find("ungapped,const+z1,3,1\n"), std::string::npos);
}

TEST(CliGeneral, UnknownArgumentsExit2) {
  EXPECT_EQ(run_cli("splits --n 7 --wat 3").exit_code, 2);
  EXPECT_EQ(run_cli("nonsense").exit_code, 2);
}

TEST(CliGeneral, HelpExitsZero) {
  EXPECT_EQ(run_cli("--help").exit_code, 0);
  EXPECT_EQ(run_cli("splits --help").exit_code, 0);
}

}  // namespace
}  // namespace blockcv
