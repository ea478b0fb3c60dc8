#include "blockcv/serialize.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace blockcv {

namespace {

using nlohmann::json;

// Rebuilds a (possibly two-piece) index set from its sorted 1-based listing.
// `left` receives the piece below the test block, `right` the piece above.
void ranges_from_indices(const std::vector<int>& indices, int test_first,
                         IndexRange& left, IndexRange& right) {
  left = {1, 0};
  right = {1, 0};
  std::vector<int> lo;
  std::vector<int> hi;
  for (int i : indices) (i < test_first ? lo : hi).push_back(i);
  if (!lo.empty()) left = {lo.front(), lo.back()};
  if (!hi.empty()) right = {hi.front(), hi.back()};
}

ViolationKind violation_kind_from_string(const std::string& s) {
  for (ViolationKind kind :
       {ViolationKind::kBlockSize, ViolationKind::kKTooSmall,
        ViolationKind::kIncompleteness, ViolationKind::kRNotConstant,
        ViolationKind::kLambdaNotConstant}) {
    if (s == to_string(kind)) return kind;
  }
  throw Error("unknown violation kind '" + s + "'");
}

std::string quote_indices(const std::vector<int>& indices) {
  std::string out = "\"";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(indices[i]);
  }
  out += '"';
  return out;
}

std::string format_loss(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

}  // namespace

void to_json(json& j, const Split& s) {
  j = json{{"center", s.center},
           {"test", s.test_indices()},
           {"gap", s.gap_indices()},
           {"train", s.train_indices()}};
}

void from_json(const json& j, Split& s) {
  s = Split{};
  j.at("center").get_to(s.center);
  const auto test = j.at("test").get<std::vector<int>>();
  if (test.empty()) throw Error("split has an empty test block");
  s.test = {test.front(), test.back()};
  ranges_from_indices(j.at("gap").get<std::vector<int>>(), s.test.first,
                      s.gap_left, s.gap_right);
  ranges_from_indices(j.at("train").get<std::vector<int>>(), s.test.first,
                      s.train_left, s.train_right);
}

void to_json(json& j, const OccurrenceProfile& p) {
  json rows = json::array();
  for (int i = 1; i <= p.n; ++i) {
    json row = json::array();
    for (int k = 1; k <= p.n; ++k) row.push_back(p.lambda_at(i, k));
    rows.push_back(std::move(row));
  }
  j = json{{"n", p.n}, {"v", p.v}, {"r", p.r}, {"lambda", std::move(rows)}};
}

void from_json(const json& j, OccurrenceProfile& p) {
  p = OccurrenceProfile{};
  j.at("n").get_to(p.n);
  j.at("v").get_to(p.v);
  j.at("r").get_to(p.r);
  const auto rows = j.at("lambda").get<std::vector<std::vector<int>>>();
  p.lam.reserve(static_cast<std::size_t>(p.n) * p.n);
  for (const auto& row : rows) {
    p.lam.insert(p.lam.end(), row.begin(), row.end());
  }
  if (static_cast<int>(p.r.size()) != p.n ||
      p.lam.size() != static_cast<std::size_t>(p.n) * p.n) {
    throw Error("occurrence profile dimensions do not match n");
  }
}

void to_json(json& j, const Rational& r) { j = r.str(); }

void from_json(const json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<long long>());
    return;
  }
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      r = Rational(std::stoll(s));
    } else {
      r = Rational(std::stoll(s.substr(0, slash)),
                   std::stoll(s.substr(slash + 1)));
    }
  } catch (const std::logic_error&) {
    throw Error("cannot parse rational '" + s + "'");
  }
}

void to_json(json& j, const Violation& v) {
  j = json{{"kind", to_string(v.kind)},
           {"subject_a", v.subject_a},
           {"count_a", v.count_a},
           {"subject_b", v.subject_b},
           {"count_b", v.count_b},
           {"message", v.message}};
}

void from_json(const json& j, Violation& v) {
  v = Violation{};
  v.kind = violation_kind_from_string(j.at("kind").get<std::string>());
  j.at("subject_a").get_to(v.subject_a);
  j.at("count_a").get_to(v.count_a);
  j.at("subject_b").get_to(v.subject_b);
  j.at("count_b").get_to(v.count_b);
  j.at("message").get_to(v.message);
}

void to_json(json& j, const BibdReport& report) {
  j = json{{"n", report.n},
           {"b", report.b},
           {"k", report.k ? json(*report.k) : json()},
           {"r", report.r ? json(*report.r) : json()},
           {"lambda", report.lambda ? json(*report.lambda) : json()},
           {"is_bibd", report.is_bibd},
           {"violations", report.violations}};
  if (report.identities) {
    j["identities"] =
        json{{"r_times_k_minus_1", report.identities->r_times_k_minus_1},
             {"lambda_times_n_minus_1",
              report.identities->lambda_times_n_minus_1},
             {"b_times_k", report.identities->b_times_k},
             {"n_times_r", report.identities->n_times_r}};
  }
}

void from_json(const json& j, BibdReport& report) {
  report = BibdReport{};
  j.at("n").get_to(report.n);
  j.at("b").get_to(report.b);
  if (!j.at("k").is_null()) report.k = j.at("k").get<int>();
  if (!j.at("r").is_null()) report.r = j.at("r").get<long long>();
  if (!j.at("lambda").is_null()) {
    report.lambda = j.at("lambda").get<long long>();
  }
  j.at("is_bibd").get_to(report.is_bibd);
  j.at("violations").get_to(report.violations);
  if (j.contains("identities")) {
    BibdReport::Identities ids;
    const json& i = j.at("identities");
    i.at("r_times_k_minus_1").get_to(ids.r_times_k_minus_1);
    i.at("lambda_times_n_minus_1").get_to(ids.lambda_times_n_minus_1);
    i.at("b_times_k").get_to(ids.b_times_k);
    i.at("n_times_r").get_to(ids.n_times_r);
    report.identities = ids;
  }
}

void to_json(json& j, const Evidence1& e) {
  j = json{{"x", e.x},
           {"y", e.y},
           {"integral", e.integral},
           {"conclusive", e.conclusive}};
}

void from_json(const json& j, Evidence1& e) {
  e = Evidence1{};
  j.at("x").get_to(e.x);
  j.at("y").get_to(e.y);
  j.at("integral").get_to(e.integral);
  j.at("conclusive").get_to(e.conclusive);
}

void to_json(json& j, const Evidence2& e) {
  j = json{{"sample_a", e.sample_a},
           {"r_a", e.r_a},
           {"sample_b", e.sample_b},
           {"r_b", e.r_b},
           {"pair_a", e.pair_a},
           {"lambda_a", e.lambda_a},
           {"pair_b", e.pair_b},
           {"lambda_b", e.lambda_b},
           {"conclusive", e.conclusive}};
}

void from_json(const json& j, Evidence2& e) {
  e = Evidence2{};
  j.at("sample_a").get_to(e.sample_a);
  j.at("r_a").get_to(e.r_a);
  j.at("sample_b").get_to(e.sample_b);
  j.at("r_b").get_to(e.r_b);
  j.at("pair_a").get_to(e.pair_a);
  j.at("lambda_a").get_to(e.lambda_a);
  j.at("pair_b").get_to(e.pair_b);
  j.at("lambda_b").get_to(e.lambda_b);
  j.at("conclusive").get_to(e.conclusive);
}

void to_json(json& j, const Evidence3& e) {
  j = json{{"counts", e.counts}, {"matches_analytic", e.matches_analytic}};
}

void from_json(const json& j, Evidence3& e) {
  e = Evidence3{};
  j.at("counts").get_to(e.counts);
  j.at("matches_analytic").get_to(e.matches_analytic);
}

void to_json(json& j, const NotBibdCertificate& cert) {
  j = json{{"n", cert.n},
           {"v", cert.v},
           {"degenerate", cert.degenerate},
           {"summary", cert.summary},
           {"evidence1", cert.evidence1 ? json(*cert.evidence1) : json()},
           {"evidence2", cert.evidence2 ? json(*cert.evidence2) : json()},
           {"evidence3", cert.evidence3 ? json(*cert.evidence3) : json()}};
}

void from_json(const json& j, NotBibdCertificate& cert) {
  cert = NotBibdCertificate{};
  j.at("n").get_to(cert.n);
  j.at("v").get_to(cert.v);
  j.at("degenerate").get_to(cert.degenerate);
  j.at("summary").get_to(cert.summary);
  if (!j.at("evidence1").is_null()) {
    cert.evidence1 = j.at("evidence1").get<Evidence1>();
  }
  if (!j.at("evidence2").is_null()) {
    cert.evidence2 = j.at("evidence2").get<Evidence2>();
  }
  if (!j.at("evidence3").is_null()) {
    cert.evidence3 = j.at("evidence3").get<Evidence3>();
  }
}

void to_json(json& j, const CvResult& result) {
  j = json{{"score", result.score},
           {"per_split", result.per_split},
           {"n", result.config.n},
           {"h", result.config.h},
           {"v", result.config.v}};
}

void from_json(const json& j, CvResult& result) {
  result = CvResult{};
  j.at("score").get_to(result.score);
  j.at("per_split").get_to(result.per_split);
  j.at("n").get_to(result.config.n);
  j.at("h").get_to(result.config.h);
  j.at("v").get_to(result.config.v);
}

void to_json(json& j, const Dgp& dgp) {
  j = json{{"n", dgp.n},
           {"beta", dgp.beta},
           {"rho", dgp.rho},
           {"sigma", dgp.sigma},
           {"seed", dgp.seed}};
}

void from_json(const json& j, Dgp& dgp) {
  dgp = Dgp{};
  j.at("n").get_to(dgp.n);
  j.at("beta").get_to(dgp.beta);
  j.at("rho").get_to(dgp.rho);
  j.at("sigma").get_to(dgp.sigma);
  j.at("seed").get_to(dgp.seed);
}

void to_json(json& j, const Method& m) {
  j = json{{"name", m.name}, {"h", m.h}, {"v", m.v}};
}

void from_json(const json& j, Method& m) {
  m = Method{};
  j.at("name").get_to(m.name);
  j.at("h").get_to(m.h);
  j.at("v").get_to(m.v);
}

void to_json(json& j, const ExperimentConfig& cfg) {
  json candidates = json::array();
  for (const auto& columns : cfg.candidates) {
    json names = json::array();
    for (int c : columns) {
      names.push_back(dictionary_names()[static_cast<std::size_t>(c)]);
    }
    candidates.push_back(std::move(names));
  }
  j = json{{"dgp", cfg.dgp},
           {"candidates", std::move(candidates)},
           {"methods", cfg.methods},
           {"replications", cfg.replications}};
}

void from_json(const json& j, ExperimentConfig& cfg) {
  cfg = ExperimentConfig{};
  j.at("dgp").get_to(cfg.dgp);
  for (const json& names : j.at("candidates")) {
    std::vector<int> columns;
    for (const json& name : names) {
      columns.push_back(dictionary_column(name.get<std::string>()));
    }
    cfg.candidates.push_back(std::move(columns));
  }
  j.at("methods").get_to(cfg.methods);
  j.at("replications").get_to(cfg.replications);
}

void to_json(json& j, const FrequencyTable& table) {
  json frequencies = json::array();
  for (const auto& row : table.counts) {
    json freq_row = json::array();
    for (long long count : row) {
      freq_row.push_back(static_cast<double>(count) /
                         table.config.replications);
    }
    frequencies.push_back(std::move(freq_row));
  }
  j = json{{"config", table.config},
           {"true_candidate",
            candidate_name(table.config.candidates[static_cast<std::size_t>(
                table.true_candidate)])},
           {"counts", table.counts},
           {"frequencies", std::move(frequencies)}};
}

void from_json(const json& j, FrequencyTable& table) {
  table = FrequencyTable{};
  j.at("config").get_to(table.config);
  j.at("counts").get_to(table.counts);
  const std::string truth = j.at("true_candidate").get<std::string>();
  table.true_candidate = -1;
  for (std::size_t i = 0; i < table.config.candidates.size(); ++i) {
    if (candidate_name(table.config.candidates[i]) == truth) {
      table.true_candidate = static_cast<int>(i);
      break;
    }
  }
  if (table.true_candidate < 0) {
    throw Error("true candidate '" + truth + "' not among the candidates");
  }
}

std::string occurrence_csv(const OccurrenceProfile& p) {
  std::string out;
  for (int i = 1; i <= p.n; ++i) {
    for (int k = 1; k <= p.n; ++k) {
      if (k > 1) out += ',';
      out += std::to_string(p.lambda_at(i, k));
    }
    out += '\n';
  }
  return out;
}

std::string split_csv_header() { return "center,test,gap,train\n"; }

std::string split_csv_row(const Split& s) {
  std::string out = std::to_string(s.center);
  out += ',';
  out += quote_indices(s.test_indices());
  out += ',';
  out += quote_indices(s.gap_indices());
  out += ',';
  out += quote_indices(s.train_indices());
  out += '\n';
  return out;
}

std::string cv_csv(const CvResult& result) {
  std::string out = "center,loss\n";
  for (std::size_t idx = 0; idx < result.per_split.size(); ++idx) {
    out += std::to_string(result.config.first_center() +
                          static_cast<int>(idx));
    out += ',';
    out += format_loss(result.per_split[idx]);
    out += '\n';
  }
  return out;
}

std::string frequency_csv(const FrequencyTable& table) {
  std::ostringstream out;
  out << "method,candidate,count,frequency\n";
  for (std::size_t m = 0; m < table.counts.size(); ++m) {
    for (std::size_t c = 0; c < table.counts[m].size(); ++c) {
      out << table.config.methods[m].name << ','
          << candidate_name(table.config.candidates[c]) << ','
          << table.counts[m][c] << ','
          << (static_cast<double>(table.counts[m][c]) /
              table.config.replications)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace blockcv
