#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "blockcv/bibd.hpp"
#include "blockcv/cv.hpp"
#include "blockcv/experiment.hpp"
#include "blockcv/occurrence.hpp"
#include "blockcv/split.hpp"

// JSON bindings (nlohmann ADL hooks) and CSV emitters for every external
// format. Indices are 1-based and arrays ascending in all of them; emission
// is byte-stable for identical inputs.

namespace blockcv {

void to_json(nlohmann::json& j, const Split& s);
void from_json(const nlohmann::json& j, Split& s);

void to_json(nlohmann::json& j, const OccurrenceProfile& p);
void from_json(const nlohmann::json& j, OccurrenceProfile& p);

void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);

void to_json(nlohmann::json& j, const Violation& v);
void from_json(const nlohmann::json& j, Violation& v);

void to_json(nlohmann::json& j, const BibdReport& report);
void from_json(const nlohmann::json& j, BibdReport& report);

void to_json(nlohmann::json& j, const Evidence1& e);
void from_json(const nlohmann::json& j, Evidence1& e);

void to_json(nlohmann::json& j, const Evidence2& e);
void from_json(const nlohmann::json& j, Evidence2& e);

void to_json(nlohmann::json& j, const Evidence3& e);
void from_json(const nlohmann::json& j, Evidence3& e);

void to_json(nlohmann::json& j, const NotBibdCertificate& cert);
void from_json(const nlohmann::json& j, NotBibdCertificate& cert);

void to_json(nlohmann::json& j, const CvResult& result);
void from_json(const nlohmann::json& j, CvResult& result);

void to_json(nlohmann::json& j, const Dgp& dgp);
void from_json(const nlohmann::json& j, Dgp& dgp);

void to_json(nlohmann::json& j, const Method& m);
void from_json(const nlohmann::json& j, Method& m);

// Candidates appear as arrays of dictionary column names, e.g.
// ["const", "z1"].
void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
void from_json(const nlohmann::json& j, ExperimentConfig& cfg);

void to_json(nlohmann::json& j, const FrequencyTable& table);
void from_json(const nlohmann::json& j, FrequencyTable& table);

// n rows of n comma-separated integers, no header.
std::string occurrence_csv(const OccurrenceProfile& p);

std::string split_csv_header();
std::string split_csv_row(const Split& s);

// "center,loss" rows, one per split.
std::string cv_csv(const CvResult& result);

// "method,candidate,count,frequency" rows.
std::string frequency_csv(const FrequencyTable& table);

}  // namespace blockcv
