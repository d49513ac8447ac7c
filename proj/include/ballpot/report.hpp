#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballpot/scenario.hpp"

namespace ballpot {

nlohmann::json recordToJson(const ResultRecord& rec);
ResultRecord recordFromJson(const nlohmann::json& doc);
ResultRecord loadRecord(const std::filesystem::path& path);

/// scenario,check,quantity,abscissa,value,std_error,samples
std::string csvHeader();
/// Header plus one row per table entry, records in scenario-name order; doubles as %.17g.
std::string recordsToCsv(std::span<const ResultRecord> records);

/// One block per record, in scenario-name order.
std::string summaryText(std::span<const ResultRecord> records);

/// Writes via a temporary file and rename, so readers never see a partial file.
void writeFileAtomic(const std::filesystem::path& path, const std::string& content);

struct WrittenFiles {
  std::filesystem::path record;
  std::filesystem::path csv;
};

/// <out_dir>/<scenario>.record.json and <out_dir>/<scenario>.csv.
WrittenFiles writeRecord(const ResultRecord& rec, const std::filesystem::path& out_dir);

}  // namespace ballpot
