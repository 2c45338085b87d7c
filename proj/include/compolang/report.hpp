#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace compolang {

// %.17g rendering; round-trips doubles exactly.
std::string format_double(double v);

// One CSV line of an experiment report: either a single training run or a
// per-condition aggregate. Absent fields serialize as empty cells.
struct ReportRow {
  std::string row_type;  // "run" | "aggregate"
  std::string branching;
  std::string curriculum;
  std::optional<int> max_complexity;
  std::optional<double> fraction;
  std::optional<int> run_index;
  std::optional<std::uint64_t> seed;
  std::optional<double> accuracy;
  std::optional<int> test_correct;
  std::optional<int> test_size;
  std::optional<int> n_runs;
  std::optional<double> mean_accuracy;
  std::optional<double> perfect_share;
  std::optional<double> zero_correct_share;
  std::optional<int> max_test_correct;
};

struct ExperimentReport {
  std::string experiment_id;
  nlohmann::json config;  // resolved options incl. the master seed
  std::vector<ReportRow> rows;
  double wall_seconds = 0.0;  // kept out of the CSV
};

// Writes the CSV body plus a sidecar config snapshot at path + ".config.json".
void write_report(const ExperimentReport& report, const std::filesystem::path& path);

std::string report_csv_header();
std::string to_csv_line(const ReportRow& row, const std::string& experiment_id);

}  // namespace compolang
