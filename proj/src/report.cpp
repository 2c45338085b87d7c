#include "compolang/report.hpp"

#include <cstdio>
#include <fstream>

#include "compolang/error.hpp"

namespace compolang {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string report_csv_header() {
  return "experiment,row_type,branching,curriculum,max_complexity,fraction,run_index,seed,"
         "accuracy,test_correct,test_size,n_runs,mean_accuracy,perfect_share,"
         "zero_correct_share,max_test_correct";
}

namespace {

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>)
    return format_double(*v);
  else
    return std::to_string(*v);
}

}  // namespace

std::string to_csv_line(const ReportRow& row, const std::string& experiment_id) {
  std::string line;
  line += experiment_id;
  line += ',' + row.row_type;
  line += ',' + row.branching;
  line += ',' + row.curriculum;
  line += ',' + cell(row.max_complexity);
  line += ',' + cell(row.fraction);
  line += ',' + cell(row.run_index);
  line += ',' + cell(row.seed);
  line += ',' + cell(row.accuracy);
  line += ',' + cell(row.test_correct);
  line += ',' + cell(row.test_size);
  line += ',' + cell(row.n_runs);
  line += ',' + cell(row.mean_accuracy);
  line += ',' + cell(row.perfect_share);
  line += ',' + cell(row.zero_correct_share);
  line += ',' + cell(row.max_test_correct);
  return line;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& path) {
  {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << report_csv_header() << '\n';
    for (const auto& row : report.rows) out << to_csv_line(row, report.experiment_id) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
  }
  {
    nlohmann::json sidecar = report.config;
    sidecar["experiment"] = report.experiment_id;
    sidecar["wall_seconds"] = report.wall_seconds;
    auto side_path = path;
    side_path += ".config.json";
    std::ofstream out(side_path);
    if (!out) throw IoError("cannot open for writing: " + side_path.string());
    out << sidecar.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + side_path.string());
  }
}

}  // namespace compolang
