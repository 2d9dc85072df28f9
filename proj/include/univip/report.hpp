#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace univip {

inline constexpr const char* kReportSchema = "univip.report/1";
inline constexpr const char* kToolVersion = "1.0.0";

struct ReportItem {
  std::string id;
  std::string role;
  double t = 0.0;
  bool ok = true;
  std::string error;
  std::optional<double> psnr;
  /// PSNR restricted to pixels at least one warped frame covers.
  std::optional<double> psnr_fillable;
  std::optional<double> ssim;
  std::optional<double> epe;
  std::optional<double> hole_iou;
  double milliseconds = 0.0;
};

/// Arithmetic means over the successful items of one scope.
struct Aggregate {
  std::string scope;
  /// Successful items; failures are counted separately.
  std::size_t count = 0;
  std::size_t failed = 0;
  std::optional<double> psnr;
  std::optional<double> psnr_fillable;
  std::optional<double> ssim;
  std::optional<double> epe;
  std::optional<double> hole_iou;
  double milliseconds = 0.0;
  /// Sample standard deviation; 0 for a single item.
  double milliseconds_stddev = 0.0;
};

struct Report {
  std::string command;
  nlohmann::ordered_json request = nlohmann::ordered_json::object();
  std::vector<ReportItem> items;
};

/// Scope "all" first, then "role:<name>" for each role present, in order of
/// first appearance.
std::vector<Aggregate> aggregate(const std::vector<ReportItem>& items);

/// JSON lines: a header record, one record per item, then the aggregates.
std::string format_report(const Report& report);
void write_report(const Report& report, const std::filesystem::path& path);

/// Parsed lines of a report file, for consumers and tests.
std::vector<nlohmann::json> read_report_lines(const std::filesystem::path& path);

}  // namespace univip
