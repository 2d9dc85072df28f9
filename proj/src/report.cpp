#include "univip/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "univip/error.hpp"

namespace univip {
namespace {

struct Mean {
  double sum = 0.0;
  std::size_t n = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  std::optional<double> value() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

Aggregate summarize(const std::string& scope, const std::vector<const ReportItem*>& items) {
  Aggregate agg;
  agg.scope = scope;
  Mean psnr, psnr_fillable, ssim, epe, iou, ms;
  std::vector<double> times;
  for (const ReportItem* item : items) {
    if (!item->ok) {
      ++agg.failed;
      continue;
    }
    ++agg.count;
    psnr.add(item->psnr);
    psnr_fillable.add(item->psnr_fillable);
    ssim.add(item->ssim);
    epe.add(item->epe);
    iou.add(item->hole_iou);
    ms.add(item->milliseconds);
    times.push_back(item->milliseconds);
  }
  agg.psnr = psnr.value();
  agg.psnr_fillable = psnr_fillable.value();
  agg.ssim = ssim.value();
  agg.epe = epe.value();
  agg.hole_iou = iou.value();
  agg.milliseconds = ms.value().value_or(0.0);
  if (times.size() > 1) {
    double var = 0.0;
    for (double v : times) var += (v - agg.milliseconds) * (v - agg.milliseconds);
    agg.milliseconds_stddev = std::sqrt(var / static_cast<double>(times.size() - 1));
  }
  return agg;
}

template <typename Json>
void put(Json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

}  // namespace

std::vector<Aggregate> aggregate(const std::vector<ReportItem>& items) {
  std::vector<const ReportItem*> all;
  std::vector<std::string> roles;
  for (const ReportItem& item : items) {
    all.push_back(&item);
    if (!item.role.empty() && std::find(roles.begin(), roles.end(), item.role) == roles.end()) {
      roles.push_back(item.role);
    }
  }
  std::vector<Aggregate> out{summarize("all", all)};
  for (const std::string& role : roles) {
    std::vector<const ReportItem*> subset;
    for (const ReportItem& item : items) {
      if (item.role == role) subset.push_back(&item);
    }
    out.push_back(summarize("role:" + role, subset));
  }
  return out;
}

std::string format_report(const Report& report) {
  std::ostringstream out;
  nlohmann::ordered_json header;
  header["type"] = "header";
  header["schema"] = kReportSchema;
  header["tool_version"] = kToolVersion;
  header["command"] = report.command;
  header["request"] = report.request;
  out << header.dump() << '\n';

  for (std::size_t i = 0; i < report.items.size(); ++i) {
    const ReportItem& item = report.items[i];
    nlohmann::ordered_json j;
    j["type"] = "item";
    j["index"] = i;
    j["id"] = item.id;
    if (!item.role.empty()) j["role"] = item.role;
    j["t"] = item.t;
    j["status"] = item.ok ? "ok" : "error";
    if (!item.ok) j["error"] = item.error;
    put(j, "psnr", item.psnr);
    put(j, "psnr_fillable", item.psnr_fillable);
    put(j, "ssim", item.ssim);
    put(j, "epe", item.epe);
    put(j, "hole_iou", item.hole_iou);
    j["milliseconds"] = item.milliseconds;
    out << j.dump() << '\n';
  }

  for (const Aggregate& agg : aggregate(report.items)) {
    nlohmann::ordered_json j;
    j["type"] = "aggregate";
    j["scope"] = agg.scope;
    j["count"] = agg.count;
    j["failed"] = agg.failed;
    put(j, "psnr", agg.psnr);
    put(j, "psnr_fillable", agg.psnr_fillable);
    put(j, "ssim", agg.ssim);
    put(j, "epe", agg.epe);
    put(j, "hole_iou", agg.hole_iou);
    j["milliseconds"] = agg.milliseconds;
    j["milliseconds_stddev"] = agg.milliseconds_stddev;
    out << j.dump() << '\n';
  }
  return out.str();
}

void write_report(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorKind::IoFailure, "cannot open for writing: " + path.string());
  out << format_report(report);
  if (!out) fail(ErrorKind::IoFailure, "failed writing: " + path.string());
}

std::vector<nlohmann::json> read_report_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::FileMissing, "report not found: " + path.string());
  std::vector<nlohmann::json> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      lines.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::MalformedHeader, "malformed report line: " + std::string(e.what()));
    }
  }
  return lines;
}

}  // namespace univip
