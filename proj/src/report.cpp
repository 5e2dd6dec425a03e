#include "nlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nlab/csvio.hpp"
#include "nlab/errors.hpp"

#include <json.hpp>

namespace nlab::cli {

int Report::failed() const {
  int n = 0;
  for (const CheckRecord& r : records)
    if (!r.passed) ++n;
  return n;
}

CheckRecord make_record(const std::string& check_id, const std::string& anchor,
                        const std::string& inputs_text, double residual,
                        double tolerance) {
  CheckRecord r;
  r.check_id = check_id;
  r.anchor = anchor;
  r.inputs = inputs_digest(inputs_text);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = residual < tolerance;
  return r;
}

std::string inputs_digest(const std::string& canonical_text) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string record_line(const CheckRecord& r) {
  std::string line = "{\"check_id\":";
  line += nlohmann::json(r.check_id).dump();
  line += ",\"anchor\":";
  line += nlohmann::json(r.anchor).dump();
  line += ",\"inputs\":\"" + r.inputs + "\"";
  line += ",\"residual\":" + csvio::format_double(r.residual);
  line += ",\"tolerance\":" + csvio::format_double(r.tolerance);
  line += std::string(",\"passed\":") + (r.passed ? "true" : "false") + "}";
  return line;
}

void write_report(const Report& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create output directory '" + out_dir + "'");

  const std::string ndjson_path = out_dir + "/records.ndjson";
  {
    std::ofstream os(ndjson_path, std::ios::binary);
    if (!os) fail(ErrorCode::IoError, "cannot open '" + ndjson_path + "'");
    for (const CheckRecord& r : report.records) os << record_line(r) << "\n";
    if (!os) fail(ErrorCode::IoError, "write failed for '" + ndjson_path + "'");
  }

  nlohmann::json envelope;
  envelope["tool_version"] = kToolVersion;
  envelope["model"] = report.model;
  envelope["summary"] = {{"total", report.total()},
                         {"passed", report.total() - report.failed()},
                         {"failed", report.failed()}};
  for (const auto& [key, value] : report.notes) envelope["notes"][key] = value;
  if (!report.config_json.empty())
    envelope["config"] = nlohmann::json::parse(report.config_json);
  envelope["timestamp_utc"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();

  const std::string run_path = out_dir + "/run.json";
  std::ofstream os(run_path, std::ios::binary);
  if (!os) fail(ErrorCode::IoError, "cannot open '" + run_path + "'");
  os << envelope.dump(2) << "\n";
  if (!os) fail(ErrorCode::IoError, "write failed for '" + run_path + "'");
}

}  // namespace nlab::cli
