#pragma once

#include <map>
#include <string>
#include <vector>

namespace nlab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// One verification record.  `anchor` is a stable identity label mapping to
/// the checked statement (see docs/CHECKS.md); `inputs` is a digest of the
/// inputs that produced the residual.
struct CheckRecord {
  std::string check_id;
  std::string anchor;
  std::string inputs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct Report {
  std::vector<CheckRecord> records;
  std::string model;
  std::map<std::string, std::string> notes;  // e.g. the overlap-phase verdict
  std::string config_json;                   // echo of the effective config

  int total() const { return static_cast<int>(records.size()); }
  int failed() const;
  bool all_passed() const { return failed() == 0; }
};

CheckRecord make_record(const std::string& check_id, const std::string& anchor,
                        const std::string& inputs_text, double residual,
                        double tolerance);

std::string inputs_digest(const std::string& canonical_text);

/// Deterministic NDJSON line; float formatting pinned to %.17g.
std::string record_line(const CheckRecord& r);

/// Writes records.ndjson (byte-stable across identical runs) and run.json
/// (envelope; the timestamp lives only here).
void write_report(const Report& report, const std::string& out_dir);

}  // namespace nlab::cli
