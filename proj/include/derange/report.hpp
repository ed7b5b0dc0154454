#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace derange {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "derange-report/1";

enum class Status { Verified, Refuted, Skipped, Indeterminate };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Refuted: return "refuted";
    case Status::Skipped: return "skipped";
    case Status::Indeterminate: return "indeterminate";
  }
  return "?";
}

/// Machine-readable outcome of one claim-level check.
struct VerificationReport {
  std::string claim_id;
  Json parameters = Json::object();
  Status status = Status::Verified;
  std::vector<Json> witnesses;
  std::optional<Json> counterexample;  // present on every Refuted report
  std::vector<std::string> notes;
  std::chrono::nanoseconds elapsed{0};

  void refute(Json example) {
    status = Status::Refuted;
    if (!counterexample) counterexample = std::move(example);
  }

  /// One line-delimited record. Timing is opt-in so that identical runs
  /// produce byte-identical output.
  Json to_record(bool include_timing = false) const {
    Json j;
    j["schema"] = kReportSchema;
    j["claim_id"] = claim_id;
    j["params"] = parameters;
    j["status"] = to_string(status);
    j["witnesses"] = witnesses;
    if (counterexample) j["counterexample"] = *counterexample;
    if (!notes.empty()) j["notes"] = notes;
    if (include_timing) {
      j["elapsed_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    return j;
  }
};

/// Stamps `elapsed` on destruction.
class ReportTimer {
 public:
  explicit ReportTimer(VerificationReport& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() { report_.elapsed = std::chrono::steady_clock::now() - start_; }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

 private:
  VerificationReport& report_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace derange
