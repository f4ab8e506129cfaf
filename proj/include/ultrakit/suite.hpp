#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace ultrakit {

// Violations and tail-certificate outcomes collected while checks run.
struct Recorder {
  nlohmann::json violations = nlohmann::json::array();
  nlohmann::json tail_certificates = nlohmann::json::array();

  void violation(const std::string& check, const std::string& paper_ref, nlohmann::json witness);
  // One entry per batch of certified quantities.
  void certificates(const std::string& check, int checked, int failed);
  bool has_violations() const { return !violations.empty(); }
  bool has_certificate_failures() const;
};

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool passed = false;
  nlohmann::json metrics = nlohmann::json::object();
};

// Acceptance criteria 1..10; the last one (report determinism) needs two CLI runs.
inline constexpr int kInProcessCriteria = 10;

CriterionOutcome run_criterion(int id, std::uint64_t seed, Recorder& rec);

nlohmann::json to_json(const CriterionOutcome& c);

}  // namespace ultrakit
