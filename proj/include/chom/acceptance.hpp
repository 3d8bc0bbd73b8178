#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chom {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::int64_t millis = 0;
  std::int64_t budget_millis = 0;
};

struct AcceptanceOptions {
  std::vector<int> only;  // empty: all criteria
  std::uint32_t seed = 20240607;
  // called after each criterion finishes
  std::function<void(const CriterionResult&)> progress;
};

int acceptance_criterion_count();
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});
// "PASS  3 homplus closed form [812 ms / 300000 ms] ..."
std::string format_result(const CriterionResult& r);

}  // namespace chom
