#include <iostream>

#include "chom/acceptance.hpp"

int main() {
  chom::AcceptanceOptions options;
  options.progress = [](const chom::CriterionResult& r) { std::cout << chom::format_result(r) << std::endl; };
  bool all = true;
  for (const auto& r : chom::run_acceptance(options)) all = all && r.passed;
  return all ? 0 : 1;
}
