#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "teich/config.hpp"
#include "teich/grid.hpp"

namespace teich::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    nlohmann::json data;
};

constexpr int criterion_count = 10;

CriterionResult run_criterion(int id, const GridSpec& spec, const Config& cfg = default_config());
// ids empty: all criteria in order.
std::vector<CriterionResult> run(const GridSpec& spec, const Config& cfg = default_config(),
                                 const std::vector<int>& ids = {});

// "PASS  1  name  detail"
std::string format_line(const CriterionResult& r);
// Report without timings, so repeated runs compare equal.
nlohmann::json summary_json(const std::vector<CriterionResult>& results, const GridSpec& spec);

}  // namespace teich::acceptance
