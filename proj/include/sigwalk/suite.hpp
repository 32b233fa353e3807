#pragma once

#include "sigwalk/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sigwalk {

struct SuiteOptions {
    double eps = 1e-9;
    std::uint64_t seed = 20240611;
    long samples = 100000;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string summary;
    double seconds = 0;
    CheckReport report{"criterion"};
    /// Compact per-sweep reports.
    nlohmann::json parts = nlohmann::json::array();
};

/// Ids and names of the library-level acceptance criteria (1..12).
const std::vector<std::pair<int, std::string>>& suite_criteria();

CriterionResult run_criterion(int id, const SuiteOptions& options = {});

std::vector<CriterionResult> run_suite(const SuiteOptions& options = {},
                                       const std::function<void(const CriterionResult&)>& progress = {});

nlohmann::json criterion_to_json(const CriterionResult& result);

}  // namespace sigwalk
