#include "sigwalk/report.hpp"

#include <algorithm>
#include <cmath>

namespace sigwalk {

namespace {
constexpr size_t kMaxListedFailures = 20;
}

void CheckReport::record(const Scalar& lhs, const Scalar& rhs, double tolerance, std::string_view where) {
    ++compared;
    Scalar err = abs(lhs - rhs);
    if (max_abs_error < err) max_abs_error = err;
    bool ok = tolerance == 0.0 ? lhs == rhs : err.to_double() <= tolerance;
    if (!ok) fail(std::string(where) + ": " + lhs.str() + " != " + rhs.str());
}

void CheckReport::record_relative(const Scalar& lhs, const Scalar& rhs, double tolerance, std::string_view where) {
    ++compared;
    Scalar err = abs(lhs - rhs);
    if (max_abs_error < err) max_abs_error = err;
    double scale = std::max(std::abs(lhs.to_double()), std::abs(rhs.to_double()));
    bool ok = err.to_double() <= tolerance * (scale > 0 ? scale : 1.0);
    if (!ok) fail(std::string(where) + ": " + lhs.str() + " != " + rhs.str() + " (relative)");
}

void CheckReport::fail(std::string message) {
    pass = false;
    if (failures.size() < kMaxListedFailures) failures.push_back(std::move(message));
}

void CheckReport::merge(const CheckReport& other) {
    compared += other.compared;
    if (max_abs_error < other.max_abs_error) max_abs_error = other.max_abs_error;
    if (!other.pass) pass = false;
    for (const auto& f : other.failures)
        if (failures.size() < kMaxListedFailures) failures.push_back(f);
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j = details;
    j["check"] = check;
    j["pass"] = pass;
    j["max_abs_error"] = max_abs_error.str();
    j["compared"] = compared;
    if (!failures.empty()) j["failures"] = failures;
    return j;
}

}  // namespace sigwalk
