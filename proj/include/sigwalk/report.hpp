#pragma once

#include "sigwalk/scalar.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace sigwalk {

/// Outcome of an identity check. Failures are report content, not exceptions.
struct CheckReport {
    std::string check;
    bool pass = true;
    Scalar max_abs_error;
    long compared = 0;
    std::vector<std::string> failures;
    nlohmann::json details = nlohmann::json::object();

    explicit CheckReport(std::string name) : check(std::move(name)) {}

    /// Compares two values. tolerance == 0 demands exact equality, which a
    /// floating value can only meet by coinciding bit for bit.
    void record(const Scalar& lhs, const Scalar& rhs, double tolerance, std::string_view where);

    /// |lhs - rhs| <= tolerance * max(|lhs|, |rhs|), falling back to absolute
    /// tolerance when both sides vanish.
    void record_relative(const Scalar& lhs, const Scalar& rhs, double tolerance, std::string_view where);

    /// Records a failed predicate without a numeric comparison.
    void fail(std::string message);

    /// Folds another report's results into this one.
    void merge(const CheckReport& other);

    nlohmann::json to_json() const;
};

}  // namespace sigwalk
