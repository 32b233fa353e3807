#include <doctest.h>

#include "sigwalk/suite.hpp"

#include <set>

using namespace sigwalk;

TEST_CASE("criteria listing") {
    const auto& list = suite_criteria();
    CHECK(list.size() == 12);
    std::set<int> ids;
    for (const auto& [id, name] : list) {
        ids.insert(id);
        CHECK_FALSE(name.empty());
    }
    CHECK(*ids.begin() == 1);
    CHECK(*ids.rbegin() == 12);
    CHECK(ids.size() == 12);
}

TEST_CASE("cheap criteria run and pass") {
    for (int id : {1, 10}) {
        const auto r = run_criterion(id);
        CHECK(r.id == id);
        CHECK_MESSAGE(r.pass, r.summary);
        CHECK(r.report.compared > 0);
        auto j = criterion_to_json(r);
        CHECK(j["criterion"] == id);
        CHECK(j["pass"] == true);
    }
}

TEST_CASE("unknown criterion") {
    CHECK_THROWS_AS(run_criterion(99), std::invalid_argument);
}

TEST_CASE("empirical criterion honours the options") {
    SuiteOptions small;
    small.samples = 20000;
    const auto a = run_criterion(12, small), b = run_criterion(12, small);
    CHECK(a.pass);
    CHECK(criterion_to_json(a)["checks"] == criterion_to_json(b)["checks"]);
}
