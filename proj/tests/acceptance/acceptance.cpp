// One line per acceptance criterion. Criteria 1-12 come from the library
// suite; 13 needs the brute-force Weyl-integration oracle, which lives only
// in test code.

#include "oracles.hpp"
#include "sigwalk/quantum.hpp"
#include "sigwalk/suite.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

using namespace sigwalk;

namespace {

// Tolerances pinned here rather than taken from the command line.
constexpr double kAlphaTolerance = 1e-9;
constexpr double kBudgetSeconds = 600.0;

CriterionResult brute_force_qn() {
    CriterionResult out;
    out.id = 13;
    out.name = "Weyl-integration permutation sum equals qn_entry";
    const auto start = std::chrono::steady_clock::now();
    for (int n = 1; n <= 3; ++n)
        for (const char* family : {"alpha+", "beta+", "beta-"})
            for (const char* param : {"1/2", "1/3"}) {
                const oracle::Family ref{family, mpq_class(param)};
                const auto kappa = kappa_of(SpectralFunction::parse(std::string(family) + ":" + param), n);
                const double tol = kappa.exact() ? 0.0 : kAlphaTolerance;
                CheckReport r("brute-qn");
                r.details["F"] = std::string(family) + ":" + param;
                r.details["n"] = n;
                const auto window = signature_window(n, -2, 2);
                for (const auto& lambda : window)
                    for (const auto& mu : window)
                        r.record(qn_entry(kappa, lambda, mu), Scalar(oracle::brute_qn(ref, lambda.parts(), mu.parts())),
                                 tol, "(" + format(lambda) + ")->(" + format(mu) + ")");
                out.report.merge(r);
                out.parts.push_back(r.to_json());
            }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.pass = out.report.pass;
    out.summary = std::to_string(out.parts.size()) + " sweeps, " + std::to_string(out.report.compared) +
                  " comparisons, max |err| " + out.report.max_abs_error.str();
    if (!out.report.failures.empty()) out.summary += "; first failure: " + out.report.failures.front();
    return out;
}

void print(const CriterionResult& r) {
    std::printf("[%s] criterion %d: %s (%s; %.1f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.summary.c_str(),
                r.seconds);
    std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
    bool json = argc > 1 && std::strcmp(argv[1], "--json") == 0;
    const auto start = std::chrono::steady_clock::now();
    std::vector<CriterionResult> results = run_suite({}, json ? std::function<void(const CriterionResult&)>{} : print);
    results.push_back(brute_force_qn());
    if (!json) print(results.back());

    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    const bool in_budget = total <= kBudgetSeconds;
    if (json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : results) j.push_back(criterion_to_json(r));
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("%d/%zu criteria passed in %.1f s (budget %.0f s)%s\n", passed, results.size(), total, kBudgetSeconds,
                    in_budget ? "" : ", over budget");
    }
    return passed == static_cast<int>(results.size()) && in_budget ? 0 : 1;
}
