#include "sigwalk/suite.hpp"

#include "sigwalk/chains.hpp"
#include "sigwalk/kernels.hpp"
#include "sigwalk/quantum.hpp"
#include "sigwalk/rng.hpp"
#include "sigwalk/symfunc.hpp"

#include <chrono>
#include <set>
#include <sstream>

namespace sigwalk {

namespace {

constexpr int kWindowLo = -3, kWindowHi = 3;

std::vector<Signature> window(int n) { return signature_window(n, kWindowLo, kWindowHi); }

std::vector<Signature> partitions_up_to(int n, int boxes) {
    std::vector<Signature> out;
    for (const auto& s : signature_window(n, 0, boxes))
        if (s.total() <= boxes) out.push_back(s);
    return out;
}

SpectralFunction F(const char* text) { return SpectralFunction::parse(text); }

EvaluationPoint point(std::vector<Rational> values) { return EvaluationPoint(std::move(values)); }

/// A few fixed non-unit points per rank, inside every α annulus used below.
std::vector<EvaluationPoint> generic_points(int n) {
    switch (n) {
        case 1: return {point({Rational(3, 4)}), point({Rational(3, 2)})};
        case 2: return {point({1, Rational(1, 2) + Rational(1, 4)}), point({Rational(3, 2), Rational(2, 3)})};
        default: return {point({1, Rational(3, 4), Rational(2, 3)}), point({Rational(3, 2), 1, Rational(3, 5)})};
    }
}

nlohmann::json compact(const CheckReport& r) {
    nlohmann::json j = r.to_json();
    j.erase("counts");
    return j;
}

class Collector {
public:
    explicit Collector(CriterionResult& out) : out_(out) {}
    void add(const CheckReport& r) {
        out_.report.merge(r);
        out_.parts.push_back(compact(r));
    }

private:
    CriterionResult& out_;
};

// 1
void lr_oracle(CriterionResult& out, const SuiteOptions&) {
    Collector c(out);
    for (int n = 1; n <= 3; ++n) {
        CheckReport r("lr-oracle");
        r.details["n"] = n;
        const auto shapes = partitions_up_to(n, 4);
        for (const auto& lambda : shapes)
            for (const auto& mu : shapes) {
                // shifting by a constant must not change anything either
                for (int s : {0, -2}) {
                    const Signature l = shift(lambda, s), m = shift(mu, s == 0 ? 0 : 1);
                    const auto tableau = lr_product(l, m);
                    const auto kostka = lr_product_oracle(l, m);
                    std::set<Signature> taus;
                    for (const auto& [t, v] : tableau) taus.insert(t);
                    for (const auto& [t, v] : kostka) taus.insert(t);
                    for (const auto& t : taus) {
                        auto a = tableau.find(t), b = kostka.find(t);
                        r.record(Scalar(a == tableau.end() ? 0L : a->second), Scalar(b == kostka.end() ? 0L : b->second),
                                 0.0, "(" + format(l) + ")*(" + format(m) + ")->(" + format(t) + ")");
                    }
                }
            }
        c.add(r);
    }
}

// 2
void schur_consistency(CriterionResult& out, const SuiteOptions& options) {
    Collector c(out);
    Philox4x32 rng(options.seed, 2);
    for (int n = 1; n <= 3; ++n) {
        CheckReport r("schur");
        r.details["n"] = n;
        r.details["points"] = 200;
        const auto w = window(n);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Rational> theta;
            std::set<Rational> seen;
            while (static_cast<int>(theta.size()) < n) {
                Rational t(static_cast<long>(rng() % 20 + 1));
                t /= static_cast<long>(rng() % 20 + 1);
                if (seen.insert(t).second) theta.push_back(t);
            }
            const EvaluationPoint p(theta);
            for (const auto& lambda : w)
                r.record(Scalar(schur_eval(lambda, p)), Scalar(schur_bialternant(lambda, p)), 0.0, format(lambda));
        }
        for (const auto& lambda : w)
            r.record(Scalar(schur_eval(lambda, EvaluationPoint::ones(n))), Scalar(dimension(lambda)), 0.0,
                     "dimension " + format(lambda));
        c.add(r);
    }
}

// 3
void closed_forms(CriterionResult& out, const SuiteOptions&) {
    Collector c(out);
    for (int n = 1; n <= 3; ++n) {
        auto points = generic_points(n);
        points.insert(points.begin(), EvaluationPoint::ones(n));
        for (const auto& theta : points)
            for (const char* family : {"alpha+", "alpha-", "beta+", "beta-"})
                for (const char* param : {"1/3", "1/2"})
                    c.add(check_closed_forms(theta, F((std::string(family) + ":" + param).c_str()), window(n)));
    }
}

// 4
void semigroup(CriterionResult& out, const SuiteOptions& options) {
    Collector c(out);
    const std::vector<std::pair<const char*, const char*>> exact_pairs{
        {"beta-:1/2", "beta-:1/3"},
        {"beta+:1/2", "beta-:1/3"},
        {"beta-:1/3", "beta+:1/2"},
        {"beta+:1/2", "laurent{-1:1/3,0:1}"},
        {"prod(beta+:1/2,beta-:1/3)", "beta-:1/2"},
        {"laurent{0:1,1:2}", "laurent{-2:1,0:1}"}};
    for (int n = 1; n <= 3; ++n) {
        auto points = generic_points(n);
        points.insert(points.begin(), EvaluationPoint::ones(n));
        for (const auto& theta : points)
            for (const auto& [a, b] : exact_pairs) {
                CheckReport r = check_semigroup(theta, F(a), F(b), window(n), options.eps);
                if (!(r.max_abs_error == Scalar(0))) r.fail("exact pair has nonzero error");
                c.add(r);
            }
    }
    const std::vector<std::pair<const char*, const char*>> alpha_pairs{
        {"beta-:1/2", "alpha-:1/3"}, {"alpha-:1/3", "beta+:1/2"}, {"alpha+:1/3", "beta-:1/2"}, {"alpha-:1/3", "alpha-:1/2"}};
    for (int n = 1; n <= 3; ++n)
        for (const auto& [a, b] : alpha_pairs) c.add(check_semigroup(EvaluationPoint::ones(n), F(a), F(b), window(n), options.eps));
}

// 5
void stochastic(CriterionResult& out, const SuiteOptions&) {
    Collector c(out);
    for (int n = 1; n <= 3; ++n) {
        for (const char* f : {"beta-:1/2", "beta+:1/2", "beta-:1/3", "beta+:1/3", "prod(beta+:1/2,beta-:1/3)",
                              "laurent{-1:1,0:3,1:2}"}) {
            CheckReport r = check_stochastic(F(f), n, window(n), 1e-9);
            if (!(r.max_abs_error == Scalar(0))) r.fail("exact family has nonzero error");
            c.add(r);
        }
        for (const char* f : {"alpha-:1/2", "alpha+:1/2", "alpha-:1/3", "alpha+:1/3"})
            c.add(check_stochastic(F(f), n, window(n), 1e-9));
        for (const char* f : {"gamma-:1/2", "gamma+:1/2", "gamma-:1", "gamma+:1"})
            c.add(check_stochastic(F(f), n, window(n), 1e-6));
    }
}

// 6
void star(CriterionResult& out, const SuiteOptions& options) {
    Collector c(out);
    const std::vector<std::vector<EvaluationPoint>> points{
        {point({1}), point({2})},
        {point({1, 1}), point({1, Rational(1, 2)}), point({2, Rational(1, 3)})},
        {point({1, 1, 1}), point({1, Rational(1, 2), Rational(1, 3)}), point({2, Rational(1, 3), Rational(3, 4)})}};
    for (int n = 1; n <= 3; ++n)
        for (const auto& theta : points[static_cast<size_t>(n - 1)])
            for (const char* f : {"beta-:1/2", "beta+:1/2", "beta-:1/3", "prod(beta+:1/2,beta-:1/3)"}) {
                CheckReport r = check_star_window(theta, F(f), window(n), options.eps);
                if (!(r.max_abs_error == Scalar(0))) r.fail("exact family has nonzero error");
                c.add(r);
            }
    for (const char* f : {"alpha-:1/2", "alpha+:1/2", "alpha-:1/3"})
        c.add(check_star_window(EvaluationPoint::ones(2), F(f), window(2), options.eps));
}

// 7
void qrw(CriterionResult& out, const SuiteOptions& options) {
    Collector c(out);
    auto add = [&](const char* f, int n) {
        CheckReport r = check_qrw(F(f), n, window(n), options.eps);
        const std::string expected = F(f).is_identity() ? "both" : "inverted";
        if (r.details["pairing"] != expected) r.fail("pairing " + r.details["pairing"].get<std::string>());
        c.add(r);
    };
    for (int n = 1; n <= 3; ++n) {
        for (const char* f : {"beta+:1/2", "beta-:1/2", "beta+:1/3", "beta-:1/3", "alpha+:1/2", "alpha-:1/2"}) add(f, n);
        if (n <= 2)
            for (const char* f : {"gamma+:1/2", "gamma-:1/2"}) add(f, n);
    }
    add("laurent{0:1}", 2);
}

// 8
void gamma_limit(CriterionResult& out, const SuiteOptions&) {
    Collector c(out);
    c.add(check_gamma_limit(F("gamma-:1/2"), 2, window(2), {16, 64, 256, 1024}, 1e-3));
}

// 9
void center(CriterionResult& out, const SuiteOptions&) {
    Collector c(out);
    for (int n = 1; n <= 3; ++n) {
        for (const auto& beta : partitions_up_to(n, 3)) {
            CheckReport r = check_center_window(ClassFunction::normalized_character(beta), window(n));
            r.details["kappa"] = "normalized character " + format(beta);
            c.add(r);
        }
        c.add(check_center_window(kappa_of(F("beta+:1/2"), n), window(n)));
    }
}

// 10
void torus(CriterionResult& out, const SuiteOptions& options) {
    Collector c(out);
    for (int n = 1; n <= 3; ++n) {
        const auto shapes = partitions_up_to(n, 3);
        CheckReport r("torus");
        r.details["n"] = n;
        std::uint64_t stream = 0;
        for (const auto& lambda : shapes)
            for (const auto& mu : shapes)
                r.merge(check_torus(ClassFunction::normalized_character(lambda), ClassFunction::normalized_character(mu),
                                    lambda, mu, options.seed + stream++, 50));
        c.add(r);
        c.add(check_torus(kappa_of(F("beta+:1/2"), n), kappa_of(F("beta-:1/3"), n), shapes.back(), shapes.front(),
                          options.seed, 50));
    }
}

// 11
void doob(CriterionResult& out, const SuiteOptions&) {
    Collector c(out);
    for (int n = 1; n <= 3; ++n) {
        for (const char* f : {"beta-:1/2", "beta-:1/3", "beta+:1/2"}) {
            CheckReport r = check_doob(F(f), n, window(n));
            if (!(r.max_abs_error == Scalar(0))) r.fail("Krawtchouk case has nonzero error");
            c.add(r);
        }
        for (const char* f : {"gamma-:1/2", "gamma+:1/2"}) c.add(check_doob(F(f), n, window(n)));
    }
}

// 12
void monte_carlo(CriterionResult& out, const SuiteOptions& options) {
    Collector c(out);
    std::uint64_t k = 0;
    for (int n = 1; n <= 2; ++n)
        for (const char* f : {"beta-:1/2", "beta+:1/2", "alpha-:1/2", "alpha+:1/2", "gamma-:1/2", "gamma+:1/2"})
            c.add(empirical_check(Signature::zero(n), F(f), options.samples, options.seed + k++, 0.02));
}

using Runner = void (*)(CriterionResult&, const SuiteOptions&);

const std::vector<std::pair<int, Runner>>& runners() {
    static const std::vector<std::pair<int, Runner>> r{
        {1, lr_oracle}, {2, schur_consistency}, {3, closed_forms}, {4, semigroup}, {5, stochastic}, {6, star},
        {7, qrw},       {8, gamma_limit},       {9, center},        {10, torus},   {11, doob},      {12, monte_carlo}};
    return r;
}

}  // namespace

const std::vector<std::pair<int, std::string>>& suite_criteria() {
    static const std::vector<std::pair<int, std::string>> names{
        {1, "LR tableau count equals the Kostka-route oracle"},
        {2, "Jacobi-Trudi equals bialternant; dimension at 1^n"},
        {3, "kernel entries equal the alpha/beta closed forms"},
        {4, "semigroup T(F1)T(F2) = T(F1 F2)"},
        {5, "stochastic rows at theta = 1"},
        {6, "star identity through the initial law"},
        {7, "Q_n(kappa) = T_n(1, F) under the inversion pairing"},
        {8, "beta(t/k)^k converges to gamma(t)"},
        {9, "center intertwining"},
        {10, "torus convolution morphism, Weyl and translation invariance"},
        {11, "Doob transform of independent walks"},
        {12, "Monte Carlo one-step law within TV 0.02"}};
    return names;
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
    CriterionResult out;
    out.id = id;
    for (const auto& [i, name] : suite_criteria())
        if (i == id) out.name = name;
    Runner run = nullptr;
    for (const auto& [i, r] : runners())
        if (i == id) run = r;
    if (!run) throw std::invalid_argument("unknown criterion " + std::to_string(id));

    const auto start = std::chrono::steady_clock::now();
    try {
        run(out, options);
    } catch (const std::exception& e) {
        out.report.fail(std::string("exception: ") + e.what());
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.pass = out.report.pass;

    std::ostringstream summary;
    summary << out.parts.size() << " sweeps, " << out.report.compared << " comparisons, max |err| "
            << out.report.max_abs_error.str();
    if (id == 8 && !out.parts.empty() && out.parts[0].contains("deviations")) {
        summary << ", deviations";
        for (const auto& d : out.parts[0]["deviations"]) summary << " k=" << d["k"] << ":" << d["max_deviation"].get<double>();
    }
    if (!out.report.failures.empty()) summary << "; first failure: " << out.report.failures.front();
    out.summary = summary.str();
    return out;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& progress) {
    std::vector<CriterionResult> results;
    for (const auto& [id, name] : suite_criteria()) {
        results.push_back(run_criterion(id, options));
        if (progress) progress(results.back());
    }
    return results;
}

nlohmann::json criterion_to_json(const CriterionResult& result) {
    return {{"criterion", result.id},   {"name", result.name},       {"pass", result.pass},
            {"summary", result.summary}, {"seconds", result.seconds}, {"max_abs_error", result.report.max_abs_error.str()},
            {"compared", result.report.compared}, {"checks", result.parts}};
}

}  // namespace sigwalk
