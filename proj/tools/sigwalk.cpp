// sigwalk: command-line front end for the signature kernels.
//
// Exit codes: 0 pass, 1 a check failed, 2 usage or parse error, 3 domain error.

#include "sigwalk/chains.hpp"
#include "sigwalk/kernels.hpp"
#include "sigwalk/quantum.hpp"
#include "sigwalk/suite.hpp"
#include "sigwalk/symfunc.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace sigwalk;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kDomain = 3 };

struct Flags {
    std::optional<int> n;
    std::string theta, F, F2, lambda, mu, tau;
    double eps = 1e-9;
    int window = 3;
    std::uint64_t seed = 20240611;
    std::uint64_t stream = 0;
    int steps = 100;
    long samples = 100000;
    double delta = 0.02;
    std::string format = "json";
    std::string check;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int rank_of(const Flags& f) {
    if (f.n) {
        if (*f.n < 1) throw UsageError("--n must be positive");
        return *f.n;
    }
    if (!f.theta.empty()) return parse_theta(f.theta).rank();
    if (!f.lambda.empty()) return parse_signature(f.lambda).rank();
    throw UsageError("--n is required here");
}

EvaluationPoint theta_of(const Flags& f, int n) {
    if (f.theta.empty()) return EvaluationPoint::ones(n);
    EvaluationPoint t = parse_theta(f.theta);
    if (t.rank() != n) throw UsageError("--theta has " + std::to_string(t.rank()) + " entries, expected " + std::to_string(n));
    return t;
}

Signature signature_of(const std::string& text, const char* flag, int n) {
    if (text.empty()) throw UsageError(std::string(flag) + " is required here");
    Signature s = parse_signature(text);
    if (s.rank() != n) throw UsageError(std::string(flag) + " has rank " + std::to_string(s.rank()) + ", expected " + std::to_string(n));
    return s;
}

SpectralFunction function_of(const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string(flag) + " is required here");
    return SpectralFunction::parse(text);
}

std::vector<Signature> window_of(const Flags& f, int n) {
    if (f.window < 0) throw UsageError("--window must be nonnegative");
    return signature_window(n, -f.window, f.window);
}

int emit(const CheckReport& r) {
    std::cout << r.to_json().dump(2) << '\n';
    return r.pass ? kPass : kFail;
}

int cmd_schur(const Flags& f) {
    const int n = rank_of(f);
    std::cout << to_string(schur_eval(signature_of(f.lambda, "--lambda", n), theta_of(f, n))) << '\n';
    return kPass;
}

int cmd_dim(const Flags& f) {
    const int n = rank_of(f);
    std::cout << to_string(dimension(signature_of(f.lambda, "--lambda", n))) << '\n';
    return kPass;
}

int cmd_lr(const Flags& f) {
    const int n = rank_of(f);
    const Signature lambda = signature_of(f.lambda, "--lambda", n), mu = signature_of(f.mu, "--mu", n);
    if (!f.tau.empty()) {
        std::cout << lr_coeff(lambda, mu, signature_of(f.tau, "--tau", n)) << '\n';
        return kPass;
    }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [tau, c] : lr_product(lambda, mu)) terms.push_back({{"tau", tau.parts()}, {"c", c}});
    std::cout << nlohmann::json{{"lambda", lambda.parts()}, {"mu", mu.parts()}, {"terms", terms}}.dump(2) << '\n';
    return kPass;
}

int cmd_weights(const Flags& f) {
    const int n = rank_of(f);
    const Signature lambda = signature_of(f.lambda, "--lambda", n);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [x, m] : weight_expansion(lambda)) terms.push_back({{"x", x.coords()}, {"mult", m}});
    std::cout << nlohmann::json{{"lambda", lambda.parts()}, {"terms", terms}}.dump(2) << '\n';
    return kPass;
}

int cmd_kernel_row(const Flags& f) {
    const int n = rank_of(f);
    const TransitionKernel kernel(theta_of(f, n), function_of(f.F, "--F"));
    const KernelRow row = kernel.row(signature_of(f.lambda, "--lambda", n), {f.eps});
    if (f.format == "csv") {
        std::cout << "mu,value\n";
        for (const auto& [mu, v] : row.entries) std::cout << '"' << format(mu) << "\"," << v.str() << '\n';
    } else {
        std::cout << row_to_json(kernel, row).dump(2) << '\n';
    }
    return kPass;
}

int cmd_simulate(const Flags& f) {
    const int n = rank_of(f);
    const Signature start = f.lambda.empty() ? Signature::zero(n) : signature_of(f.lambda, "--lambda", n);
    const Trajectory t = simulate(start, function_of(f.F, "--F"), f.steps, f.seed, f.stream);
    if (f.format == "csv")
        std::cout << trajectory_csv(t);
    else
        std::cout << trajectory_summary(t).dump(2) << '\n';
    return kPass;
}

int cmd_verify(const Flags& f) {
    const std::string& c = f.check;
    if (c == "all") {
        SuiteOptions options;
        options.eps = f.eps;
        options.seed = f.seed;
        options.samples = f.samples;
        nlohmann::json out = nlohmann::json::array();
        bool pass = true;
        for (const auto& r : run_suite(options)) {
            out.push_back(criterion_to_json(r));
            pass = pass && r.pass;
        }
        std::cout << out.dump(2) << '\n';
        return pass ? kPass : kFail;
    }
    const int n = rank_of(f);
    if (c == "stochastic") return emit(check_stochastic(function_of(f.F, "--F"), n, window_of(f, n), f.eps));
    if (c == "semigroup")
        return emit(check_semigroup(theta_of(f, n), function_of(f.F, "--F"), function_of(f.F2, "--F2"), window_of(f, n), f.eps));
    if (c == "star") {
        const auto F = function_of(f.F, "--F");
        if (!f.lambda.empty() && !f.tau.empty())
            return emit(check_star(theta_of(f, n), F, signature_of(f.lambda, "--lambda", n), signature_of(f.tau, "--tau", n), f.eps));
        return emit(check_star_window(theta_of(f, n), F, window_of(f, n), f.eps));
    }
    if (c == "qrw") return emit(check_qrw(function_of(f.F, "--F"), n, window_of(f, n), f.eps));
    if (c == "center") return emit(check_center_window(kappa_of(function_of(f.F, "--F"), n), window_of(f, n)));
    if (c == "torus") {
        const auto k1 = kappa_of(function_of(f.F, "--F"), n);
        const auto k2 = f.F2.empty() ? k1 : kappa_of(SpectralFunction::parse(f.F2), n);
        Signature one = Signature::zero(n);
        {
            std::vector<int> p(static_cast<size_t>(n), 0);
            p[0] = 1;
            one = Signature(p);
        }
        const Signature lambda = f.lambda.empty() ? one : signature_of(f.lambda, "--lambda", n);
        const Signature mu = f.mu.empty() ? one : signature_of(f.mu, "--mu", n);
        return emit(check_torus(k1, k2, lambda, mu, f.seed));
    }
    if (c == "doob") return emit(check_doob(function_of(f.F, "--F"), n, window_of(f, n)));
    if (c == "lemma212") return emit(check_closed_forms(theta_of(f, n), function_of(f.F, "--F"), window_of(f, n)));
    if (c == "empirical") {
        const Signature start = f.lambda.empty() ? Signature::zero(n) : signature_of(f.lambda, "--lambda", n);
        return emit(empirical_check(start, function_of(f.F, "--F"), f.samples, f.seed, f.delta));
    }
    throw UsageError("unknown check '" + c + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov kernels on signatures of U(n): exact evaluation, identity checks, simulation"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--n", f.n, "rank (defaults to the length of --theta or --lambda)");
        sub->add_option("--theta", f.theta, "evaluation point, e.g. 1,1/2");
        sub->add_option("--F", f.F, "spectral function, e.g. beta-:1/2, prod(alpha+:1/3,gamma-:1)");
        sub->add_option("--lambda", f.lambda, "signature, e.g. 2,1,0 (use --lambda=-1,-2 for a leading minus)");
        sub->add_option("--mu", f.mu, "second signature");
        sub->add_option("--tau", f.tau, "target signature");
        sub->add_option("--eps", f.eps, "truncation tolerance for infinite rows")->capture_default_str();
        sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    };

    auto* schur = app.add_subcommand("schur", "s_lambda(theta)");
    auto* dim = app.add_subcommand("dim", "dimension of the irreducible with highest weight lambda");
    auto* lr = app.add_subcommand("lr", "Littlewood-Richardson coefficient, or the full product without --tau");
    auto* weights = app.add_subcommand("weights", "weight multiplicities of lambda");
    auto* row = app.add_subcommand("kernel-row", "one row T_n(theta; F)(lambda, .)");
    auto* verify = app.add_subcommand("verify", "run an identity check and print its report");
    auto* sim = app.add_subcommand("simulate", "sample a trajectory of T_n(1; F)");
    for (auto* sub : {schur, dim, lr, weights, row, verify, sim}) common(sub);

    verify->add_option("check", f.check, "check name")
        ->required()
        ->check(CLI::IsMember(
            {"stochastic", "semigroup", "star", "qrw", "center", "torus", "doob", "lemma212", "empirical", "all"}));
    verify->add_option("--F2", f.F2, "second spectral function (semigroup, torus)");
    verify->add_option("--window", f.window, "parts range [-w, w] of the signature window")->capture_default_str();
    for (auto* sub : {verify, sim}) sub->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
    verify->add_option("--samples", f.samples, "Monte Carlo samples")->capture_default_str();
    verify->add_option("--delta", f.delta, "total variation threshold for empirical")->capture_default_str();
    sim->add_option("--steps", f.steps, "number of steps")->capture_default_str();
    sim->add_option("--stream", f.stream, "RNG stream")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }
    if (f.format == "csv" && !row->parsed() && !sim->parsed()) {
        std::cerr << "error: --format csv applies to kernel-row and simulate only\n";
        return kUsage;
    }

    try {
        if (schur->parsed()) return cmd_schur(f);
        if (dim->parsed()) return cmd_dim(f);
        if (lr->parsed()) return cmd_lr(f);
        if (weights->parsed()) return cmd_weights(f);
        if (row->parsed()) return cmd_kernel_row(f);
        if (verify->parsed()) return cmd_verify(f);
        return cmd_simulate(f);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kDomain;
    }
}
