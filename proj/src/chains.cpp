#include "sigwalk/chains.hpp"

#include "sigwalk/linalg.hpp"
#include "sigwalk/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sigwalk {

ParticleConfig::ParticleConfig(std::vector<int> xs) : positions(std::move(xs)) {
    for (size_t i = 1; i < positions.size(); ++i)
        if (positions[i - 1] <= positions[i]) throw std::invalid_argument("particle positions must strictly decrease");
}

ParticleConfig particle_positions(const Signature& lambda) {
    std::vector<int> xs;
    for (int i = 0; i < lambda.rank(); ++i) xs.push_back(lambda[i] - (i + 1));
    return ParticleConfig(std::move(xs));
}

bool in_family_support(const SpectralFunction& F, const Signature& lambda, const Signature& mu) {
    if (lambda.rank() != mu.rank()) return false;
    const int n = lambda.rank();
    auto every_step = [&](int lo, int hi) {
        for (int i = 0; i < n; ++i) {
            int d = mu[i] - lambda[i];
            if (d < lo || d > hi) return false;
        }
        return true;
    };
    switch (F.family()) {
        case Family::BetaMinus: return every_step(0, 1);
        case Family::BetaPlus: return every_step(-1, 0);
        case Family::AlphaMinus: return interlaces(lambda, mu);
        case Family::AlphaPlus: return interlaces(mu, lambda);
        case Family::GammaMinus: return every_step(0, std::numeric_limits<int>::max());
        case Family::GammaPlus: return every_step(std::numeric_limits<int>::min(), 0);
        default: {
            const auto f = fourier(F);
            for (int i = 0; i < n; ++i)
                if (!f.in_support(static_cast<long>(lambda[i]) - mu[i])) return false;
            return true;
        }
    }
}

// ---------------------------------------------------------------------------
// Sampling

Sampler::Sampler(SpectralFunction F, int n)
    : kernel_(EvaluationPoint::ones(n), std::move(F)),
      base_eps_(kernel_.function().involves_gamma() ? 1e-13 : 0x1.0p-53),
      min_eps_(kernel_.function().involves_gamma() ? 1e-15 : 0x1.0p-200) {}

Sampler::Table Sampler::build(const Signature& lambda, double eps) const {
    const KernelRow row = kernel_.row(lambda, {eps});
    Table t;
    t.truncated = row.truncated;
    t.eps = eps;
    double acc = 0.0;
    for (const auto& [mu, v] : row.entries) {
        if (v.sign() < 0) throw DomainError("negative transition probability from (" + format(lambda) + ")");
        acc += v.to_double();
        t.states.push_back(mu);
        t.cdf.push_back(acc);
    }
    if (t.states.empty()) throw DomainError("empty transition row from (" + format(lambda) + ")");
    return t;
}

const Sampler::Table& Sampler::table(const Signature& lambda) {
    auto it = cache_.find(lambda);
    if (it == cache_.end()) it = cache_.emplace(lambda, build(lambda, base_eps_)).first;
    return it->second;
}

Signature Sampler::step(const Signature& lambda, Philox4x32& rng) {
    if (lambda.rank() != kernel_.rank()) throw std::invalid_argument("sample_step: rank mismatch");
    for (;;) {
        const double u = rng.uniform();
        const Table* t = &table(lambda);
        while (u >= t->cdf.back() && t->truncated && t->eps > min_eps_) {
            const double eps = std::max(t->eps * 0x1.0p-10, min_eps_);
            cache_[lambda] = build(lambda, eps);
            t = &cache_[lambda];
        }
        auto pos = std::upper_bound(t->cdf.begin(), t->cdf.end(), u);
        if (pos != t->cdf.end()) return t->states[static_cast<size_t>(pos - t->cdf.begin())];
        // an exact row whose float sum rounds just below 1 keeps its last state
        if (!t->truncated) return t->states.back();
        // floating rows cannot be refined further; redraw
    }
}

Signature sample_step(const Signature& lambda, const SpectralFunction& F, Philox4x32& rng) {
    Sampler sampler(F, lambda.rank());
    return sampler.step(lambda, rng);
}

Trajectory simulate(const Signature& lambda0, const SpectralFunction& F, int steps, std::uint64_t seed,
                    std::uint64_t stream, bool verify_support) {
    if (steps < 0) throw std::invalid_argument("simulate: steps must be nonnegative");
    Trajectory traj{{lambda0}, seed, stream, F, steps};
    Sampler sampler(F, lambda0.rank());
    Philox4x32 rng(seed, stream);
    for (int s = 0; s < steps; ++s) {
        Signature next = sampler.step(traj.states.back(), rng);
        if (verify_support && !in_family_support(F, traj.states.back(), next))
            throw std::logic_error("sampled transition (" + format(traj.states.back()) + ")->(" + format(next) +
                                   ") leaves the support of " + F.to_string());
        traj.states.push_back(std::move(next));
    }
    return traj;
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << "step,i,position\n";
    for (size_t s = 0; s < trajectory.states.size(); ++s) {
        const auto xs = particle_positions(trajectory.states[s]).positions;
        for (size_t i = 0; i < xs.size(); ++i) out << s << ',' << i + 1 << ',' << xs[i] << '\n';
    }
    return out.str();
}

nlohmann::json trajectory_summary(const Trajectory& trajectory) {
    const Signature& last = trajectory.states.back();
    return {{"F", trajectory.F.to_string()},
            {"n", last.rank()},
            {"steps", trajectory.steps},
            {"seed", trajectory.seed},
            {"stream", trajectory.stream},
            {"rng", std::string(Philox4x32::name) + "/v" + std::to_string(Philox4x32::version)},
            {"final", last.parts()},
            {"final_positions", particle_positions(last).positions}};
}

// ---------------------------------------------------------------------------
// Checks

CheckReport check_doob(const SpectralFunction& F, int n, const std::vector<Signature>& window) {
    CheckReport report("doob");
    report.details["F"] = F.to_string();
    report.details["n"] = n;
    report.details["window"] = window.size();
    const TransitionKernel kernel(EvaluationPoint::ones(n), F);

    switch (F.family()) {
        case Family::BetaMinus:
        case Family::BetaPlus: {
            report.details["walk"] = "krawtchouk";
            const ClassFunction kappa = kappa_of(F.inverted(), n);
            for (const auto& lambda : window)
                for (const auto& mu : window) {
                    const Scalar walk = pn_entry(kappa, Weight(lambda), Weight(mu));
                    report.record(kernel.entry(lambda, mu), Scalar(Rational(dimension(mu) / dimension(lambda))) * walk,
                                  0.0, "(" + format(lambda) + ")->(" + format(mu) + ")");
                }
            return report;
        }
        case Family::GammaMinus:
        case Family::GammaPlus: {
            report.details["walk"] = "charlier";
            const ClassFunction kappa = kappa_of(F.inverted(), 1, 60);
            for (const auto& lambda : window) {
                const auto xs = particle_positions(lambda).positions;
                for (const auto& mu : window) {
                    const auto ys = particle_positions(mu).positions;
                    SquareMatrix<Scalar> m(n);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            m(i, j) = pn_entry(kappa, Weight({xs[static_cast<size_t>(i)]}), Weight({ys[static_cast<size_t>(j)]}));
                    const Scalar walk = determinant(std::move(m));
                    report.record_relative(kernel.entry(lambda, mu),
                                           Scalar(Rational(dimension(mu) / dimension(lambda))) * walk, 1e-9,
                                           "(" + format(lambda) + ")->(" + format(mu) + ")");
                }
            }
            return report;
        }
        default: throw std::invalid_argument("check_doob supports beta and gamma families, got " + F.to_string());
    }
}

CheckReport empirical_check(const Signature& lambda0, const SpectralFunction& F, long samples, std::uint64_t seed,
                            double delta) {
    if (samples <= 0) throw std::invalid_argument("empirical_check: samples must be positive");
    CheckReport report("empirical");
    Sampler sampler(F, lambda0.rank());
    Philox4x32 rng(seed);
    std::map<Signature, long> counts;
    for (long s = 0; s < samples; ++s) ++counts[sampler.step(lambda0, rng)];

    const KernelRow row = sampler.kernel().row(lambda0, {1e-12});
    double tv = row.tail.to_double();
    for (const auto& [mu, v] : row.entries) {
        auto it = counts.find(mu);
        const double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(samples);
        tv += std::abs(freq - v.to_double());
    }
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [mu, c] : counts) {
        if (!row.entries.contains(mu)) tv += static_cast<double>(c) / static_cast<double>(samples);
        table.push_back({{"mu", mu.parts()}, {"count", c}, {"exact", row.at(mu).str()}});
    }
    tv /= 2;

    report.compared = static_cast<long>(counts.size());
    report.max_abs_error = Scalar(tv);
    if (!(tv <= delta)) report.fail("total variation " + std::to_string(tv) + " exceeds " + std::to_string(delta));
    report.details["F"] = F.to_string();
    report.details["lambda"] = lambda0.parts();
    report.details["samples"] = samples;
    report.details["seed"] = seed;
    report.details["delta"] = delta;
    report.details["tv"] = tv;
    report.details["counts"] = table;
    return report;
}

}  // namespace sigwalk
