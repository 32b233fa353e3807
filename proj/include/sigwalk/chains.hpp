#pragma once

#include "sigwalk/kernels.hpp"
#include "sigwalk/report.hpp"
#include "sigwalk/rng.hpp"
#include "sigwalk/sigcore.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sigwalk {

/// x_i = λ_i - i, strictly decreasing.
struct ParticleConfig {
    std::vector<int> positions;

    explicit ParticleConfig(std::vector<int> xs);
};

ParticleConfig particle_positions(const Signature& lambda);

/// The one-step support relation of T_n(1; F): vertical strips for β,
/// interlacing for α, coordinatewise monotone moves for γ, and
/// λ_i - μ_i ∈ supp f for everything else.
bool in_family_support(const SpectralFunction& F, const Signature& lambda, const Signature& mu);

struct Trajectory {
    std::vector<Signature> states;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    SpectralFunction F;
    int steps = 0;
};

/// Inverse-CDF sampler for T_n(1^n; F). Rows are built once per source
/// state and cached. Infinite rows are cut with tail below 2^-53 (1e-13 in
/// double precision for γ); a draw that lands past the enumerated mass
/// extends the row instead of being rejected.
class Sampler {
public:
    Sampler(SpectralFunction F, int n);

    const TransitionKernel& kernel() const { return kernel_; }
    Signature step(const Signature& lambda, Philox4x32& rng);

private:
    struct Table {
        std::vector<Signature> states;
        std::vector<double> cdf;
        bool truncated = false;
        double eps = 0;
    };
    const Table& table(const Signature& lambda);
    Table build(const Signature& lambda, double eps) const;

    TransitionKernel kernel_;
    double base_eps_;
    double min_eps_;
    std::map<Signature, Table> cache_;
};

Signature sample_step(const Signature& lambda, const SpectralFunction& F, Philox4x32& rng);

/// Reproducible per (λ0, F, steps, seed, stream). With `verify_support`
/// every transition is checked against in_family_support.
Trajectory simulate(const Signature& lambda0, const SpectralFunction& F, int steps, std::uint64_t seed,
                    std::uint64_t stream = 0, bool verify_support = false);

/// "step,i,position", one line per (step, particle), i counted from 1.
std::string trajectory_csv(const Trajectory& trajectory);
nlohmann::json trajectory_summary(const Trajectory& trajectory);

/// T_n(1; F)(λ, μ) = dim μ / dim λ · W(λ → μ) over the window. For β±(p), W
/// is the torus kernel of κ_{F(1/z)} (independent {0,±1} steps, exact). For
/// γ±(t), W is the Karlin–McGregor determinant of rank-one torus
/// probabilities (Poisson steps), compared at relative tolerance 1e-9.
CheckReport check_doob(const SpectralFunction& F, int n, const std::vector<Signature>& window);

/// Total-variation distance between the empirical one-step law from λ0 and
/// the exact row; passes when it is at most delta.
CheckReport empirical_check(const Signature& lambda0, const SpectralFunction& F, long samples, std::uint64_t seed,
                            double delta);

}  // namespace sigwalk
