#pragma once

#include "sigwalk/report.hpp"
#include "sigwalk/scalar.hpp"
#include "sigwalk/sigcore.hpp"
#include "sigwalk/symfunc.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sigwalk {

enum class Family { AlphaPlus, AlphaMinus, BetaPlus, BetaMinus, GammaPlus, GammaMinus, Laurent, Product };

/// The function F whose Laurent coefficients fill the determinantal kernel.
///
///   alpha+  (1 - q z)^{-1}    alpha-  (1 - q/z)^{-1}    0 <= q < 1
///   beta+   1 + p z           beta-   1 + p/z           0 <= p <= 1
///   gamma+  exp(t z)          gamma-  exp(t/z)          t >= 0
///
/// plus finite Laurent polynomials and products of any of these. Products
/// are kept flat and all Laurent factors are folded into one.
class SpectralFunction {
public:
    static SpectralFunction alpha_plus(Rational q);
    static SpectralFunction alpha_minus(Rational q);
    static SpectralFunction beta_plus(Rational p);
    static SpectralFunction beta_minus(Rational p);
    static SpectralFunction gamma_plus(Rational t);
    static SpectralFunction gamma_minus(Rational t);
    static SpectralFunction laurent(std::map<int, Rational> coefficients);
    static SpectralFunction product(std::vector<SpectralFunction> factors);
    static SpectralFunction identity() { return laurent({{0, Rational(1)}}); }

    /// "beta-:1/2", "alpha+:1/3", "gamma+:0.5", "prod(beta-:1/2,beta-:1/3)",
    /// "laurent{-1:1/2,0:1}".
    static SpectralFunction parse(std::string_view text);

    Family family() const { return family_; }
    const Rational& parameter() const { return parameter_; }
    const std::map<int, Rational>& coefficients() const { return coefficients_; }
    const std::vector<SpectralFunction>& factors() const { return factors_; }

    bool is_named() const;
    bool involves_gamma() const;
    /// All Laurent coefficients f(m) are nonnegative.
    bool nonnegative() const;
    bool is_identity() const;

    /// F(1/z): swaps the ± partner of every named family and mirrors Laurent
    /// coefficients.
    SpectralFunction inverted() const;

    std::string family_name() const;
    std::string to_string() const;
    nlohmann::json to_json() const;

    friend bool operator==(const SpectralFunction&, const SpectralFunction&) = default;

private:
    SpectralFunction(Family family, Rational parameter) : family_(family), parameter_(std::move(parameter)) {}

    Family family_ = Family::Laurent;
    Rational parameter_;
    std::map<int, Rational> coefficients_;
    std::vector<SpectralFunction> factors_;
};

/// m ↦ f(m), the z^m Laurent coefficient of F, with its support bounds
/// (nullopt marks an unbounded side).
class FourierSeq {
public:
    FourierSeq(std::optional<long> lower, std::optional<long> upper, std::function<Rational(long)> eval);

    std::optional<long> lower() const { return lower_; }
    std::optional<long> upper() const { return upper_; }
    bool finite() const { return lower_ && upper_; }
    bool in_support(long m) const { return (!lower_ || m >= *lower_) && (!upper_ || m <= *upper_); }

    Rational operator()(long m) const;

private:
    struct Cache;

    std::optional<long> lower_, upper_;
    std::function<Rational(long)> eval_;
    std::shared_ptr<Cache> cache_;
};

/// Closed-form coefficients; products are convolved lazily. Convolving
/// factors that are unbounded on opposite sides is unsupported.
FourierSeq fourier(const SpectralFunction& F);

/// Pointwise value. Exponential families evaluate in double precision.
Scalar eval_F(const SpectralFunction& F, const Rational& z);

/// One row T(λ, ·). Infinite supports are enumerated by total displacement
/// and cut once the accumulated mass reaches 1 - eps; `tail` bounds the
/// omitted mass.
struct KernelRow {
    Signature source;
    std::map<Signature, Scalar> entries;
    bool truncated = false;
    Scalar tail;

    Scalar mass() const;
    Scalar at(const Signature& mu) const;
    /// Every entry is an exact rational and nothing was cut.
    bool exact() const;
};

struct RowOptions {
    double eps = 1e-9;
    /// Enumeration gives up (ResourceError) past this total displacement.
    int max_displacement = 2000;
};

/// T_n(θ; F)(λ, μ) = s_μ(θ)/s_λ(θ) · det[f((λ_j - j) - (μ_i - i))] / ∏_j F(1/θ_j).
///
/// Construction checks that every θ_j^{-1} lies in the convergence annulus
/// of F and that the normalizer does not vanish.
class TransitionKernel {
public:
    TransitionKernel(EvaluationPoint theta, SpectralFunction F);

    int rank() const { return theta_.rank(); }
    const EvaluationPoint& point() const { return theta_; }
    const SpectralFunction& function() const { return F_; }
    const FourierSeq& coefficients() const { return f_; }
    const Scalar& normalizer() const { return normalizer_; }

    /// s_λ(θ); the dimension when θ = 1^n.
    Rational schur(const Signature& lambda) const;

    /// det[f((λ_j - j) - (μ_i - i))].
    Rational minor(const Signature& lambda, const Signature& mu) const;

    Scalar entry(const Signature& lambda, const Signature& mu) const;
    KernelRow row(const Signature& lambda, const RowOptions& options = {}) const;

    /// ℙ_n(θ; F)(μ) = T_n(θ; F)(0, μ).
    KernelRow initial_law(const RowOptions& options = {}) const { return row(Signature::zero(rank()), options); }

private:
    bool support_possible(const Signature& lambda, const Signature& mu) const;

    EvaluationPoint theta_;
    SpectralFunction F_;
    FourierSeq f_;
    Scalar normalizer_;
    std::shared_ptr<const SchurEvaluator> schur_;
};

Scalar tn_entry(const EvaluationPoint& theta, const SpectralFunction& F, const Signature& lambda, const Signature& mu);
KernelRow tn_row(const EvaluationPoint& theta, const SpectralFunction& F, const Signature& lambda, double eps = 1e-9);
KernelRow p0_row(const EvaluationPoint& theta, const SpectralFunction& F, double eps = 1e-9);

/// The displayed case formulas for the four geometric/Bernoulli families:
/// support predicate times p^k or q^k times s_μ/s_λ over the normalizer.
/// nullopt for any other F.
std::optional<Scalar> closed_form_entry(const EvaluationPoint& theta, const SpectralFunction& F,
                                        const Signature& lambda, const Signature& mu);

nlohmann::json row_to_json(const TransitionKernel& kernel, const KernelRow& row);

// ---------------------------------------------------------------------------
// Identity checks

/// Σ_γ T(F1)(λ,γ) T(F2)(γ,τ) = T(F1 F2)(λ,τ) for λ, τ in the window.
CheckReport check_semigroup(const EvaluationPoint& theta, const SpectralFunction& F1, const SpectralFunction& F2,
                            const std::vector<Signature>& window, double eps);

/// Rows at θ = 1^n are nonnegative and sum to 1 (within eps when cut).
CheckReport check_stochastic(const SpectralFunction& F, int n, const std::vector<Signature>& window, double eps);

/// Σ_μ ℙ(μ) c_{λμ}^τ s_τ / (s_λ s_μ) = T(λ, τ) for one pair.
CheckReport check_star(const EvaluationPoint& theta, const SpectralFunction& F, const Signature& lambda,
                       const Signature& tau, double eps);

/// Same identity swept over all pairs of the window.
CheckReport check_star_window(const EvaluationPoint& theta, const SpectralFunction& F,
                              const std::vector<Signature>& window, double eps);

/// tn_entry against closed_form_entry on every pair of the window.
CheckReport check_closed_forms(const EvaluationPoint& theta, const SpectralFunction& F,
                               const std::vector<Signature>& window);

/// Max window deviation between T(1; β±(t/k))^k (propagated step by step)
/// and T(1; γ±(t)) for each k; passes when the deviation decreases in k and
/// the last one is within `tolerance`.
CheckReport check_gamma_limit(const SpectralFunction& gamma, int n, const std::vector<Signature>& window,
                              const std::vector<int>& powers, double tolerance);

}  // namespace sigwalk
