#pragma once

#include "sigwalk/scalar.hpp"
#include "sigwalk/sigcore.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace sigwalk {

/// Specialization point θ = (θ_1, ..., θ_n). Entries are nonzero.
class EvaluationPoint {
public:
    explicit EvaluationPoint(std::vector<Rational> theta);

    static EvaluationPoint ones(int n) { return EvaluationPoint(std::vector<Rational>(static_cast<size_t>(n), Rational(1))); }

    int rank() const { return static_cast<int>(theta_.size()); }
    const Rational& operator[](int i) const { return theta_[static_cast<size_t>(i)]; }
    const std::vector<Rational>& values() const { return theta_; }
    bool all_ones() const;
    bool all_positive() const;
    Rational product() const;
    EvaluationPoint inverse() const;

private:
    std::vector<Rational> theta_;
};

EvaluationPoint parse_theta(std::string_view text);

/// Complete homogeneous symmetric polynomial; 0 for k < 0.
Rational h_eval(int k, const EvaluationPoint& theta);

/// Elementary symmetric polynomial; 0 for k < 0 or k > n.
Rational e_eval(int k, const EvaluationPoint& theta);

/// s_λ(θ) through the Jacobi–Trudi determinant, valid at repeated points.
/// Negative parts are handled by s_λ = (θ_1⋯θ_n)^{λ_n} s_{λ - λ_n}.
Rational schur_eval(const Signature& lambda, const EvaluationPoint& theta);

/// det[θ_i^{λ_j+n-j}] / det[θ_i^{n-j}]. Requires pairwise distinct θ.
Rational schur_bialternant(const Signature& lambda, const EvaluationPoint& theta);

/// Memoizing Jacobi–Trudi evaluator bound to one θ. Safe for concurrent use.
class SchurEvaluator {
public:
    explicit SchurEvaluator(EvaluationPoint theta);

    const EvaluationPoint& point() const { return theta_; }
    Rational operator()(const Signature& lambda) const;

private:
    Rational complete(int k) const;

    EvaluationPoint theta_;
    Rational det_theta_;
    mutable std::mutex mutex_;
    mutable std::vector<Rational> h_;
    mutable std::map<Signature, Rational> cache_;
};

/// Enumeration bounds for the exponential-size routines. Exceeding them
/// raises ResourceError rather than truncating.
struct EnumerationLimits {
    int max_rank = 4;
    int max_boxes = 12;
};

/// Finite map weight → multiplicity n_λ(x).
using WeightExpansion = std::map<Weight, long>;

/// n_λ(x): Kostka number of the shifted shape against the dominant sort of
/// the shifted weight. Zero when |x| ≠ |λ|.
long weight_multiplicity(const Signature& lambda, const Weight& x);

WeightExpansion weight_expansion(const Signature& lambda, const EnumerationLimits& limits = {});

/// c_{λμ}^τ by enumerating Littlewood–Richardson tableaux of shape τ∖λ and
/// content μ, after translating all three to partitions.
long lr_coeff(const Signature& lambda, const Signature& mu, const Signature& tau);

/// Full decomposition s_λ s_μ = Σ c^τ s_τ (tableau route).
std::map<Signature, long> lr_product(const Signature& lambda, const Signature& mu);

/// Independent route: monomial expansion of s_λ s_μ by convolving weight
/// expansions, then the unitriangular Kostka change of basis.
std::map<Signature, long> lr_product_oracle(const Signature& lambda, const Signature& mu,
                                            const EnumerationLimits& limits = {3, 8});
long lr_coeff_oracle(const Signature& lambda, const Signature& mu, const Signature& tau,
                     const EnumerationLimits& limits = {3, 8});

/// {τ : λ ≺ τ, |τ| - |λ| = k}.
std::vector<Signature> pieri_row(const Signature& lambda, int k);

/// {τ : τ_j - λ_j ∈ {0,1}, |τ| - |λ| = k}. Empty when k > n.
std::vector<Signature> pieri_column(const Signature& lambda, int k);

/// c_{λσν}^τ = Σ_μ c_{λσ}^μ c_{μν}^τ.
long triple_coeff(const Signature& lambda, const Signature& sigma, const Signature& nu, const Signature& tau);

/// Number of standard Young tableaux of a partition shape (hook length formula).
Rational standard_tableaux(const Signature& shape);

}  // namespace sigwalk
