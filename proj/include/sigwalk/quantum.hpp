#pragma once

#include "sigwalk/kernels.hpp"
#include "sigwalk/report.hpp"
#include "sigwalk/scalar.hpp"
#include "sigwalk/sigcore.hpp"
#include "sigwalk/symfunc.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sigwalk {

/// A class function on U(n) through its Schur coefficients κ̂(β):
/// κ = Σ_β κ̂(β) χ_β. Named families carry their spectral function and the
/// truncation bound K (total |β| for α, box count for γ); `tail` is the
/// normalized mass κ(1) that the truncation dropped.
class ClassFunction {
public:
    ClassFunction(int rank, std::map<Signature, Scalar> expansion, Scalar tail = Scalar(0));

    /// χ_β itself.
    static ClassFunction character(const Signature& beta);
    /// χ_β / dim β, which sends the identity to 1.
    static ClassFunction normalized_character(const Signature& beta);

    int rank() const { return rank_; }
    const std::map<Signature, Scalar>& expansion() const { return expansion_; }
    const Scalar& tail() const { return tail_; }
    const std::optional<SpectralFunction>& source() const { return source_; }
    std::optional<int> truncation() const { return truncation_; }

    Scalar coefficient(const Signature& beta) const;
    /// κ(1) = Σ κ̂(β) dim β.
    Scalar value_at_identity() const;
    /// Nothing truncated and every coefficient rational.
    bool exact() const;

    /// Pointwise product, expanded with Littlewood–Richardson coefficients.
    ClassFunction operator*(const ClassFunction& other) const;

    nlohmann::json to_json() const;

private:
    friend ClassFunction kappa_of(const SpectralFunction&, int, std::optional<int>);

    int rank_;
    std::map<Signature, Scalar> expansion_;
    Scalar tail_;
    std::optional<SpectralFunction> source_;
    std::optional<int> truncation_;
};

/// κ_F = ∏_j F(z_j) / F(1)^n in the Schur basis. When K is omitted, α and γ
/// use the smallest K whose dropped mass is below 1e-9. Laurent F goes
/// through its monomial expansion and an inverse Kostka solve; products
/// multiply the factor expansions.
ClassFunction kappa_of(const SpectralFunction& F, int n, std::optional<int> K = std::nullopt);

/// Q_n(κ)(λ, μ) = dim μ / dim λ · Σ_β κ̂(β) c_{λβ}^μ.
Scalar qn_entry(const ClassFunction& kappa, const Signature& lambda, const Signature& mu);

/// Every nonzero Q_n(κ)(λ, ·) over the expansion's LR support.
std::map<Signature, Scalar> qn_row(const ClassFunction& kappa, const Signature& lambda);

/// P_n(κ)(x, y) = n_κ(y - x) = Σ_β κ̂(β) n_β(y - x).
Scalar pn_entry(const ClassFunction& kappa, const Weight& x, const Weight& y);

/// Increment law n_κ of the torus walk.
struct TorusStep {
    int rank = 0;
    std::map<Weight, Scalar> law;

    Scalar mass() const;
};

/// Needs a finite expansion within the weight enumeration limits.
TorusStep torus_step(const ClassFunction& kappa, const EnumerationLimits& limits = {});

/// Compares Q_n(κ_{F'}) with T_n(1^n, F) over the window for F' = F and for
/// F' = F(1/z). The report names the pairing that held ("inverted",
/// "direct", "both" or "none") and passes when the inverted one holds.
CheckReport check_qrw(const SpectralFunction& F, int n, const std::vector<Signature>& window, double eps);

/// Σ_μ Q(0, μ) c_{λμ}^τ dim τ / (dim λ dim μ) = Q(λ, τ).
CheckReport check_center_intertwining(const ClassFunction& kappa, const Signature& lambda, const Signature& tau);
CheckReport check_center_window(const ClassFunction& kappa, const std::vector<Signature>& window);

/// Q(κ1) Q(κ2) = Q(κ1 κ2) on the window.
CheckReport check_q_morphism(const ClassFunction& k1, const ClassFunction& k2, const std::vector<Signature>& window);

/// Torus restriction: the weight distribution of χ_λ χ_μ against the
/// convolution n_λ * n_μ, the increment law of κ1 κ2 against n_κ1 * n_κ2,
/// Weyl invariance of P(κ1) and P(κ2) on `triples` random (x, y, σ), and
/// translation invariance on the same draws.
CheckReport check_torus(const ClassFunction& k1, const ClassFunction& k2, const Signature& lambda,
                        const Signature& mu, std::uint64_t seed = 1, int triples = 50);

}  // namespace sigwalk
