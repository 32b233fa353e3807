#include "sigwalk/quantum.hpp"

#include "sigwalk/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sigwalk {

namespace {

constexpr double kDefaultTail = 1e-9;
constexpr int kMaxTruncation = 10000;

void require_rank(int n, const Signature& s, const char* what) {
    if (s.rank() != n) throw std::invalid_argument(std::string(what) + ": rank mismatch");
}

std::vector<int> padded(int n, std::vector<int> head, int fill) {
    head.resize(static_cast<size_t>(n), fill);
    return head;
}

/// Partitions of k with at most n parts, padded to length n.
void partitions(int k, int n, int max_part, std::vector<int>& prefix, std::vector<Signature>& out) {
    if (k == 0) {
        out.emplace_back(padded(n, prefix, 0));
        return;
    }
    if (static_cast<int>(prefix.size()) == n) return;
    for (int part = std::min(k, max_part); part >= 1; --part) {
        prefix.push_back(part);
        partitions(k - part, n, part, prefix, out);
        prefix.pop_back();
    }
}

std::vector<Signature> partitions(int k, int n) {
    std::vector<Signature> out;
    std::vector<int> prefix;
    partitions(k, n, k, prefix, out);
    return out;
}

Signature reversed_negative(const Signature& s) {
    std::vector<int> parts(s.parts().rbegin(), s.parts().rend());
    for (auto& p : parts) p = -p;
    return Signature(std::move(parts));
}

Rational factorial(long m) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return Rational(f);
}

std::map<Signature, Scalar> laurent_expansion(const std::map<int, Rational>& f, int n) {
    Rational at_one(0);
    for (const auto& [m, c] : f) at_one += c;
    if (at_one == 0) throw DomainError("class function needs F(1) != 0");
    const int lo = f.begin()->first, hi = f.rbegin()->first;
    const Rational scale = pow(at_one, n);

    auto dominant = signature_window(n, lo, hi);
    std::sort(dominant.begin(), dominant.end(), std::greater<>());

    // monomial coefficient at x minus what the already-found Schur terms put there
    std::map<Signature, Rational> found;
    for (const auto& x : dominant) {
        Rational c(1);
        for (int part : x) {
            auto it = f.find(part);
            c *= it == f.end() ? Rational(0) : it->second;
        }
        c /= scale;
        for (const auto& [lambda, k] : found) c -= k * weight_multiplicity(lambda, Weight(x));
        if (c != 0) found.emplace(x, c);
    }
    std::map<Signature, Scalar> out;
    for (auto& [s, c] : found) out.emplace(s, Scalar(std::move(c)));
    return out;
}

}  // namespace

ClassFunction::ClassFunction(int rank, std::map<Signature, Scalar> expansion, Scalar tail)
    : rank_(rank), expansion_(std::move(expansion)), tail_(std::move(tail)) {
    if (rank_ < 1) throw std::invalid_argument("class function rank must be positive");
    for (const auto& [beta, c] : expansion_) require_rank(rank_, beta, "ClassFunction");
    std::erase_if(expansion_, [](const auto& kv) { return kv.second.is_zero(); });
}

ClassFunction ClassFunction::character(const Signature& beta) { return ClassFunction(beta.rank(), {{beta, Scalar(1)}}); }

ClassFunction ClassFunction::normalized_character(const Signature& beta) {
    return ClassFunction(beta.rank(), {{beta, Scalar(Rational(1 / dimension(beta)))}});
}

Scalar ClassFunction::coefficient(const Signature& beta) const {
    auto it = expansion_.find(beta);
    return it == expansion_.end() ? Scalar(0) : it->second;
}

Scalar ClassFunction::value_at_identity() const {
    Scalar sum(0);
    for (const auto& [beta, c] : expansion_) sum += c * Scalar(dimension(beta));
    return sum;
}

bool ClassFunction::exact() const {
    return tail_.is_zero() && std::all_of(expansion_.begin(), expansion_.end(), [](const auto& kv) { return kv.second.exact(); });
}

ClassFunction ClassFunction::operator*(const ClassFunction& other) const {
    if (rank_ != other.rank_) throw std::invalid_argument("class function product: rank mismatch");
    std::map<Signature, Scalar> out;
    for (const auto& [a, x] : expansion_)
        for (const auto& [b, y] : other.expansion_)
            for (const auto& [tau, c] : lr_product(a, b)) out[tau] += x * y * Scalar(c);
    Scalar tail(0);
    if (!tail_.is_zero() || !other.tail_.is_zero())
        tail = tail_ * other.value_at_identity() + value_at_identity() * other.tail_ + tail_ * other.tail_;
    ClassFunction product(rank_, std::move(out), tail);
    if (source_ && other.source_) product.source_ = SpectralFunction::product({*source_, *other.source_});
    return product;
}

nlohmann::json ClassFunction::to_json() const {
    nlohmann::json j;
    j["n"] = rank_;
    if (source_) j["F"] = source_->to_string();
    if (truncation_) j["K"] = *truncation_;
    j["tail"] = tail_.str();
    j["expansion"] = nlohmann::json::array();
    for (const auto& [beta, c] : expansion_) j["expansion"].push_back({{"beta", beta.parts()}, {"value", c.str()}});
    return j;
}

ClassFunction kappa_of(const SpectralFunction& F, int n, std::optional<int> K) {
    if (n < 1) throw std::invalid_argument("kappa_of: n must be positive");
    if (K && *K < 0) throw std::invalid_argument("kappa_of: truncation must be nonnegative");
    std::map<Signature, Scalar> expansion;
    Scalar tail(0);
    std::optional<int> used_truncation;
    const Rational& x = F.parameter();

    switch (F.family()) {
        case Family::BetaPlus:
        case Family::BetaMinus: {
            const Rational scale = pow(Rational(1 + x), n);
            for (int k = 0; k <= n; ++k) {
                Signature beta = F.family() == Family::BetaPlus
                                     ? Signature(padded(n, std::vector<int>(static_cast<size_t>(k), 1), 0))
                                     : Signature(padded(n, std::vector<int>(static_cast<size_t>(n - k), 0), -1));
                expansion.emplace(std::move(beta), Scalar(Rational(pow(x, k) / scale)));
            }
            break;
        }
        case Family::AlphaPlus:
        case Family::AlphaMinus: {
            const Rational scale = pow(Rational(1 - x), n);
            Rational mass(0);
            for (int k = 0;; ++k) {
                if (K ? k > *K : mass > 1 - Rational(kDefaultTail)) {
                    used_truncation = k - 1;
                    break;
                }
                if (k > kMaxTruncation) throw ResourceError("kappa_of: truncation bound exceeded");
                std::vector<int> parts(static_cast<size_t>(n), 0);
                if (F.family() == Family::AlphaPlus)
                    parts.front() = k;
                else
                    parts.back() = -k;
                Signature beta(std::move(parts));
                Rational value = pow(x, k) * scale;
                mass += value * dimension(beta);
                if (value != 0) expansion.emplace(std::move(beta), Scalar(std::move(value)));
            }
            tail = Scalar(Rational(1 - mass));
            break;
        }
        case Family::GammaPlus:
        case Family::GammaMinus: {
            const double t = x.get_d();
            const double scale = std::exp(-n * t);
            double mass = 0.0;
            for (int k = 0;; ++k) {
                if (K ? k > *K : 1.0 - mass < kDefaultTail) {
                    used_truncation = k - 1;
                    break;
                }
                if (k > kMaxTruncation) throw ResourceError("kappa_of: truncation bound exceeded");
                const double weight = scale * Rational(pow(x, k) / factorial(k)).get_d();
                for (const auto& beta : partitions(k, n)) {
                    const double value = weight * standard_tableaux(beta).get_d();
                    mass += value * dimension(beta).get_d();
                    if (value == 0.0) continue;
                    expansion.emplace(F.family() == Family::GammaPlus ? beta : reversed_negative(beta), Scalar(value));
                }
            }
            tail = Scalar(std::max(0.0, 1.0 - mass));
            break;
        }
        case Family::Laurent: expansion = laurent_expansion(F.coefficients(), n); break;
        case Family::Product: {
            ClassFunction acc = kappa_of(F.factors().front(), n, K);
            for (size_t i = 1; i < F.factors().size(); ++i) acc = acc * kappa_of(F.factors()[i], n, K);
            acc.source_ = F;
            return acc;
        }
    }
    ClassFunction kappa(n, std::move(expansion), std::move(tail));
    kappa.source_ = F;
    kappa.truncation_ = used_truncation;
    return kappa;
}

Scalar qn_entry(const ClassFunction& kappa, const Signature& lambda, const Signature& mu) {
    require_rank(kappa.rank(), lambda, "qn_entry");
    require_rank(kappa.rank(), mu, "qn_entry");
    const long degree = mu.total() - lambda.total();
    Scalar sum(0);
    for (const auto& [beta, c] : kappa.expansion()) {
        if (beta.total() != degree) continue;
        long lr = lr_coeff(lambda, beta, mu);
        if (lr != 0) sum += c * Scalar(lr);
    }
    if (sum.is_zero()) return Scalar(0);
    return sum * Scalar(Rational(dimension(mu) / dimension(lambda)));
}

std::map<Signature, Scalar> qn_row(const ClassFunction& kappa, const Signature& lambda) {
    require_rank(kappa.rank(), lambda, "qn_row");
    std::map<Signature, Scalar> row;
    for (const auto& [beta, c] : kappa.expansion())
        for (const auto& [tau, m] : lr_product(lambda, beta)) row[tau] += c * Scalar(m);
    const Rational dim_lambda = dimension(lambda);
    for (auto& [tau, v] : row) v *= Scalar(Rational(dimension(tau) / dim_lambda));
    std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
    return row;
}

Scalar pn_entry(const ClassFunction& kappa, const Weight& x, const Weight& y) {
    if (x.rank() != kappa.rank() || y.rank() != kappa.rank()) throw std::invalid_argument("pn_entry: rank mismatch");
    const Weight d = y - x;
    Scalar sum(0);
    for (const auto& [beta, c] : kappa.expansion()) {
        if (beta.total() != d.total()) continue;
        long m = weight_multiplicity(beta, d);
        if (m != 0) sum += c * Scalar(m);
    }
    return sum;
}

Scalar TorusStep::mass() const {
    Scalar sum(0);
    for (const auto& [w, v] : law) sum += v;
    return sum;
}

TorusStep torus_step(const ClassFunction& kappa, const EnumerationLimits& limits) {
    TorusStep step;
    step.rank = kappa.rank();
    for (const auto& [beta, c] : kappa.expansion())
        for (const auto& [w, m] : weight_expansion(beta, limits)) step.law[w] += c * Scalar(m);
    std::erase_if(step.law, [](const auto& kv) { return kv.second.is_zero(); });
    return step;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

std::string pair_label(const Signature& a, const Signature& b) { return "(" + format(a) + ")->(" + format(b) + ")"; }

template <class Key>
std::map<Key, Scalar> convolve_laws(const std::map<Key, Scalar>& a, const std::map<Key, Scalar>& b) {
    std::map<Key, Scalar> out;
    for (const auto& [x, u] : a)
        for (const auto& [y, v] : b) out[Key(x + y)] += u * v;
    return out;
}

template <class Key>
void compare_laws(CheckReport& report, const std::map<Key, Scalar>& lhs, const std::map<Key, Scalar>& rhs,
                  double tol, const std::string& label) {
    std::map<Key, std::pair<Scalar, Scalar>> joined;
    for (const auto& [k, v] : lhs) joined[k].first = v;
    for (const auto& [k, v] : rhs) joined[k].second = v;
    for (const auto& [k, vals] : joined) report.record(vals.first, vals.second, tol, label + " at (" + format(k) + ")");
}

}  // namespace

CheckReport check_qrw(const SpectralFunction& F, int n, const std::vector<Signature>& window, double eps) {
    CheckReport direct("qrw"), inverted("qrw");
    const TransitionKernel kernel(EvaluationPoint::ones(n), F);
    const ClassFunction k_direct = kappa_of(F, n), k_inverted = kappa_of(F.inverted(), n);

    for (const auto& lambda : window)
        for (const auto& mu : window) {
            const Scalar t = kernel.entry(lambda, mu);
            const double tol_d = k_direct.exact() && t.exact() ? 0.0 : eps;
            const double tol_i = k_inverted.exact() && t.exact() ? 0.0 : eps;
            direct.record(qn_entry(k_direct, lambda, mu), t, tol_d, pair_label(lambda, mu));
            inverted.record(qn_entry(k_inverted, lambda, mu), t, tol_i, pair_label(lambda, mu));
        }

    std::string pairing = direct.pass && inverted.pass ? "both"
                          : inverted.pass             ? "inverted"
                          : direct.pass               ? "direct"
                                                      : "none";
    CheckReport report = inverted;
    report.details["family"] = F.family_name();
    report.details["F"] = F.to_string();
    report.details["n"] = n;
    report.details["window"] = window.size();
    report.details["pairing"] = pairing;
    report.details["direct_max_abs_error"] = direct.max_abs_error.str();
    report.details["inverted_max_abs_error"] = inverted.max_abs_error.str();
    return report;
}

namespace {

Scalar center_lhs(const std::map<Signature, Scalar>& row0, const Signature& lambda, const Signature& tau) {
    const long degree = tau.total() - lambda.total();
    const Rational ratio = dimension(tau) / dimension(lambda);
    Scalar sum(0);
    for (const auto& [mu, q] : row0) {
        if (mu.total() != degree) continue;
        long c = lr_coeff(lambda, mu, tau);
        if (c != 0) sum += q * Scalar(Rational(c * ratio / dimension(mu)));
    }
    return sum;
}

}  // namespace

CheckReport check_center_intertwining(const ClassFunction& kappa, const Signature& lambda, const Signature& tau) {
    CheckReport report("center");
    const auto row0 = qn_row(kappa, Signature::zero(kappa.rank()));
    const Scalar lhs = center_lhs(row0, lambda, tau), rhs = qn_entry(kappa, lambda, tau);
    report.record(lhs, rhs, kappa.exact() ? 0.0 : 1e-12, pair_label(lambda, tau));
    report.details["n"] = kappa.rank();
    report.details["lhs"] = lhs.str();
    report.details["rhs"] = rhs.str();
    return report;
}

CheckReport check_center_window(const ClassFunction& kappa, const std::vector<Signature>& window) {
    CheckReport report("center");
    report.details["n"] = kappa.rank();
    report.details["window"] = window.size();
    if (kappa.source()) report.details["F"] = kappa.source()->to_string();
    const auto row0 = qn_row(kappa, Signature::zero(kappa.rank()));
    const double tol = kappa.exact() ? 0.0 : 1e-12;
    for (const auto& lambda : window)
        for (const auto& tau : window)
            report.record(center_lhs(row0, lambda, tau), qn_entry(kappa, lambda, tau), tol, pair_label(lambda, tau));
    return report;
}

CheckReport check_q_morphism(const ClassFunction& k1, const ClassFunction& k2, const std::vector<Signature>& window) {
    CheckReport report("q-morphism");
    report.details["n"] = k1.rank();
    report.details["window"] = window.size();
    const ClassFunction k12 = k1 * k2;
    const double tol = k1.exact() && k2.exact() ? 0.0 : 1e-12;
    for (const auto& lambda : window) {
        const auto row1 = qn_row(k1, lambda);
        for (const auto& tau : window) {
            Scalar lhs(0);
            for (const auto& [gamma, a] : row1) lhs += a * qn_entry(k2, gamma, tau);
            report.record(lhs, qn_entry(k12, lambda, tau), tol, pair_label(lambda, tau));
        }
    }
    return report;
}

CheckReport check_torus(const ClassFunction& k1, const ClassFunction& k2, const Signature& lambda, const Signature& mu,
                        std::uint64_t seed, int triples) {
    CheckReport report("torus");
    const int n = k1.rank();
    require_rank(n, lambda, "check_torus");
    require_rank(n, mu, "check_torus");
    report.details["n"] = n;
    report.details["lambda"] = lambda.parts();
    report.details["mu"] = mu.parts();
    report.details["seed"] = seed;

    auto as_law = [](const WeightExpansion& e) {
        std::map<Weight, Scalar> law;
        for (const auto& [w, m] : e) law.emplace(w, Scalar(m));
        return law;
    };

    // weight distribution of χ_λ χ_μ through its LR decomposition
    std::map<Weight, Scalar> product_law;
    for (const auto& [tau, c] : lr_product(lambda, mu))
        for (const auto& [w, m] : weight_expansion(tau)) product_law[w] += Scalar(c * m);
    compare_laws(report, product_law, convolve_laws(as_law(weight_expansion(lambda)), as_law(weight_expansion(mu))),
                 0.0, "characters");

    const TorusStep s1 = torus_step(k1), s2 = torus_step(k2), s12 = torus_step(k1 * k2);
    const double tol = k1.exact() && k2.exact() ? 0.0 : 1e-12;
    compare_laws(report, s12.law, convolve_laws(s1.law, s2.law), tol, "increment laws");

    Philox4x32 rng(seed);
    auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint32_t>(hi - lo + 1)); };
    for (int t = 0; t < triples; ++t) {
        const std::pair<const ClassFunction*, const TorusStep*> both[] = {{&k1, &s1}, {&k2, &s2}};
        for (const auto& [kappa, step] : both) {
            std::vector<int> xs(static_cast<size_t>(n)), shift(static_cast<size_t>(n));
            for (auto& v : xs) v = draw(-3, 3);
            for (auto& v : shift) v = draw(-3, 3);
            const Weight x(xs);
            // half the draws land on the support so the comparison is not all zeros
            Weight d = Weight::zero(n);
            if (!step->law.empty() && draw(0, 1) == 0) {
                auto it = step->law.begin();
                std::advance(it, draw(0, static_cast<int>(step->law.size()) - 1));
                d = it->first;
            } else {
                std::vector<int> ds(static_cast<size_t>(n));
                for (auto& v : ds) v = draw(-2, 2);
                d = Weight(ds);
            }
            const Weight y = x + d;
            std::vector<int> perm(static_cast<size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(draw(0, i))]);

            const Scalar base = pn_entry(*kappa, x, y);
            const std::string where = "x=(" + format(x) + ") y=(" + format(y) + ")";
            report.record(pn_entry(*kappa, weyl_act(perm, x), weyl_act(perm, y)), base, 0.0, "Weyl " + where);
            report.record(pn_entry(*kappa, x + Weight(shift), y + Weight(shift)), base, 0.0, "translation " + where);
            auto it = step->law.find(d);
            report.record(it == step->law.end() ? Scalar(0) : it->second, base, tol, "increment law " + where);
        }
    }
    return report;
}

}  // namespace sigwalk
