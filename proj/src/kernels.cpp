#include "sigwalk/kernels.hpp"

#include "sigwalk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace sigwalk {

// ---------------------------------------------------------------------------
// SpectralFunction

namespace {

void require_range(const Rational& v, const Rational& lo, const Rational& hi, bool hi_open, const char* what) {
    if (v < lo || v > hi || (hi_open && v == hi))
        throw std::invalid_argument(std::string(what) + " parameter out of range: " + to_string(v));
}

std::map<int, Rational> convolve(const std::map<int, Rational>& a, const std::map<int, Rational>& b) {
    std::map<int, Rational> out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) out[i + j] += x * y;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_top_level(std::string_view s) {
    std::vector<std::string_view> parts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (depth < 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
        if (c == ',' && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
    parts.push_back(trim(s.substr(start)));
    return parts;
}

const char* parameter_key(Family f) {
    switch (f) {
        case Family::AlphaPlus:
        case Family::AlphaMinus: return "q";
        case Family::BetaPlus:
        case Family::BetaMinus: return "p";
        case Family::GammaPlus:
        case Family::GammaMinus: return "t";
        default: return "";
    }
}

}  // namespace

SpectralFunction SpectralFunction::alpha_plus(Rational q) {
    require_range(q, 0, 1, true, "alpha+");
    return {Family::AlphaPlus, std::move(q)};
}
SpectralFunction SpectralFunction::alpha_minus(Rational q) {
    require_range(q, 0, 1, true, "alpha-");
    return {Family::AlphaMinus, std::move(q)};
}
SpectralFunction SpectralFunction::beta_plus(Rational p) {
    require_range(p, 0, 1, false, "beta+");
    return {Family::BetaPlus, std::move(p)};
}
SpectralFunction SpectralFunction::beta_minus(Rational p) {
    require_range(p, 0, 1, false, "beta-");
    return {Family::BetaMinus, std::move(p)};
}
SpectralFunction SpectralFunction::gamma_plus(Rational t) {
    if (t < 0) throw std::invalid_argument("gamma+ parameter must be >= 0: " + sigwalk::to_string(t));
    return {Family::GammaPlus, std::move(t)};
}
SpectralFunction SpectralFunction::gamma_minus(Rational t) {
    if (t < 0) throw std::invalid_argument("gamma- parameter must be >= 0: " + sigwalk::to_string(t));
    return {Family::GammaMinus, std::move(t)};
}

SpectralFunction SpectralFunction::laurent(std::map<int, Rational> coefficients) {
    std::erase_if(coefficients, [](const auto& kv) { return kv.second == 0; });
    if (coefficients.empty()) throw std::invalid_argument("Laurent polynomial must not vanish identically");
    SpectralFunction F(Family::Laurent, Rational(0));
    F.coefficients_ = std::move(coefficients);
    return F;
}

SpectralFunction SpectralFunction::product(std::vector<SpectralFunction> factors) {
    std::vector<SpectralFunction> flat;
    std::map<int, Rational> folded{{0, Rational(1)}};
    for (auto& f : factors) {
        if (f.family_ == Family::Product) {
            for (const auto& g : f.factors_) {
                if (g.family_ == Family::Laurent)
                    folded = convolve(folded, g.coefficients_);
                else
                    flat.push_back(g);
            }
        } else if (f.family_ == Family::Laurent) {
            folded = convolve(folded, f.coefficients_);
        } else {
            flat.push_back(std::move(f));
        }
    }
    SpectralFunction L = laurent(std::move(folded));
    if (!L.is_identity() || flat.empty()) flat.push_back(std::move(L));
    if (flat.size() == 1) return flat.front();
    SpectralFunction F(Family::Product, Rational(0));
    F.factors_ = std::move(flat);
    return F;
}

SpectralFunction SpectralFunction::parse(std::string_view text) {
    text = trim(text);
    if (text.starts_with("prod(") && text.ends_with(")")) {
        std::vector<SpectralFunction> factors;
        for (auto part : split_top_level(text.substr(5, text.size() - 6))) factors.push_back(parse(part));
        return product(std::move(factors));
    }
    if (text.starts_with("laurent{") && text.ends_with("}")) {
        std::map<int, Rational> coeffs;
        std::string_view body = trim(text.substr(8, text.size() - 9));
        if (body.empty()) throw ParseError("empty Laurent polynomial");
        for (auto item : split_top_level(body)) {
            auto colon = item.find(':');
            if (colon == std::string_view::npos) throw ParseError("Laurent term needs 'm:coefficient': '" + std::string(item) + "'");
            std::string exponent(trim(item.substr(0, colon)));
            Rational m = parse_rational(exponent);
            if (m.get_den() != 1) throw ParseError("Laurent exponent must be an integer: '" + exponent + "'");
            int key = static_cast<int>(m.get_num().get_si());
            if (coeffs.contains(key)) throw ParseError("repeated Laurent exponent " + exponent);
            coeffs[key] = parse_rational(item.substr(colon + 1));
        }
        return laurent(std::move(coeffs));
    }
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("unknown spectral function '" + std::string(text) + "'");
    std::string_view name = trim(text.substr(0, colon));
    Rational param = parse_rational(text.substr(colon + 1));
    if (name == "alpha+") return alpha_plus(param);
    if (name == "alpha-") return alpha_minus(param);
    if (name == "beta+") return beta_plus(param);
    if (name == "beta-") return beta_minus(param);
    if (name == "gamma+") return gamma_plus(param);
    if (name == "gamma-") return gamma_minus(param);
    throw ParseError("unknown spectral family '" + std::string(name) + "'");
}

bool SpectralFunction::is_named() const { return family_ != Family::Laurent && family_ != Family::Product; }

bool SpectralFunction::involves_gamma() const {
    if (family_ == Family::GammaPlus || family_ == Family::GammaMinus) return true;
    return std::any_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.involves_gamma(); });
}

bool SpectralFunction::nonnegative() const {
    if (is_named()) return true;
    if (family_ == Family::Laurent)
        return std::all_of(coefficients_.begin(), coefficients_.end(), [](const auto& kv) { return kv.second >= 0; });
    return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.nonnegative(); });
}

bool SpectralFunction::is_identity() const {
    return family_ == Family::Laurent && coefficients_.size() == 1 && coefficients_.begin()->first == 0 &&
           coefficients_.begin()->second == 1;
}

SpectralFunction SpectralFunction::inverted() const {
    switch (family_) {
        case Family::AlphaPlus: return alpha_minus(parameter_);
        case Family::AlphaMinus: return alpha_plus(parameter_);
        case Family::BetaPlus: return beta_minus(parameter_);
        case Family::BetaMinus: return beta_plus(parameter_);
        case Family::GammaPlus: return gamma_minus(parameter_);
        case Family::GammaMinus: return gamma_plus(parameter_);
        case Family::Laurent: {
            std::map<int, Rational> mirrored;
            for (const auto& [m, c] : coefficients_) mirrored[-m] = c;
            return laurent(std::move(mirrored));
        }
        case Family::Product: {
            std::vector<SpectralFunction> inv;
            for (const auto& f : factors_) inv.push_back(f.inverted());
            return product(std::move(inv));
        }
    }
    throw std::logic_error("unreachable");
}

std::string SpectralFunction::family_name() const {
    switch (family_) {
        case Family::AlphaPlus: return "alpha+";
        case Family::AlphaMinus: return "alpha-";
        case Family::BetaPlus: return "beta+";
        case Family::BetaMinus: return "beta-";
        case Family::GammaPlus: return "gamma+";
        case Family::GammaMinus: return "gamma-";
        case Family::Laurent: return "laurent";
        case Family::Product: return "prod";
    }
    return "";
}

std::string SpectralFunction::to_string() const {
    if (is_named()) return family_name() + ":" + sigwalk::to_string(parameter_);
    if (family_ == Family::Laurent) {
        std::string s = "laurent{";
        bool first = true;
        for (const auto& [m, c] : coefficients_) {
            if (!first) s += ',';
            first = false;
            s += std::to_string(m) + ":" + sigwalk::to_string(c);
        }
        return s + "}";
    }
    std::string s = "prod(";
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ',';
        s += factors_[i].to_string();
    }
    return s + ")";
}

nlohmann::json SpectralFunction::to_json() const {
    nlohmann::json j;
    j["family"] = family_name();
    if (is_named()) {
        j[parameter_key(family_)] = sigwalk::to_string(parameter_);
    } else if (family_ == Family::Laurent) {
        nlohmann::json coeffs = nlohmann::json::object();
        for (const auto& [m, c] : coefficients_) coeffs[std::to_string(m)] = sigwalk::to_string(c);
        j["coefficients"] = coeffs;
    } else {
        j["factors"] = nlohmann::json::array();
        for (const auto& f : factors_) j["factors"].push_back(f.to_json());
    }
    return j;
}

// ---------------------------------------------------------------------------
// Fourier coefficients

struct FourierSeq::Cache {
    std::mutex mutex;
    std::unordered_map<long, Rational> values;
};

FourierSeq::FourierSeq(std::optional<long> lower, std::optional<long> upper, std::function<Rational(long)> eval)
    : lower_(lower), upper_(upper), eval_(std::move(eval)), cache_(std::make_shared<Cache>()) {}

Rational FourierSeq::operator()(long m) const {
    if (!in_support(m)) return Rational(0);
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->values.find(m); it != cache_->values.end()) return it->second;
    }
    Rational v = eval_(m);
    std::lock_guard lock(cache_->mutex);
    cache_->values.emplace(m, v);
    return v;
}

namespace {

Rational factorial(long m) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return Rational(f);
}

FourierSeq convolution(const FourierSeq& a, const FourierSeq& b) {
    // j ranges over supp(a) ∩ (m - supp(b)); both ends must be bounded
    if ((!a.lower() && !b.upper()) || (!a.upper() && !b.lower()))
        throw DomainError("product of factors unbounded on opposite sides is unsupported");
    std::optional<long> lower, upper;
    if (a.lower() && b.lower()) lower = *a.lower() + *b.lower();
    if (a.upper() && b.upper()) upper = *a.upper() + *b.upper();
    return FourierSeq(lower, upper, [a, b](long m) {
        long lo = a.lower() ? *a.lower() : m - *b.upper();
        if (b.upper()) lo = std::max(lo, m - *b.upper());
        long hi = a.upper() ? *a.upper() : m - *b.lower();
        if (b.lower()) hi = std::min(hi, m - *b.lower());
        Rational sum(0);
        for (long j = lo; j <= hi; ++j) sum += a(j) * b(m - j);
        return sum;
    });
}

}  // namespace

FourierSeq fourier(const SpectralFunction& F) {
    const Rational x = F.parameter();
    switch (F.family()) {
        case Family::AlphaPlus: return FourierSeq(0, std::nullopt, [x](long m) { return pow(x, m); });
        case Family::AlphaMinus: return FourierSeq(std::nullopt, 0, [x](long m) { return pow(x, -m); });
        case Family::BetaPlus: return FourierSeq(0, 1, [x](long m) { return m == 0 ? Rational(1) : x; });
        case Family::BetaMinus: return FourierSeq(-1, 0, [x](long m) { return m == 0 ? Rational(1) : x; });
        case Family::GammaPlus:
            return FourierSeq(0, std::nullopt, [x](long m) { return Rational(pow(x, m) / factorial(m)); });
        case Family::GammaMinus:
            return FourierSeq(std::nullopt, 0, [x](long m) { return Rational(pow(x, -m) / factorial(-m)); });
        case Family::Laurent: {
            const auto coeffs = F.coefficients();
            return FourierSeq(coeffs.begin()->first, coeffs.rbegin()->first, [coeffs](long m) {
                auto it = coeffs.find(static_cast<int>(m));
                return it == coeffs.end() ? Rational(0) : it->second;
            });
        }
        case Family::Product: {
            FourierSeq acc = fourier(F.factors().front());
            for (size_t i = 1; i < F.factors().size(); ++i) acc = convolution(acc, fourier(F.factors()[i]));
            return acc;
        }
    }
    throw std::logic_error("unreachable");
}

Scalar eval_F(const SpectralFunction& F, const Rational& z) {
    const Rational& x = F.parameter();
    auto need_nonzero = [&] {
        if (z == 0) throw DomainError(F.to_string() + " is singular at z = 0");
    };
    switch (F.family()) {
        case Family::AlphaPlus: {
            Rational d = 1 - x * z;
            if (d == 0) throw DomainError(F.to_string() + " has a pole at z = " + to_string(z));
            return Scalar(Rational(1 / d));
        }
        case Family::AlphaMinus: {
            need_nonzero();
            Rational d = 1 - x / z;
            if (d == 0) throw DomainError(F.to_string() + " has a pole at z = " + to_string(z));
            return Scalar(Rational(1 / d));
        }
        case Family::BetaPlus: return Scalar(Rational(1 + x * z));
        case Family::BetaMinus: need_nonzero(); return Scalar(Rational(1 + x / z));
        case Family::GammaPlus: return Scalar(std::exp(x.get_d() * z.get_d()));
        case Family::GammaMinus: need_nonzero(); return Scalar(std::exp(x.get_d() / z.get_d()));
        case Family::Laurent: {
            Rational sum(0);
            for (const auto& [m, c] : F.coefficients()) {
                if (m < 0) need_nonzero();
                sum += c * pow(z, m);
            }
            return Scalar(sum);
        }
        case Family::Product: {
            Scalar prod(1);
            for (const auto& f : F.factors()) prod *= eval_F(f, z);
            return prod;
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Kernel rows

Scalar KernelRow::mass() const {
    Scalar sum(0);
    for (const auto& [mu, v] : entries) sum += v;
    return sum;
}

Scalar KernelRow::at(const Signature& mu) const {
    auto it = entries.find(mu);
    return it == entries.end() ? Scalar(0) : it->second;
}

bool KernelRow::exact() const {
    if (truncated) return false;
    return std::all_of(entries.begin(), entries.end(), [](const auto& kv) { return kv.second.exact(); });
}

namespace {

void check_annulus(const SpectralFunction& F, const EvaluationPoint& theta) {
    if (F.family() == Family::Product) {
        for (const auto& f : F.factors()) check_annulus(f, theta);
        return;
    }
    for (const auto& t : theta.values()) {
        // the series for (1 - q z)^{-1} converges at z = 1/θ iff q < θ; mirrored for alpha-
        if (F.family() == Family::AlphaPlus && !(F.parameter() < t))
            throw DomainError("theta = " + to_string(t) + " lies outside the convergence annulus of " + F.to_string());
        if (F.family() == Family::AlphaMinus && !(F.parameter() * t < 1))
            throw DomainError("theta = " + to_string(t) + " lies outside the convergence annulus of " + F.to_string());
    }
}

}  // namespace

TransitionKernel::TransitionKernel(EvaluationPoint theta, SpectralFunction F)
    : theta_(std::move(theta)), F_(std::move(F)), f_(fourier(F_)), schur_(std::make_shared<SchurEvaluator>(theta_)) {
    if (!theta_.all_positive()) throw std::invalid_argument("kernel parameters theta must be positive");
    check_annulus(F_, theta_);
    Scalar norm(1);
    for (const auto& t : theta_.values()) norm *= eval_F(F_, Rational(1 / t));
    if (norm.is_zero()) throw DomainError("normalizer of " + F_.to_string() + " vanishes");
    normalizer_ = norm;
}

Rational TransitionKernel::schur(const Signature& lambda) const {
    if (theta_.all_ones()) return dimension(lambda);
    return (*schur_)(lambda);
}

Rational TransitionKernel::minor(const Signature& lambda, const Signature& mu) const {
    const int n = rank();
    SquareMatrix<Rational> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = f_(static_cast<long>(lambda[j] - j) - (mu[i] - i));
    return determinant(std::move(m));
}

bool TransitionKernel::support_possible(const Signature& lambda, const Signature& mu) const {
    // a nonzero permutation term forces the sorted matching to stay in supp f
    for (int i = 0; i < rank(); ++i)
        if (!f_.in_support(static_cast<long>(lambda[i]) - mu[i])) return false;
    return true;
}

Scalar TransitionKernel::entry(const Signature& lambda, const Signature& mu) const {
    if (lambda.rank() != rank() || mu.rank() != rank()) throw std::invalid_argument("tn_entry: rank mismatch");
    if (!support_possible(lambda, mu)) return Scalar(0);
    Rational det = minor(lambda, mu);
    if (det == 0) return Scalar(0);
    return Scalar(Rational(schur(mu) / schur(lambda) * det)) / normalizer_;
}

KernelRow TransitionKernel::row(const Signature& lambda, const RowOptions& options) const {
    const int n = rank();
    if (lambda.rank() != n) throw std::invalid_argument("tn_row: rank mismatch");
    KernelRow out{lambda, {}, false, Scalar(0)};

    // μ_i - λ_i ranges over -supp f
    std::optional<long> dlo, dhi;
    if (f_.upper()) dlo = -*f_.upper();
    if (f_.lower()) dhi = -*f_.lower();

    std::vector<int> mu(static_cast<size_t>(n));
    auto emit = [&] {
        Signature target(mu);
        Scalar v = entry(lambda, target);
        if (!v.is_zero()) out.entries.emplace(std::move(target), std::move(v));
    };

    if (dlo && dhi) {
        auto rec = [&](auto&& self, int i) -> void {
            if (i == n) return emit();
            long hi = lambda[i] + *dhi;
            if (i > 0) hi = std::min<long>(hi, mu[static_cast<size_t>(i - 1)]);
            for (long v = lambda[i] + *dlo; v <= hi; ++v) {
                mu[static_cast<size_t>(i)] = static_cast<int>(v);
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        return out;
    }

    if (!F_.nonnegative())
        throw DomainError("adaptive truncation needs nonnegative coefficients: " + F_.to_string());
    if (!(options.eps > 0)) throw std::invalid_argument("infinite-support rows need eps > 0");

    const Scalar target = F_.involves_gamma() ? Scalar(1.0 - options.eps) : Scalar(Rational(1) - Rational(options.eps));
    Scalar mass(0);
    for (long k = 0;; ++k) {
        if (k > options.max_displacement)
            throw ResourceError("row of " + F_.to_string() + " did not reach mass 1 - eps within displacement " +
                                std::to_string(options.max_displacement));
        auto rec = [&](auto&& self, int i, long left) -> void {
            if (i == n) {
                if (left == 0) emit();
                return;
            }
            long lo = -left, hi = left;
            if (dlo) lo = std::max(lo, *dlo);
            if (dhi) hi = std::min(hi, *dhi);
            if (i > 0) hi = std::min<long>(hi, static_cast<long>(mu[static_cast<size_t>(i - 1)]) - lambda[i]);
            for (long d = lo; d <= hi; ++d) {
                mu[static_cast<size_t>(i)] = static_cast<int>(lambda[i] + d);
                self(self, i + 1, left - std::labs(d));
            }
        };
        rec(rec, 0, k);
        mass = out.mass();
        if (!(mass < target)) break;
    }
    out.truncated = true;
    out.tail = Scalar(1) - mass;
    if (out.tail.sign() < 0) out.tail = out.tail.exact() ? Scalar(0) : Scalar(0.0);
    return out;
}

Scalar tn_entry(const EvaluationPoint& theta, const SpectralFunction& F, const Signature& lambda, const Signature& mu) {
    return TransitionKernel(theta, F).entry(lambda, mu);
}

KernelRow tn_row(const EvaluationPoint& theta, const SpectralFunction& F, const Signature& lambda, double eps) {
    return TransitionKernel(theta, F).row(lambda, {eps});
}

KernelRow p0_row(const EvaluationPoint& theta, const SpectralFunction& F, double eps) {
    return TransitionKernel(theta, F).initial_law({eps});
}

namespace {

std::optional<Scalar> closed_form_with(const SchurEvaluator& schur, const Scalar& normalizer, const SpectralFunction& F,
                                       const Signature& lambda, const Signature& mu) {
    const int n = lambda.rank();
    long moved = mu.total() - lambda.total();
    bool in_support = false;
    switch (F.family()) {
        case Family::BetaMinus:
        case Family::BetaPlus: {
            const int lo = F.family() == Family::BetaMinus ? 0 : -1;
            in_support = true;
            for (int i = 0; i < n; ++i) {
                int d = mu[i] - lambda[i];
                if (d < lo || d > lo + 1) in_support = false;
            }
            break;
        }
        case Family::AlphaMinus: in_support = interlaces(lambda, mu); break;
        case Family::AlphaPlus: in_support = interlaces(mu, lambda); break;
        default: return std::nullopt;
    }
    if (!in_support) return Scalar(0);
    const long k = std::labs(moved);
    return Scalar(Rational(pow(F.parameter(), k) * schur(mu) / schur(lambda))) / normalizer;
}

}  // namespace

std::optional<Scalar> closed_form_entry(const EvaluationPoint& theta, const SpectralFunction& F, const Signature& lambda,
                                        const Signature& mu) {
    if (lambda.rank() != theta.rank() || mu.rank() != theta.rank())
        throw std::invalid_argument("closed_form_entry: rank mismatch");
    Scalar norm(1);
    for (const auto& t : theta.values()) norm *= eval_F(F, Rational(1 / t));
    return closed_form_with(SchurEvaluator(theta), norm, F, lambda, mu);
}

nlohmann::json row_to_json(const TransitionKernel& kernel, const KernelRow& row) {
    nlohmann::json j;
    j["n"] = kernel.rank();
    j["theta"] = nlohmann::json::array();
    for (const auto& t : kernel.point().values()) j["theta"].push_back(to_string(t));
    j["F"] = kernel.function().to_json();
    j["lambda"] = row.source.parts();
    j["entries"] = nlohmann::json::array();
    for (const auto& [mu, v] : row.entries) j["entries"].push_back({{"mu", mu.parts()}, {"value", v.str()}});
    j["exact"] = row.exact();
    j["tail"] = row.tail.str();
    return j;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

std::string pair_label(const Signature& a, const Signature& b) { return "(" + format(a) + ")->(" + format(b) + ")"; }

nlohmann::json theta_json(const EvaluationPoint& theta) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& t : theta.values()) j.push_back(to_string(t));
    return j;
}

Scalar star_lhs(const TransitionKernel& kernel, const KernelRow& initial, const Signature& lambda, const Signature& tau) {
    const long degree = tau.total() - lambda.total();
    Scalar sum(0);
    const Rational s_lambda = kernel.schur(lambda);
    const Rational s_tau = kernel.schur(tau);
    for (const auto& [mu, p] : initial.entries) {
        if (mu.total() != degree) continue;
        long c = lr_coeff(lambda, mu, tau);
        if (c == 0) continue;
        sum += p * Scalar(Rational(Rational(c) * s_tau / (s_lambda * kernel.schur(mu))));
    }
    return sum;
}

}  // namespace

CheckReport check_semigroup(const EvaluationPoint& theta, const SpectralFunction& F1, const SpectralFunction& F2,
                            const std::vector<Signature>& window, double eps) {
    CheckReport report("semigroup");
    report.details["theta"] = theta_json(theta);
    report.details["F1"] = F1.to_string();
    report.details["F2"] = F2.to_string();
    report.details["n"] = theta.rank();
    report.details["window"] = window.size();

    const TransitionKernel k1(theta, F1), k2(theta, F2), k12(theta, SpectralFunction::product({F1, F2}));
    const bool exact_regime = !F1.involves_gamma() && !F2.involves_gamma();
    std::map<Signature, KernelRow> rows2;

    for (const auto& lambda : window) {
        const KernelRow r1 = k1.row(lambda, {eps});
        const double tol = (exact_regime && !r1.truncated) ? 0.0 : eps;
        std::map<Signature, Scalar> lhs;
        if (k2.coefficients().finite()) {
            for (const auto& [gamma, a] : r1.entries) {
                auto it = rows2.find(gamma);
                if (it == rows2.end()) it = rows2.emplace(gamma, k2.row(gamma, {eps})).first;
                for (const auto& [tau, b] : it->second.entries) lhs[tau] += a * b;
            }
        } else {
            for (const auto& tau : window) {
                Scalar s(0);
                for (const auto& [gamma, a] : r1.entries) s += a * k2.entry(gamma, tau);
                lhs[tau] = s;
            }
        }
        for (const auto& tau : window) {
            auto it = lhs.find(tau);
            report.record(it == lhs.end() ? Scalar(0) : it->second, k12.entry(lambda, tau), tol, pair_label(lambda, tau));
        }
    }
    return report;
}

CheckReport check_stochastic(const SpectralFunction& F, int n, const std::vector<Signature>& window, double eps) {
    CheckReport report("stochastic");
    report.details["F"] = F.to_string();
    report.details["n"] = n;
    report.details["window"] = window.size();
    const TransitionKernel kernel(EvaluationPoint::ones(n), F);
    Scalar max_tail(0);
    for (const auto& lambda : window) {
        const KernelRow row = kernel.row(lambda, {eps});
        for (const auto& [mu, v] : row.entries)
            if (v.sign() < 0) report.fail("negative entry at " + pair_label(lambda, mu) + ": " + v.str());
        const Scalar mass = row.mass();
        if (row.exact()) {
            report.record(mass, Scalar(1), 0.0, "row sum at " + format(lambda));
        } else {
            // rounding can push a float sum a hair above 1
            const double m = mass.to_double();
            ++report.compared;
            Scalar err = abs(mass - Scalar(1));
            if (report.max_abs_error < err) report.max_abs_error = err;
            if (m < 1.0 - eps || m > 1.0 + 1e-12) report.fail("row sum at " + format(lambda) + " = " + mass.str());
        }
        if (max_tail < row.tail) max_tail = row.tail;
    }
    report.details["max_tail"] = max_tail.str();
    return report;
}

CheckReport check_star(const EvaluationPoint& theta, const SpectralFunction& F, const Signature& lambda,
                       const Signature& tau, double eps) {
    CheckReport report("star");
    const TransitionKernel kernel(theta, F);
    const KernelRow initial = kernel.initial_law({eps});
    const double tol = initial.exact() && kernel.normalizer().exact() ? 0.0 : eps;
    Scalar lhs = star_lhs(kernel, initial, lambda, tau);
    Scalar rhs = kernel.entry(lambda, tau);
    report.record(lhs, rhs, tol, pair_label(lambda, tau));
    report.details["F"] = F.to_string();
    report.details["theta"] = theta_json(theta);
    report.details["lhs"] = lhs.str();
    report.details["rhs"] = rhs.str();
    return report;
}

CheckReport check_star_window(const EvaluationPoint& theta, const SpectralFunction& F,
                              const std::vector<Signature>& window, double eps) {
    CheckReport report("star");
    report.details["F"] = F.to_string();
    report.details["theta"] = theta_json(theta);
    report.details["window"] = window.size();
    const TransitionKernel kernel(theta, F);
    const KernelRow initial = kernel.initial_law({eps});
    const double tol = initial.exact() && kernel.normalizer().exact() ? 0.0 : eps;
    for (const auto& lambda : window)
        for (const auto& tau : window)
            report.record(star_lhs(kernel, initial, lambda, tau), kernel.entry(lambda, tau), tol, pair_label(lambda, tau));
    return report;
}

CheckReport check_closed_forms(const EvaluationPoint& theta, const SpectralFunction& F,
                               const std::vector<Signature>& window) {
    CheckReport report("lemma212");
    report.details["F"] = F.to_string();
    report.details["theta"] = theta_json(theta);
    report.details["window"] = window.size();
    const TransitionKernel kernel(theta, F);
    const SchurEvaluator schur(theta);
    for (const auto& lambda : window)
        for (const auto& mu : window) {
            auto expected = closed_form_with(schur, kernel.normalizer(), F, lambda, mu);
            if (!expected) throw std::invalid_argument("no closed form for " + F.to_string());
            report.record(kernel.entry(lambda, mu), *expected, 0.0, pair_label(lambda, mu));
        }
    return report;
}

CheckReport check_gamma_limit(const SpectralFunction& gamma, int n, const std::vector<Signature>& window,
                              const std::vector<int>& powers, double tolerance) {
    if (gamma.family() != Family::GammaPlus && gamma.family() != Family::GammaMinus)
        throw std::invalid_argument("check_gamma_limit needs a gamma family");
    CheckReport report("gamma-limit");
    report.details["F"] = gamma.to_string();
    report.details["n"] = n;
    const EvaluationPoint ones = EvaluationPoint::ones(n);
    const TransitionKernel limit(ones, gamma);

    std::map<std::pair<Signature, Signature>, double> target;
    for (const auto& lambda : window)
        for (const auto& mu : window) target[{lambda, mu}] = limit.entry(lambda, mu).to_double();

    std::vector<double> deviations;
    nlohmann::json per_power = nlohmann::json::array();
    for (int k : powers) {
        const Rational p = gamma.parameter() / k;
        const TransitionKernel step(ones, gamma.family() == Family::GammaPlus ? SpectralFunction::beta_plus(p)
                                                                               : SpectralFunction::beta_minus(p));
        std::map<Signature, std::vector<std::pair<Signature, double>>> rows;
        auto row_of = [&](const Signature& s) -> const std::vector<std::pair<Signature, double>>& {
            auto it = rows.find(s);
            if (it != rows.end()) return it->second;
            std::vector<std::pair<Signature, double>> r;
            for (const auto& [mu, v] : step.row(s).entries) r.emplace_back(mu, v.to_double());
            return rows.emplace(s, std::move(r)).first->second;
        };

        double worst = 0.0;
        for (const auto& lambda : window) {
            std::map<Signature, double> dist{{lambda, 1.0}};
            for (int s = 0; s < k; ++s) {
                std::map<Signature, double> next;
                for (const auto& [state, mass] : dist)
                    for (const auto& [to, prob] : row_of(state)) next[to] += mass * prob;
                std::erase_if(next, [](const auto& kv) { return kv.second < 1e-30; });
                dist = std::move(next);
            }
            for (const auto& mu : window) {
                auto it = dist.find(mu);
                double power_entry = it == dist.end() ? 0.0 : it->second;
                worst = std::max(worst, std::abs(power_entry - target[{lambda, mu}]));
            }
        }
        deviations.push_back(worst);
        per_power.push_back({{"k", k}, {"max_deviation", worst}});
        report.compared += static_cast<long>(window.size() * window.size());
    }
    report.details["deviations"] = per_power;
    for (size_t i = 1; i < deviations.size(); ++i)
        if (!(deviations[i] < deviations[i - 1]))
            report.fail("deviation not decreasing at k = " + std::to_string(powers[i]));
    if (!deviations.empty()) {
        report.max_abs_error = Scalar(deviations.back());
        if (!(deviations.back() <= tolerance))
            report.fail("deviation " + std::to_string(deviations.back()) + " exceeds " + std::to_string(tolerance));
    }
    return report;
}

}  // namespace sigwalk
