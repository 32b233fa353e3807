#include "sigwalk/symfunc.hpp"

#include "sigwalk/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sigwalk {

EvaluationPoint::EvaluationPoint(std::vector<Rational> theta) : theta_(std::move(theta)) {
    if (theta_.empty()) throw std::invalid_argument("evaluation point must have at least one coordinate");
    for (auto& t : theta_) {
        if (t == 0) throw std::invalid_argument("evaluation point coordinates must be nonzero");
        t.canonicalize();
    }
}

bool EvaluationPoint::all_ones() const {
    return std::all_of(theta_.begin(), theta_.end(), [](const Rational& t) { return t == 1; });
}

bool EvaluationPoint::all_positive() const {
    return std::all_of(theta_.begin(), theta_.end(), [](const Rational& t) { return t > 0; });
}

Rational EvaluationPoint::product() const {
    Rational p(1);
    for (const auto& t : theta_) p *= t;
    return p;
}

EvaluationPoint EvaluationPoint::inverse() const {
    std::vector<Rational> inv;
    inv.reserve(theta_.size());
    for (const auto& t : theta_) inv.emplace_back(Rational(1) / t);
    return EvaluationPoint(std::move(inv));
}

EvaluationPoint parse_theta(std::string_view text) {
    std::vector<Rational> values;
    size_t pos = 0;
    while (true) {
        size_t comma = text.find(',', pos);
        values.push_back(parse_rational(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    for (const auto& v : values)
        if (v == 0) throw ParseError("theta entries must be nonzero");
    return EvaluationPoint(std::move(values));
}

Rational h_eval(int k, const EvaluationPoint& theta) {
    if (k < 0) return Rational(0);
    // h_j over the first i variables, updated one variable at a time
    std::vector<Rational> h(static_cast<size_t>(k) + 1, Rational(0));
    h[0] = 1;
    for (const auto& t : theta.values())
        for (int j = 1; j <= k; ++j) h[static_cast<size_t>(j)] += t * h[static_cast<size_t>(j - 1)];
    return h[static_cast<size_t>(k)];
}

Rational e_eval(int k, const EvaluationPoint& theta) {
    const int n = theta.rank();
    if (k < 0 || k > n) return Rational(0);
    std::vector<Rational> e(static_cast<size_t>(k) + 1, Rational(0));
    e[0] = 1;
    for (const auto& t : theta.values())
        for (int j = k; j >= 1; --j) e[static_cast<size_t>(j)] += t * e[static_cast<size_t>(j - 1)];
    return e[static_cast<size_t>(k)];
}

namespace {

Rational jacobi_trudi(const Signature& partition, const std::function<Rational(int)>& complete) {
    const int n = partition.rank();
    SquareMatrix<Rational> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = complete(partition[i] - i + j);
    return determinant(std::move(m));
}

}  // namespace

Rational schur_eval(const Signature& lambda, const EvaluationPoint& theta) {
    if (lambda.rank() != theta.rank()) throw std::invalid_argument("schur_eval: rank mismatch");
    const int c = -lambda[lambda.rank() - 1];
    Rational value = jacobi_trudi(shift(lambda, c), [&](int k) { return h_eval(k, theta); });
    return value * pow(theta.product(), -c);
}

Rational schur_bialternant(const Signature& lambda, const EvaluationPoint& theta) {
    const int n = lambda.rank();
    if (n != theta.rank()) throw std::invalid_argument("schur_bialternant: rank mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (theta[i] == theta[j]) throw DomainError("schur_bialternant: repeated evaluation point");
    SquareMatrix<Rational> num(n), den(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            num(i, j) = pow(theta[i], lambda[j] + n - 1 - j);
            den(i, j) = pow(theta[i], n - 1 - j);
        }
    return determinant(std::move(num)) / determinant(std::move(den));
}

SchurEvaluator::SchurEvaluator(EvaluationPoint theta) : theta_(std::move(theta)), det_theta_(theta_.product()) {
    h_.push_back(Rational(1));
}

Rational SchurEvaluator::complete(int k) const {
    if (k < 0) return Rational(0);
    while (static_cast<int>(h_.size()) <= k) h_.push_back(h_eval(static_cast<int>(h_.size()), theta_));
    return h_[static_cast<size_t>(k)];
}

Rational SchurEvaluator::operator()(const Signature& lambda) const {
    if (lambda.rank() != theta_.rank()) throw std::invalid_argument("SchurEvaluator: rank mismatch");
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(lambda); it != cache_.end()) return it->second;
    const int c = -lambda[lambda.rank() - 1];
    Rational value = jacobi_trudi(shift(lambda, c), [&](int k) { return complete(k); }) * pow(det_theta_, -c);
    cache_.emplace(lambda, value);
    return value;
}

// ---------------------------------------------------------------------------
// Kostka numbers by branching: strip the largest letter as a horizontal strip.

namespace {

class KostkaCounter {
public:
    explicit KostkaCounter(std::vector<int> content) : content_(std::move(content)) {}

    long count(const std::vector<int>& shape) {
        const size_t m = shape.size();
        if (m == 1) return shape[0] == content_[0] ? 1 : 0;
        if (auto it = memo_.find(shape); it != memo_.end()) return it->second;

        long total = 0;
        const int strip = content_[m - 1];
        long shape_size = 0;
        for (int p : shape) shape_size += p;
        // ν ≺ shape with one fewer part and |shape| - |ν| = strip
        std::vector<int> nu(m - 1);
        auto rec = [&](auto&& self, size_t i, long removed) -> void {
            if (i == m - 1) {
                if (removed + shape[m - 1] == strip) total += count(nu);
                return;
            }
            for (int v = shape[i + 1]; v <= shape[i]; ++v) {
                long r = removed + (shape[i] - v);
                if (r > strip) continue;
                nu[i] = v;
                self(self, i + 1, r);
            }
        };
        if (shape_size >= strip) rec(rec, 0, 0);
        memo_.emplace(shape, total);
        return total;
    }

private:
    std::vector<int> content_;
    std::map<std::vector<int>, long> memo_;
};

}  // namespace

long weight_multiplicity(const Signature& lambda, const Weight& x) {
    if (lambda.rank() != x.rank()) throw std::invalid_argument("weight_multiplicity: rank mismatch");
    if (lambda.total() != x.total()) return 0;
    const int c = -lambda[lambda.rank() - 1];
    Signature shape = shift(lambda, c);
    std::vector<int> content(x.coords());
    for (int& v : content) {
        v += c;
        if (v < 0) return 0;
    }
    std::sort(content.begin(), content.end(), std::greater<>());
    return KostkaCounter(std::move(content)).count(shape.parts());
}

WeightExpansion weight_expansion(const Signature& lambda, const EnumerationLimits& limits) {
    const int n = lambda.rank();
    const int lo = lambda[n - 1];
    const int hi = lambda[0];
    if (n > limits.max_rank)
        throw ResourceError("weight_expansion: rank " + std::to_string(n) + " exceeds limit " + std::to_string(limits.max_rank));
    const long boxes = lambda.total() - static_cast<long>(n) * lo;
    if (boxes > limits.max_boxes)
        throw ResourceError("weight_expansion: " + std::to_string(boxes) + " boxes exceed limit " +
                            std::to_string(limits.max_boxes));

    WeightExpansion out;
    std::map<std::vector<int>, long> dominant;
    std::vector<int> x(static_cast<size_t>(n));
    const long target = lambda.total();
    auto rec = [&](auto&& self, int i, long sum) -> void {
        if (i == n) {
            if (sum != target) return;
            std::vector<int> key(x);
            std::sort(key.begin(), key.end(), std::greater<>());
            auto it = dominant.find(key);
            if (it == dominant.end()) it = dominant.emplace(key, weight_multiplicity(lambda, Weight(key))).first;
            if (it->second != 0) out.emplace(Weight(x), it->second);
            return;
        }
        const long remaining = n - i - 1;
        for (int v = lo; v <= hi; ++v) {
            long s = sum + v;
            if (s + remaining * lo > target || s + remaining * hi < target) continue;
            x[static_cast<size_t>(i)] = v;
            self(self, i + 1, s);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Littlewood–Richardson tableaux, filled row by row.

namespace {

class LRTableauCounter {
public:
    LRTableauCounter(std::vector<int> inner, std::vector<int> outer, std::vector<int> content)
        : inner_(std::move(inner)), outer_(std::move(outer)), content_(std::move(content)),
          n_(static_cast<int>(outer_.size())), totals_(content_.size(), 0) {}

    long count() {
        total_ = 0;
        std::vector<int> above;
        fill_row(0, above);
        return total_;
    }

private:
    // above[c - inner_[r-1]] is the letter of row r-1 at column c.
    void fill_row(int r, const std::vector<int>& above) {
        if (r == n_) {
            if (totals_ == content_) ++total_;
            return;
        }
        std::vector<int> row;
        row.reserve(static_cast<size_t>(outer_[r] - inner_[r]));
        std::vector<int> counts(content_.size(), 0);
        fill_letter(r, 0, row, counts, above);
    }

    int letter_above(int r, int col, const std::vector<int>& above) const {
        if (r == 0 || col < inner_[r - 1] || col >= outer_[r - 1]) return -1;
        return above[static_cast<size_t>(col - inner_[r - 1])];
    }

    void fill_letter(int r, int v, std::vector<int>& row, std::vector<int>& counts, const std::vector<int>& above) {
        const int length = outer_[r] - inner_[r];
        const int placed = static_cast<int>(row.size());
        const int letters = static_cast<int>(content_.size());
        if (placed == length) {
            for (int u = 0; u < letters; ++u) totals_[u] += counts[u];
            fill_row(r + 1, row);
            for (int u = 0; u < letters; ++u) totals_[u] -= counts[u];
            return;
        }
        // letter v (0-based) only occurs in rows r >= v
        if (v >= letters || v > r) return;

        int max_count = std::min(length - placed, content_[v] - totals_[v]);
        if (v > 0) max_count = std::min(max_count, totals_[v - 1] - totals_[v]);
        // the last usable letter must absorb the rest of the row
        const bool last = (v == letters - 1) || (v == r);
        const int min_count = last ? length - placed : 0;
        for (int cnt = 0; cnt <= max_count; ++cnt) {
            if (cnt > 0) {
                const int col = inner_[r] + placed + cnt - 1;
                if (letter_above(r, col, above) >= v) break;  // column strictness fails from here on
                row.push_back(v);
            }
            if (cnt >= min_count) {
                counts[v] = cnt;
                fill_letter(r, v + 1, row, counts, above);
                counts[v] = 0;
            }
        }
        row.resize(static_cast<size_t>(placed));
    }

    std::vector<int> inner_, outer_, content_;
    int n_;
    std::vector<int> totals_;
    long total_ = 0;
};

}  // namespace

long lr_coeff(const Signature& lambda, const Signature& mu, const Signature& tau) {
    const int n = lambda.rank();
    if (mu.rank() != n || tau.rank() != n) throw std::invalid_argument("lr_coeff: rank mismatch");
    if (tau.total() != lambda.total() + mu.total()) return 0;
    const int a = -lambda[n - 1];
    const int b = -mu[n - 1];
    if (tau[n - 1] + a + b < 0) return 0;
    Signature inner = shift(lambda, a);
    Signature content = shift(mu, b);
    Signature outer = shift(tau, a + b);
    for (int i = 0; i < n; ++i)
        if (inner[i] > outer[i]) return 0;
    return LRTableauCounter(inner.parts(), outer.parts(), content.parts()).count();
}

std::map<Signature, long> lr_product(const Signature& lambda, const Signature& mu) {
    const int n = lambda.rank();
    if (mu.rank() != n) throw std::invalid_argument("lr_product: rank mismatch");
    std::map<Signature, long> out;
    const long target = lambda.total() + mu.total();
    std::vector<int> tau(static_cast<size_t>(n));
    // τ_i - λ_i lies in [μ_n, μ_1]
    auto rec = [&](auto&& self, int i, long sum) -> void {
        if (i == n) {
            if (sum != target) return;
            Signature t(tau);
            if (long c = lr_coeff(lambda, mu, t); c != 0) out.emplace(std::move(t), c);
            return;
        }
        int hi = lambda[i] + mu[0];
        if (i > 0) hi = std::min(hi, tau[static_cast<size_t>(i - 1)]);
        for (int v = lambda[i] + mu[n - 1]; v <= hi; ++v) {
            tau[static_cast<size_t>(i)] = v;
            self(self, i + 1, sum + v);
        }
    };
    rec(rec, 0, 0);
    return out;
}

std::map<Signature, long> lr_product_oracle(const Signature& lambda, const Signature& mu, const EnumerationLimits& limits) {
    const int n = lambda.rank();
    if (mu.rank() != n) throw std::invalid_argument("lr_product_oracle: rank mismatch");
    const int a = -lambda[n - 1];
    const int b = -mu[n - 1];
    Signature left = shift(lambda, a);
    Signature right = shift(mu, b);
    const long boxes = left.total() + right.total();
    if (n > limits.max_rank || boxes > limits.max_boxes)
        throw ResourceError("lr_coeff_oracle: input exceeds rank " + std::to_string(limits.max_rank) + " / " +
                            std::to_string(limits.max_boxes) + " boxes");

    EnumerationLimits inner{n, static_cast<int>(boxes)};
    const WeightExpansion wl = weight_expansion(left, inner);
    const WeightExpansion wr = weight_expansion(right, inner);

    // monomial coefficients of s_left * s_right at dominant weights only
    std::map<std::vector<int>, long, std::greater<>> monomial;
    for (const auto& [x, mx] : wl)
        for (const auto& [y, my] : wr) {
            Weight z = x + y;
            if (std::is_sorted(z.coords().begin(), z.coords().end(), std::greater<>())) monomial[z.coords()] += mx * my;
        }

    // peel off Schur terms from the top in lexicographic order (refines dominance)
    std::map<Signature, long> out;
    std::vector<std::pair<Signature, long>> found;
    for (const auto& [w, m] : monomial) {
        Signature shape(w);
        long coeff = m;
        for (const auto& [t, c] : found) coeff -= c * weight_multiplicity(t, Weight(w));
        if (coeff != 0) {
            found.emplace_back(shape, coeff);
            out.emplace(shift(shape, -(a + b)), coeff);
        }
    }
    return out;
}

long lr_coeff_oracle(const Signature& lambda, const Signature& mu, const Signature& tau, const EnumerationLimits& limits) {
    if (tau.rank() != lambda.rank()) throw std::invalid_argument("lr_coeff_oracle: rank mismatch");
    auto expansion = lr_product_oracle(lambda, mu, limits);
    auto it = expansion.find(tau);
    return it == expansion.end() ? 0 : it->second;
}

std::vector<Signature> pieri_row(const Signature& lambda, int k) {
    const int n = lambda.rank();
    std::vector<Signature> out;
    if (k < 0) return out;
    std::vector<int> tau(static_cast<size_t>(n));
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n) {
            if (left == 0) out.emplace_back(tau);
            return;
        }
        const int hi = i == 0 ? lambda[0] + left : std::min(lambda[i - 1], lambda[i] + left);
        for (int v = lambda[i]; v <= hi; ++v) {
            tau[static_cast<size_t>(i)] = v;
            self(self, i + 1, left - (v - lambda[i]));
        }
    };
    rec(rec, 0, k);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Signature> pieri_column(const Signature& lambda, int k) {
    const int n = lambda.rank();
    std::vector<Signature> out;
    if (k < 0 || k > n) return out;
    std::vector<int> tau(static_cast<size_t>(n));
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n) {
            if (left == 0) out.emplace_back(tau);
            return;
        }
        for (int d = 0; d <= std::min(1, left); ++d) {
            int v = lambda[i] + d;
            if (i > 0 && v > tau[static_cast<size_t>(i - 1)]) continue;
            tau[static_cast<size_t>(i)] = v;
            self(self, i + 1, left - d);
        }
    };
    rec(rec, 0, k);
    std::sort(out.begin(), out.end());
    return out;
}

long triple_coeff(const Signature& lambda, const Signature& sigma, const Signature& nu, const Signature& tau) {
    const int n = lambda.rank();
    if (sigma.rank() != n || nu.rank() != n || tau.rank() != n) throw std::invalid_argument("triple_coeff: rank mismatch");
    if (tau.total() != lambda.total() + sigma.total() + nu.total()) return 0;
    long total = 0;
    for (const auto& [mu, c] : lr_product(lambda, sigma)) total += c * lr_coeff(mu, nu, tau);
    return total;
}

Rational standard_tableaux(const Signature& shape) {
    if (!shape.is_partition()) throw std::invalid_argument("standard_tableaux: shape must be a partition");
    const int rows = shape.rank();
    Rational result(1);
    long cells = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < shape[i]; ++j) {
            ++cells;
            int arm = shape[i] - j - 1;
            int leg = 0;
            for (int r = i + 1; r < rows && shape[r] > j; ++r) ++leg;
            result *= cells;
            result /= arm + leg + 1;
        }
    return result;
}

}  // namespace sigwalk
