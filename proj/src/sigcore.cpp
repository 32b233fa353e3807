#include "sigwalk/sigcore.hpp"

#include <charconv>
#include <numeric>

namespace sigwalk {

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("signature must have at least one part");
    for (size_t i = 1; i < parts_.size(); ++i)
        if (parts_[i - 1] < parts_[i])
            throw std::invalid_argument("signature parts must be nonincreasing: " + format(Weight(parts_)));
}

long Signature::total() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

long Weight::total() const { return std::accumulate(coords_.begin(), coords_.end(), 0L); }

Weight Weight::operator+(const Weight& rhs) const {
    if (rank() != rhs.rank()) throw std::invalid_argument("weight rank mismatch");
    std::vector<int> out(coords_);
    for (size_t i = 0; i < out.size(); ++i) out[i] += rhs.coords_[i];
    return Weight(std::move(out));
}

Weight Weight::operator-(const Weight& rhs) const {
    if (rank() != rhs.rank()) throw std::invalid_argument("weight rank mismatch");
    std::vector<int> out(coords_);
    for (size_t i = 0; i < out.size(); ++i) out[i] -= rhs.coords_[i];
    return Weight(std::move(out));
}

bool interlaces(const Signature& lower, const Signature& upper) {
    if (lower.rank() != upper.rank()) throw std::invalid_argument("interlaces: rank mismatch");
    const int n = lower.rank();
    for (int i = 0; i < n; ++i) {
        if (lower[i] > upper[i]) return false;
        if (i + 1 < n && lower[i] < upper[i + 1]) return false;
    }
    return true;
}

Rational dimension(const Signature& lambda) {
    const int n = lambda.rank();
    Rational d(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d *= Rational(lambda[i] - i - (lambda[j] - j), j - i);
    d.canonicalize();
    if (d.get_den() != 1 || d <= 0) throw std::logic_error("dimension is not a positive integer");
    return d;
}

Signature shift(const Signature& lambda, int c) {
    std::vector<int> parts(lambda.parts());
    for (int& p : parts) p += c;
    return Signature(std::move(parts));
}

Weight weyl_act(std::span<const int> perm, const Weight& x) {
    const int n = x.rank();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("weyl_act: permutation size mismatch");
    std::vector<int> out(static_cast<size_t>(n));
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        int target = perm[static_cast<size_t>(i)];
        if (target < 0 || target >= n || seen[static_cast<size_t>(target)])
            throw std::invalid_argument("weyl_act: not a permutation");
        seen[static_cast<size_t>(target)] = true;
        out[static_cast<size_t>(target)] = x[i];
    }
    return Weight(std::move(out));
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    if (text.starts_with('(') && text.ends_with(')')) text = text.substr(1, text.size() - 2);
    if (text.empty()) throw ParseError("empty integer list");
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item.starts_with('+')) item.remove_prefix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw ParseError("bad integer '" + std::string(item) + "' in list '" + std::string(text) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

Signature parse_signature(std::string_view text) {
    auto parts = parse_int_list(text);
    for (size_t i = 1; i < parts.size(); ++i)
        if (parts[i - 1] < parts[i]) throw ParseError("signature parts must be nonincreasing: '" + std::string(text) + "'");
    return Signature(std::move(parts));
}

Weight parse_weight(std::string_view text) { return Weight(parse_int_list(text)); }

std::string format(const Signature& s) { return join(s.parts()); }
std::string format(const Weight& x) { return join(x.coords()); }

std::vector<Signature> signature_window(int n, int lo, int hi) {
    std::vector<Signature> out;
    std::vector<int> parts(static_cast<size_t>(n));
    auto rec = [&](auto&& self, int i, int cap) -> void {
        if (i == n) {
            out.emplace_back(parts);
            return;
        }
        for (int v = lo; v <= cap; ++v) {
            parts[static_cast<size_t>(i)] = v;
            self(self, i + 1, v);
        }
    };
    rec(rec, 0, hi);
    return out;
}

}  // namespace sigwalk
