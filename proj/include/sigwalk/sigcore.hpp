#pragma once

#include "sigwalk/scalar.hpp"

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sigwalk {

/// Highest weight of an irreducible U(n) representation: a nonincreasing
/// n-tuple of integers. Parts may be negative.
class Signature {
public:
    explicit Signature(std::vector<int> parts);

    static Signature zero(int n) { return Signature(std::vector<int>(static_cast<size_t>(n), 0)); }

    int rank() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[static_cast<size_t>(i)]; }
    const std::vector<int>& parts() const { return parts_; }
    long total() const;

    /// True when every part is nonnegative, i.e. a partition padded with zeros.
    bool is_partition() const { return parts_.back() >= 0; }

    auto begin() const { return parts_.begin(); }
    auto end() const { return parts_.end(); }

    friend auto operator<=>(const Signature&, const Signature&) = default;
    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<int> parts_;
};

/// Point of the weight lattice Z^n. No ordering constraint.
class Weight {
public:
    explicit Weight(std::vector<int> coords) : coords_(std::move(coords)) {}
    Weight(const Signature& s) : coords_(s.parts()) {}

    static Weight zero(int n) { return Weight(std::vector<int>(static_cast<size_t>(n), 0)); }

    int rank() const { return static_cast<int>(coords_.size()); }
    int operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
    const std::vector<int>& coords() const { return coords_; }
    long total() const;

    Weight operator+(const Weight& rhs) const;
    Weight operator-(const Weight& rhs) const;

    friend auto operator<=>(const Weight&, const Weight&) = default;
    friend bool operator==(const Weight&, const Weight&) = default;

private:
    std::vector<int> coords_;
};

/// lower ≺ upper: upper_1 ≥ lower_1 ≥ upper_2 ≥ ... ≥ upper_n ≥ lower_n.
bool interlaces(const Signature& lower, const Signature& upper);

/// Weyl dimension formula, evaluated exactly. Always a positive integer.
Rational dimension(const Signature& lambda);

Signature shift(const Signature& lambda, int c);

/// Coordinate permutation: the entry in slot i moves to slot perm[i] (0-based).
Weight weyl_act(std::span<const int> perm, const Weight& x);

Signature parse_signature(std::string_view text);
Weight parse_weight(std::string_view text);
std::string format(const Signature& s);
std::string format(const Weight& x);

/// Every signature of rank n with all parts in [lo, hi], in lexicographic order.
std::vector<Signature> signature_window(int n, int lo, int hi);

}  // namespace sigwalk
