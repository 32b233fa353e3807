#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace sigwalk {

using Rational = mpq_class;

// Error taxonomy shared by every module. The CLI maps these onto exit codes.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer, or a finite decimal ("0.25", "-1.5e-3") into an
/// exact rational. Decimals are converted exactly, not through a double.
Rational parse_rational(std::string_view text);

/// "num/den" in lowest terms, or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

Rational pow(const Rational& base, long exponent);

/// A kernel value: exact rational for the algebraic families, binary double
/// once something transcendental (an exponential normalizer) enters.
/// Mixed arithmetic degrades to double.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(int v) : value_(Rational(v)) {}
    Scalar(long v) : value_(Rational(v)) {}
    Scalar(Rational v) : value_(std::move(v)) {}
    explicit Scalar(double v) : value_(v) {}

    bool exact() const { return std::holds_alternative<Rational>(value_); }
    const Rational& rational() const;
    double to_double() const;
    bool is_zero() const;
    int sign() const;

    /// Rational form as "num/den"; doubles use the shortest round-trip form.
    std::string str() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    /// Exact comparison when both sides are rational, double comparison otherwise.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b);

private:
    std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& x);

}  // namespace sigwalk
