#include "sigwalk/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace sigwalk {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

mpz_class parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
    mpz_class z(std::string(s), 10);
    return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash));
        mpz_class den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    // decimal with optional exponent
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view exp_text = text.substr(e + 1);
        auto [ptr, ec] = std::from_chars(exp_text.data() + (exp_text.starts_with('+') ? 1 : 0),
                                         exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc() || ptr != exp_text.data() + exp_text.size())
            throw ParseError("bad exponent in '" + std::string(text) + "'");
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
        negative = mantissa[0] == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        std::string_view whole = mantissa.substr(0, dot);
        std::string_view frac = mantissa.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
            (whole.empty() && frac.empty()))
            throw ParseError("not a number: '" + std::string(text) + "'");
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(mantissa)) throw ParseError("not a number: '" + std::string(text) + "'");
        digits = std::string(mantissa);
    }
    if (digits.empty()) digits = "0";
    Rational r{mpz_class(digits, 10)};
    if (negative) r = -r;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0)
        r *= scale;
    else
        r /= scale;
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw DomainError("zero to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

const Rational& Scalar::rational() const {
    if (auto* r = std::get_if<Rational>(&value_)) return *r;
    throw DomainError("scalar is not exact");
}

double Scalar::to_double() const {
    if (auto* r = std::get_if<Rational>(&value_)) return r->get_d();
    return std::get<double>(value_);
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
    if (auto* r = std::get_if<Rational>(&value_)) return sgn(*r);
    double d = std::get<double>(value_);
    return (d > 0) - (d < 0);
}

std::string Scalar::str() const {
    if (auto* r = std::get_if<Rational>(&value_)) return to_string(*r);
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
    return std::string(buf, ptr);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    if (exact() && rhs.exact())
        std::get<Rational>(value_) += rhs.rational();
    else
        value_ = to_double() + rhs.to_double();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    if (exact() && rhs.exact())
        std::get<Rational>(value_) -= rhs.rational();
    else
        value_ = to_double() - rhs.to_double();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    if (exact() && rhs.exact())
        std::get<Rational>(value_) *= rhs.rational();
    else
        value_ = to_double() * rhs.to_double();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    if (rhs.is_zero()) throw DomainError("division by zero");
    if (exact() && rhs.exact())
        std::get<Rational>(value_) /= rhs.rational();
    else
        value_ = to_double() / rhs.to_double();
    return *this;
}

Scalar Scalar::operator-() const {
    if (exact()) return Scalar(Rational(-rational()));
    return Scalar(-to_double());
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact() && b.exact()) return a.rational() == b.rational();
    return a.to_double() == b.to_double();
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.exact() && b.exact()) return a.rational() < b.rational();
    return a.to_double() < b.to_double();
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

}  // namespace sigwalk
