#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "chsh/error.hpp"

namespace chsh {

using Rational = boost::multiprecision::cpp_rational;

/// Tolerance for identities that hold exactly in rational mode but pick up
/// roundoff once trigonometric inputs are involved.
inline constexpr double kFloatTol = 1e-12;

/// Dual-mode number: an exact rational or a 64-bit double.
///
/// Probabilities and random-variable values enter either as exact rationals
/// (integers, decimal literals, p/q strings) or as doubles (anything that went
/// through trigonometry). Arithmetic stays exact as long as every operand is
/// exact; the first double operand demotes the result to float mode for good.
/// This is what lets the same expectation code verify algebraic identities
/// exactly on rational inputs and within 1e-12 on trigonometric ones.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long long n) : v_(Rational(n)) {}
    Scalar(const Rational& r) : v_(r) {}
    Scalar(Rational&& r) : v_(std::move(r)) {}
    Scalar(double d) : v_(d) {}

    static Scalar ratio(long long num, long long den) { return Scalar(Rational(num, den)); }

    bool exact() const noexcept { return std::holds_alternative<Rational>(v_); }

    double as_double() const {
        if (exact()) return static_cast<double>(std::get<Rational>(v_));
        return std::get<double>(v_);
    }

    /// Exact value; valid only in rational mode.
    const Rational& rat() const {
        if (!exact()) fail(ErrorCode::Internal, "rat() called on float-mode scalar");
        return std::get<Rational>(v_);
    }

    bool is_zero() const { return exact() ? rat().is_zero() : std::get<double>(v_) == 0.0; }

    int sign() const {
        if (exact()) return rat().sign();
        double d = std::get<double>(v_);
        return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    Scalar operator-() const {
        if (exact()) return Scalar(Rational(-rat()));
        return Scalar(-std::get<double>(v_));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(Rational(a.rat() + b.rat()));
        return Scalar(a.as_double() + b.as_double());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(Rational(a.rat() - b.rat()));
        return Scalar(a.as_double() - b.as_double());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(Rational(a.rat() * b.rat()));
        return Scalar(a.as_double() * b.as_double());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) fail(ErrorCode::Internal, "scalar division by zero");
        if (a.exact() && b.exact()) return Scalar(Rational(a.rat() / b.rat()));
        return Scalar(a.as_double() / b.as_double());
    }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    // Mixed-mode comparison falls back to double; exact mode compares exactly.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return a.rat() == b.rat();
        return a.as_double() == b.as_double();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return a.rat() < b.rat();
        return a.as_double() < b.as_double();
    }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    /// "p/q" in rational mode, shortest round-trip decimal otherwise.
    std::string str() const;

private:
    std::variant<Rational, double> v_;
};

/// Parses a decimal literal ("0.125", "-3", "2e-4") or a fraction ("1/8")
/// into an exact rational scalar. Returns nullopt on malformed input.
/// Decimal text is always an exact rational, so inputs that arrive as strings
/// never lose exact mode.
std::optional<Scalar> parse_exact(const std::string& text);

/// parse_exact with an Error(ParseError) on failure.
Scalar parse_exact_or_fail(const std::string& text);

} // namespace chsh
