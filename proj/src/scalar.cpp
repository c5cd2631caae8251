#include "chsh/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace chsh {

std::string Scalar::str() const {
    if (exact()) {
        const Rational& r = rat();
        std::string s = r.str();
        return s;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", as_double());
    return buf;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// [sign] digits [. digits] [ (e|E) [sign] digits ]
std::optional<Rational> parse_decimal(const std::string& text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    std::string int_part, frac_part, exp_part;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) int_part += text[pos++];
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) frac_part += text[pos++];
    }
    long long exp10 = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool eneg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            eneg = text[pos] == '-';
            ++pos;
        }
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) exp_part += text[pos++];
        if (exp_part.empty() || exp_part.size() > 6) return std::nullopt;
        exp10 = std::strtoll(exp_part.c_str(), nullptr, 10);
        if (eneg) exp10 = -exp10;
    }
    if (pos != text.size()) return std::nullopt;
    if (int_part.empty() && frac_part.empty()) return std::nullopt;

    boost::multiprecision::cpp_int mantissa(int_part.empty() ? "0" : int_part);
    for (char c : frac_part) {
        mantissa *= 10;
        mantissa += (c - '0');
    }
    long long scale = exp10 - static_cast<long long>(frac_part.size());
    boost::multiprecision::cpp_int num = mantissa, den = 1;
    if (scale >= 0) {
        for (long long k = 0; k < scale; ++k) num *= 10;
    } else {
        for (long long k = 0; k < -scale; ++k) den *= 10;
    }
    if (neg) num = -num;
    return Rational(num, den);
}

} // namespace

std::optional<Scalar> parse_exact(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        bool neg = false;
        if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
            neg = num[0] == '-';
            num = num.substr(1);
        }
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        boost::multiprecision::cpp_int n(num), d(den);
        if (d == 0) return std::nullopt;
        if (neg) n = -n;
        return Scalar(Rational(n, d));
    }
    auto dec = parse_decimal(text);
    if (!dec) return std::nullopt;
    return Scalar(*dec);
}

Scalar parse_exact_or_fail(const std::string& text) {
    auto s = parse_exact(text);
    if (!s) fail(ErrorCode::ParseError, "not a decimal or p/q literal: '" + text + "'");
    return *s;
}

} // namespace chsh
