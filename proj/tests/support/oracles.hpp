#pragma once

// Test-side reference computations, kept deliberately independent of the
// library's evaluation paths: raw double loops over raw arrays, and a second
// transcription of the fixed sixteen-row table. Tests compare library output
// against these, never the other way around.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "chsh/rng.hpp"
#include "chsh/scalar.hpp"
#include "chsh/settings.hpp"

namespace oracle {

inline double expectation(const std::vector<double>& weights, const std::vector<double>& values) {
    double s = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
    return s;
}

inline double conditional_expectation(const std::vector<double>& weights, const std::vector<double>& values,
                                      const std::vector<char>& mask) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!mask[i]) continue;
        num += weights[i] * values[i];
        den += weights[i];
    }
    return num / den;
}

struct Row {
    int a1, a2, b1, b2, eta;
};

/// Second transcription of the sixteen fixed rows (first eight weight x,
/// last eight weight y).
inline const std::array<Row, 16>& rows() {
    static const std::array<Row, 16> r = {{
        {1, 1, 1, 1, 11},    {-1, -1, -1, -1, 11}, {1, 1, 1, 1, 12},    {-1, -1, -1, -1, 12},
        {1, 1, 1, 1, 21},    {-1, -1, -1, -1, 21}, {1, 1, 1, -1, 22},   {-1, -1, -1, 1, 22},
        {-1, -1, 1, 1, 11},  {1, 1, -1, -1, 11},   {-1, -1, 1, 1, 12},  {1, 1, -1, -1, 12},
        {-1, -1, 1, 1, 21},  {1, 1, -1, -1, 21},   {-1, -1, 1, -1, 22}, {1, 1, -1, 1, 22},
    }};
    return r;
}

inline int row_a(const Row& r, int i) { return i == 1 ? r.a1 : r.a2; }
inline int row_b(const Row& r, int j) { return j == 1 ? r.b1 : r.b2; }

/// E(A^(i)B^(j) | eta = ij) on the sixteen rows, by direct summation.
inline double two_valued_conditional(double x, double y, int i, int j) {
    double num = 0, den = 0;
    for (std::size_t k = 0; k < 16; ++k) {
        const Row& r = rows()[k];
        if (r.eta != 10 * i + j) continue;
        double w = k < 8 ? x : y;
        num += w * row_a(r, i) * row_b(r, j);
        den += w;
    }
    return num / den;
}

/// <A^(i), B^(j)> on the sixteen rows.
inline double two_valued_unconditional(double x, double y, int i, int j) {
    double s = 0;
    for (std::size_t k = 0; k < 16; ++k) {
        const Row& r = rows()[k];
        s += (k < 8 ? x : y) * row_a(r, i) * row_b(r, j);
    }
    return s;
}

/// <A^(i), B^(j)> in the 16-atom unifying construction: only the block of
/// pair (i,j) contributes, each atom with weight q * p(eps,eps').
inline double unifying_pair_correlation(const std::array<double, 4>& table, double gate_prob) {
    // table order (+,+), (+,-), (-,+), (-,-)
    return gate_prob * (table[0] - table[1] - table[2] + table[3]);
}

// Random-input generators (inputs only; not reference values).

inline chsh::Scalar random_rational_unit(chsh::SplitMix64& rng, std::uint64_t denominator_cap = 1024) {
    std::uint64_t den = 1 + rng.next_below(denominator_cap);
    std::uint64_t num = rng.next_below(den + 1);
    return chsh::Scalar(chsh::Rational(num, den));
}

/// Random valid table in float mode.
inline chsh::CondTable random_table(chsh::SplitMix64& rng) {
    double raw[4];
    double sum = 0;
    for (double& v : raw) {
        v = rng.next_unit() + 1e-9;
        sum += v;
    }
    return chsh::CondTable::make(chsh::Scalar(raw[0] / sum), chsh::Scalar(raw[1] / sum),
                                 chsh::Scalar(raw[2] / sum), chsh::Scalar(raw[3] / sum));
}

/// Random valid table in exact mode: numerators over a common denominator.
inline chsh::CondTable random_rational_table(chsh::SplitMix64& rng) {
    using chsh::Rational;
    std::uint64_t den = 16 + rng.next_below(240);
    std::uint64_t cut1 = rng.next_below(den + 1), cut2 = rng.next_below(den + 1),
                  cut3 = rng.next_below(den + 1);
    std::uint64_t lo = std::min({cut1, cut2, cut3});
    std::uint64_t hi = std::max({cut1, cut2, cut3});
    std::uint64_t mid = cut1 + cut2 + cut3 - lo - hi;
    return chsh::CondTable::make(chsh::Scalar(Rational(lo, den)), chsh::Scalar(Rational(mid - lo, den)),
                                 chsh::Scalar(Rational(hi - mid, den)), chsh::Scalar(Rational(den - hi, den)));
}

inline chsh::CondTableFamily random_family(chsh::SplitMix64& rng, bool rational, bool random_gates) {
    std::array<chsh::CondTable, 4> tables = {
        rational ? random_rational_table(rng) : random_table(rng),
        rational ? random_rational_table(rng) : random_table(rng),
        rational ? random_rational_table(rng) : random_table(rng),
        rational ? random_rational_table(rng) : random_table(rng),
    };
    chsh::CondTableFamily family = chsh::CondTableFamily::of_tables(std::move(tables));
    if (random_gates) {
        if (rational) {
            using chsh::Rational;
            std::uint64_t n[4];
            std::uint64_t den = 0;
            for (auto& v : n) {
                v = 1 + rng.next_below(32);
                den += v;
            }
            family.gate_probs = {chsh::Scalar(Rational(n[0], den)), chsh::Scalar(Rational(n[1], den)),
                                 chsh::Scalar(Rational(n[2], den)), chsh::Scalar(Rational(n[3], den))};
        } else {
            double raw[4];
            double sum = 0;
            for (double& v : raw) {
                v = rng.next_unit() + 0.05;
                sum += v;
            }
            family.gate_probs = {chsh::Scalar(raw[0] / sum), chsh::Scalar(raw[1] / sum),
                                 chsh::Scalar(raw[2] / sum), chsh::Scalar(raw[3] / sum)};
        }
    }
    family.validate();
    return family;
}

/// Family with every marginal exactly 1/2, built from four correlations:
/// table entries (1 +- c)/4.
inline chsh::CondTableFamily family_from_correlations(const std::array<chsh::Scalar, 4>& c) {
    return chsh::CondTableFamily::of_tables({chsh::CondTable::from_correlation(c[0]),
                                             chsh::CondTable::from_correlation(c[1]),
                                             chsh::CondTable::from_correlation(c[2]),
                                             chsh::CondTable::from_correlation(c[3])});
}

} // namespace oracle
