#pragma once

#include <array>
#include <string>

#include "chsh/scalar.hpp"

namespace chsh {

/// Outcome probabilities for one fixed settings pair: p(+,+), p(+,-),
/// p(-,+), p(-,-). Nonnegative, summing to one.
struct CondTable {
    Scalar pp, pm, mp, mm;

    static CondTable make(Scalar pp, Scalar pm, Scalar mp, Scalar mm);
    static CondTable uniform() { return make(Scalar::ratio(1, 4), Scalar::ratio(1, 4), Scalar::ratio(1, 4), Scalar::ratio(1, 4)); }

    /// Table with marginals 1/2 and correlation c: entries (1±c)/4.
    static CondTable from_correlation(const Scalar& c);

    void validate() const;
    bool exact() const { return pp.exact() && pm.exact() && mp.exact() && mm.exact(); }

    /// p(epsilon, epsilon_prime) with signs +1/-1.
    const Scalar& at(int eps, int eps_prime) const;
};

struct Marginals {
    Scalar a_plus, a_minus, b_plus, b_minus;
};

enum class AngleConvention {
    HalfAngle, // p(e,e) = cos^2((ti-tj)/2)/2  -> correlation cos(ti-tj)
    FullAngle, // p(e,e) = cos^2(ti-tj)/2      -> correlation cos(2(ti-tj))
};

const char* to_string(AngleConvention c);
AngleConvention angle_convention_from_string(const std::string& s);

/// The four analyzer orientations, radians. FullAngle is the default
/// convention: it is the one under which the standard test angles
/// (pi/4, 0, pi/8, 3pi/8) give pair correlations (1/sqrt2, 1/sqrt2,
/// 1/sqrt2, -1/sqrt2). HalfAngle (the spin-style reading) gives
/// cos(pi/8) = 0.9239... at those same angles; both are implemented and the
/// choice is always explicit.
struct AngleConfig {
    double theta1 = 0, theta2 = 0, theta1p = 0, theta2p = 0;
    AngleConvention convention = AngleConvention::FullAngle;

    double angle_a(int i) const { return i == 1 ? theta1 : theta2; }
    double angle_b(int j) const { return j == 1 ? theta1p : theta2p; }
};

/// Outcome table for one settings pair from the analyzer angles.
CondTable qm_table(double theta_i, double theta_j_prime, AngleConvention convention);

Marginals marginals(const CondTable& table);

/// Sum of eps*eps' * p(eps,eps'): the per-setting correlation the table induces.
Scalar table_correlation(const CondTable& table);

/// The four tables indexed by the settings pair (i,j), i,j in {1,2}, plus the
/// probabilities of selecting each pair (default 1/4 each).
struct CondTableFamily {
    std::array<CondTable, 4> tables;     // index 2*(i-1)+(j-1)
    std::array<Scalar, 4> gate_probs = {Scalar::ratio(1, 4), Scalar::ratio(1, 4), Scalar::ratio(1, 4),
                                        Scalar::ratio(1, 4)};

    static CondTableFamily of_tables(std::array<CondTable, 4> tables);
    static int index(int i, int j);

    const CondTable& table(int i, int j) const { return tables[index(i, j)]; }
    CondTable& table(int i, int j) { return tables[index(i, j)]; }
    const Scalar& gate(int i, int j) const { return gate_probs[index(i, j)]; }

    void validate() const;
    bool exact() const;
    bool exact_tables() const;
    bool uniform_gates(double tol = kFloatTol) const;
};

/// QM family at the given angles; all four tables share the convention.
CondTableFamily qm_family(const AngleConfig& angles);

struct MarginalConsistencyReport {
    bool consistent = false;
    double max_discrepancy = 0;
    std::string worst; // which marginal disagrees the most, empty when consistent
};

/// Whether each side's single-outcome marginal is the same no matter which
/// setting the other side used. A precondition for any joint realization.
MarginalConsistencyReport check_marginal_consistency(const CondTableFamily& family);

} // namespace chsh
