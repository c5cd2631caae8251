#include "chsh/settings.hpp"

#include <cmath>

namespace chsh {

CondTable CondTable::make(Scalar pp, Scalar pm, Scalar mp, Scalar mm) {
    CondTable t{std::move(pp), std::move(pm), std::move(mp), std::move(mm)};
    t.validate();
    return t;
}

CondTable CondTable::from_correlation(const Scalar& c) {
    Scalar quarter = Scalar::ratio(1, 4);
    Scalar same = (Scalar(1) + c) * quarter;
    Scalar diff = (Scalar(1) - c) * quarter;
    return make(same, diff, diff, same);
}

void CondTable::validate() const {
    const Scalar* entries[4] = {&pp, &pm, &mp, &mm};
    for (const Scalar* e : entries)
        if (e->sign() < 0) fail(ErrorCode::InvalidTable, "table entry " + e->str() + " is negative");
    Scalar sum = pp + pm + mp + mm;
    if (exact()) {
        if (sum.rat() != 1) fail(ErrorCode::InvalidTable, "table sums to " + sum.str() + ", expected exactly 1");
    } else if (std::abs(sum.as_double() - 1.0) > kFloatTol) {
        fail(ErrorCode::InvalidTable, "table sums to " + sum.str() + ", expected 1 within 1e-12");
    }
}

const Scalar& CondTable::at(int eps, int eps_prime) const {
    if (eps > 0) return eps_prime > 0 ? pp : pm;
    return eps_prime > 0 ? mp : mm;
}

const char* to_string(AngleConvention c) {
    return c == AngleConvention::HalfAngle ? "half" : "full";
}

AngleConvention angle_convention_from_string(const std::string& s) {
    if (s == "half") return AngleConvention::HalfAngle;
    if (s == "full") return AngleConvention::FullAngle;
    fail(ErrorCode::ParseError, "unknown angle convention '" + s + "' (expected 'half' or 'full')");
}

CondTable qm_table(double theta_i, double theta_j_prime, AngleConvention convention) {
    double delta = theta_i - theta_j_prime;
    if (!std::isfinite(delta)) fail(ErrorCode::InvalidParams, "angles must be finite");
    double arg = convention == AngleConvention::HalfAngle ? delta / 2.0 : delta;
    double c = std::cos(arg), s = std::sin(arg);
    double same = 0.5 * c * c;
    double diff = 0.5 * s * s;
    return CondTable::make(Scalar(same), Scalar(diff), Scalar(diff), Scalar(same));
}

Marginals marginals(const CondTable& table) {
    return Marginals{table.pp + table.pm, table.mp + table.mm, table.pp + table.mp, table.pm + table.mm};
}

Scalar table_correlation(const CondTable& table) {
    return table.pp - table.pm - table.mp + table.mm;
}

int CondTableFamily::index(int i, int j) {
    if (i < 1 || i > 2 || j < 1 || j > 2) fail(ErrorCode::InvalidParams, "settings indices must be 1 or 2");
    return 2 * (i - 1) + (j - 1);
}

CondTableFamily CondTableFamily::of_tables(std::array<CondTable, 4> tables) {
    CondTableFamily f;
    f.tables = std::move(tables);
    f.validate();
    return f;
}

void CondTableFamily::validate() const {
    for (const auto& t : tables) t.validate();
    Scalar sum;
    bool gates_exact = true;
    for (const auto& q : gate_probs) {
        if (q.sign() < 0) fail(ErrorCode::InvalidFamily, "gate probability " + q.str() + " is negative");
        gates_exact = gates_exact && q.exact();
        sum += q;
    }
    if (gates_exact) {
        if (sum.rat() != 1)
            fail(ErrorCode::InvalidFamily, "gate probabilities sum to " + sum.str() + ", expected exactly 1");
    } else if (std::abs(sum.as_double() - 1.0) > kFloatTol) {
        fail(ErrorCode::InvalidFamily, "gate probabilities sum to " + sum.str() + ", expected 1 within 1e-12");
    }
}

bool CondTableFamily::exact() const {
    bool e = exact_tables();
    for (const auto& q : gate_probs) e = e && q.exact();
    return e;
}

bool CondTableFamily::exact_tables() const {
    bool e = true;
    for (const auto& t : tables) e = e && t.exact();
    return e;
}

bool CondTableFamily::uniform_gates(double tol) const {
    for (const auto& q : gate_probs) {
        if (q.exact()) {
            if (q.rat() != Rational(1, 4)) return false;
        } else if (std::abs(q.as_double() - 0.25) > tol) {
            return false;
        }
    }
    return true;
}

CondTableFamily qm_family(const AngleConfig& angles) {
    std::array<CondTable, 4> tables = {
        qm_table(angles.angle_a(1), angles.angle_b(1), angles.convention),
        qm_table(angles.angle_a(1), angles.angle_b(2), angles.convention),
        qm_table(angles.angle_a(2), angles.angle_b(1), angles.convention),
        qm_table(angles.angle_a(2), angles.angle_b(2), angles.convention),
    };
    return CondTableFamily::of_tables(std::move(tables));
}

MarginalConsistencyReport check_marginal_consistency(const CondTableFamily& family) {
    MarginalConsistencyReport report;
    report.max_discrepancy = 0;
    auto consider = [&report](double d, const std::string& what) {
        if (d > report.max_discrepancy) {
            report.max_discrepancy = d;
            report.worst = what;
        }
    };

    // Alice's marginal at setting i must not depend on j; Bob's symmetric.
    for (int i = 1; i <= 2; ++i) {
        Marginals m1 = marginals(family.table(i, 1));
        Marginals m2 = marginals(family.table(i, 2));
        consider(std::abs((m1.a_plus - m2.a_plus).as_double()),
                 "p_a" + std::to_string(i) + "(+) across j=1,2");
        consider(std::abs((m1.a_minus - m2.a_minus).as_double()),
                 "p_a" + std::to_string(i) + "(-) across j=1,2");
    }
    for (int j = 1; j <= 2; ++j) {
        Marginals m1 = marginals(family.table(1, j));
        Marginals m2 = marginals(family.table(2, j));
        consider(std::abs((m1.b_plus - m2.b_plus).as_double()),
                 "p_b" + std::to_string(j) + "(+) across i=1,2");
        consider(std::abs((m1.b_minus - m2.b_minus).as_double()),
                 "p_b" + std::to_string(j) + "(-) across i=1,2");
    }
    report.consistent = report.max_discrepancy <= kFloatTol;
    if (report.consistent) report.worst.clear();
    return report;
}

} // namespace chsh
