#include "chsh/realizability.hpp"

#include <cmath>
#include <functional>

#include "chsh/detail/simplex.hpp"

namespace chsh {

int JointDistribution::index(int a1, int a2, int b1, int b2) {
    auto bit = [](int v) { return v > 0 ? 0 : 1; };
    return bit(a1) << 3 | bit(a2) << 2 | bit(b1) << 1 | bit(b2);
}

std::array<int, 4> JointDistribution::assignment(int index) {
    auto sign = [index](int bit) { return (index >> bit) & 1 ? -1 : +1; };
    return {sign(3), sign(2), sign(1), sign(0)};
}

CondTable JointDistribution::pair_marginal(int i, int j) const {
    Scalar table[2][2]; // [eps][eps'] with 0 = +1, 1 = -1
    for (int v = 0; v < 16; ++v) {
        auto asg = assignment(v);
        int eps = asg[i - 1], eps_prime = asg[2 + (j - 1)];
        table[eps > 0 ? 0 : 1][eps_prime > 0 ? 0 : 1] += weights[v];
    }
    return CondTable{table[0][0], table[0][1], table[1][0], table[1][1]};
}

namespace {

// Constraint rows: one per (settings pair, outcome pair), in pair order
// 11,12,21,22 and outcome order (+,+),(+,-),(-,+),(-,-).
constexpr int kSigns[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};

struct ConstraintSystem {
    // a[row][var] in {0,1}; b[row] = table entry.
    std::array<std::array<int, 16>, 16> a{};
    std::array<Scalar, 16> b;
};

ConstraintSystem build_constraints(const CondTableFamily& family) {
    ConstraintSystem sys;
    int row = 0;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            for (const auto& sign : kSigns) {
                for (int v = 0; v < 16; ++v) {
                    auto asg = JointDistribution::assignment(v);
                    bool hit = asg[i - 1] == sign[0] && asg[2 + (j - 1)] == sign[1];
                    sys.a[row][v] = hit ? 1 : 0;
                }
                sys.b[row] = family.table(i, j).at(sign[0], sign[1]);
                ++row;
            }
        }
    }
    return sys;
}

template <class T>
detail::Phase1Result<T> solve(const ConstraintSystem& sys, const T& tol,
                              const std::function<T(const Scalar&)>& convert) {
    std::vector<std::vector<T>> a(16, std::vector<T>(16, T(0)));
    std::vector<T> b(16, T(0));
    for (int r = 0; r < 16; ++r) {
        for (int v = 0; v < 16; ++v) a[r][v] = T(sys.a[r][v]);
        b[r] = convert(sys.b[r]);
    }
    return detail::phase1_feasible<T>(std::move(a), std::move(b), tol);
}

bool uniform_marginals(const CondTableFamily& family) {
    for (const auto& t : family.tables) {
        Marginals m = marginals(t);
        for (const Scalar* p : {&m.a_plus, &m.a_minus, &m.b_plus, &m.b_minus}) {
            if (p->exact()) {
                if (p->rat() != Rational(1, 2)) return false;
            } else if (std::abs(p->as_double() - 0.5) > kFloatTol) {
                return false;
            }
        }
    }
    return true;
}

InfeasibilityCertificate certificate_for(const CondTableFamily& family, std::vector<double> dual) {
    if (uniform_marginals(family)) {
        FineCheckReport fine = fine_inequality_check(family);
        if (!fine.satisfied) {
            InfeasibilityCertificate cert;
            cert.kind = InfeasibilityCertificate::Kind::ChshViolation;
            cert.sign_pattern = fine.worst_pattern;
            cert.violation = fine.worst_value;
            cert.message = "signed combination of table correlations reaches " +
                           std::to_string(fine.worst_value) + " > 2";
            return cert;
        }
    }
    InfeasibilityCertificate cert;
    cert.kind = InfeasibilityCertificate::Kind::LpDual;
    cert.dual = std::move(dual);
    cert.message = "separating functional over the 16 marginal constraints (y.b > 0, y.A <= 0)";
    return cert;
}

} // namespace

Feasibility joint_feasible(const CondTableFamily& family) {
    family.validate();

    MarginalConsistencyReport consistency = check_marginal_consistency(family);
    if (!consistency.consistent) {
        Feasibility out;
        out.feasible = false;
        InfeasibilityCertificate cert;
        cert.kind = InfeasibilityCertificate::Kind::MarginalInconsistency;
        cert.violation = consistency.max_discrepancy;
        cert.message = "single-outcome marginals disagree across settings (" + consistency.worst +
                       ", discrepancy " + std::to_string(consistency.max_discrepancy) + ")";
        out.certificate = cert;
        return out;
    }

    ConstraintSystem sys = build_constraints(family);
    Feasibility out;

    if (family.exact_tables()) {
        auto res = solve<Rational>(sys, Rational(0), [](const Scalar& s) { return s.rat(); });
        out.feasible = res.feasible;
        if (res.feasible) {
            JointDistribution joint;
            for (int v = 0; v < 16; ++v) joint.weights[v] = Scalar(res.x[v]);
            out.witness = joint;
        } else {
            std::vector<double> dual(16);
            for (int r = 0; r < 16; ++r) dual[r] = static_cast<double>(res.farkas[r]);
            out.certificate = certificate_for(family, std::move(dual));
        }
    } else {
        auto res = solve<double>(sys, kLpTol, [](const Scalar& s) { return s.as_double(); });
        out.feasible = res.feasible;
        if (res.feasible) {
            JointDistribution joint;
            for (int v = 0; v < 16; ++v) joint.weights[v] = Scalar(res.x[v]);
            out.witness = joint;
        } else {
            out.certificate = certificate_for(family, std::move(res.farkas));
        }
    }
    return out;
}

FineCheckReport fine_inequality_check(const CondTableFamily& family) {
    family.validate();
    MarginalConsistencyReport consistency = check_marginal_consistency(family);
    if (!consistency.consistent)
        fail(ErrorCode::PreconditionViolated, "family is not marginal-consistent: " + consistency.worst);
    if (!uniform_marginals(family))
        fail(ErrorCode::PreconditionViolated,
             "signed-combination oracle only applies when every marginal is 1/2");

    std::array<Scalar, 4> corr;
    for (int g = 0; g < 4; ++g) corr[g] = table_correlation(family.tables[g]);

    FineCheckReport report;
    bool exact = family.exact_tables();
    double tol = exact ? 0.0 : kLpTol;
    report.satisfied = true;

    int n = 0;
    // All sign vectors with product -1: one or three minus signs.
    for (int mask = 0; mask < 16; ++mask) {
        int bits = __builtin_popcount(static_cast<unsigned>(mask));
        if (bits % 2 == 0) continue;
        std::array<int, 4> pattern;
        Scalar sum;
        for (int g = 0; g < 4; ++g) {
            pattern[g] = (mask >> g) & 1 ? -1 : +1;
            sum += Scalar(pattern[g]) * corr[g];
        }
        double value = sum.as_double();
        report.values[n++] = value;
        if (value > report.worst_value || n == 1) {
            report.worst_value = value;
            report.worst_pattern = pattern;
        }
        bool over = exact && sum.exact() ? sum.rat() > 2 : value > 2.0 + tol;
        if (over) report.satisfied = false;
    }
    return report;
}

RemarkGapReport remark_gap(const CondTableFamily& family) {
    RemarkGapReport report;
    report.feasibility = joint_feasible(family);
    report.gap_present = !report.feasibility.feasible;
    report.interpretation =
        report.feasibility.feasible
            ? "a joint distribution reproduces all four tables as unconditional pairwise marginals; "
              "drawing the settings pair independently of it gives a single space in which "
              "E(A(i)B(j)|eta=ij) equals E(A(i)B(j)) for every pair"
            : "no joint distribution on {+-1}^4 has these four tables as pairwise marginals, so no "
              "single-space model with settings-independent outcomes can make the conditional and "
              "unconditional pair correlations coincide for this family";
    return report;
}

} // namespace chsh
