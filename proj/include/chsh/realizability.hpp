#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "chsh/settings.hpp"

namespace chsh {

/// Tolerance of the float-mode feasibility decision (exact mode uses none).
inline constexpr double kLpTol = 1e-9;

/// Joint distribution over (a1,a2,b1,b2) in {+1,-1}^4. Assignment index runs
/// 0..15 with a1 the highest bit; bit clear = +1, bit set = -1, so index 0 is
/// the all-plus corner.
struct JointDistribution {
    std::array<Scalar, 16> weights;

    static int index(int a1, int a2, int b1, int b2);
    static std::array<int, 4> assignment(int index);

    /// Pairwise law of (A_i, B_j) induced by this joint.
    CondTable pair_marginal(int i, int j) const;
};

struct InfeasibilityCertificate {
    enum class Kind { MarginalInconsistency, ChshViolation, LpDual };
    Kind kind = Kind::LpDual;
    std::string message;
    // ChshViolation: the signed combination of table correlations exceeding 2.
    std::array<int, 4> sign_pattern{0, 0, 0, 0};
    double violation = 0;
    // LpDual: functional y over the 16 marginal constraints with y.b > 0 and
    // y.A <= 0 (a separating hyperplane for the feasibility polytope).
    std::vector<double> dual;
};

struct Feasibility {
    bool feasible = false;
    std::optional<JointDistribution> witness;
    std::optional<InfeasibilityCertificate> certificate;
};

/// Whether one joint distribution on {+-1}^4 reproduces all four tables as
/// its unconditional pairwise marginals. Exact rational simplex when the
/// tables are exact, double simplex with 1e-9 tolerance otherwise. A
/// marginal-inconsistent family is immediately infeasible with the
/// inconsistency as certificate.
Feasibility joint_feasible(const CondTableFamily& family);

struct FineCheckReport {
    bool satisfied = false;
    std::array<int, 4> worst_pattern{0, 0, 0, 0};
    double worst_value = 0;
    std::array<double, 8> values{}; // all signed combinations with sign product -1
};

/// Independent oracle for joint_feasible, valid only when every marginal is
/// 1/2: evaluates all eight signed CHSH combinations of the four table
/// correlations and checks them against 2. PreconditionViolated otherwise.
FineCheckReport fine_inequality_check(const CondTableFamily& family);

struct RemarkGapReport {
    Feasibility feasibility;
    bool gap_present = false; // true when no joint exists
    std::string interpretation;
};

/// Feasibility verdict read as a statement about conditional vs unconditional
/// correlations: a witness joint, with settings drawn independently of
/// outcomes, gives a single space where E(A^(i)B^(j)|eta=ij) = E(A^(i)B^(j))
/// for every pair; infeasibility means no such model reproduces this family.
RemarkGapReport remark_gap(const CondTableFamily& family);

} // namespace chsh
