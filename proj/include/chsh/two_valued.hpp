#pragma once

#include <array>
#include <string>

#include "chsh/prob_space.hpp"

namespace chsh {

/// Weights of the two eight-row outcome tables. Valid when x >= 0, y >= 0 and
/// 8x + 8y = 1 (exactly in rational mode, within 1e-12 in float mode).
struct TwoValuedParams {
    Scalar x, y;

    static TwoValuedParams make(Scalar x, Scalar y);
    bool exact() const { return x.exact() && y.exact(); }
};

/// One row of the fixed sixteen-outcome table: four +-1 values and the
/// settings label. The row set is a constant of the construction; only the
/// two weights x and y vary.
struct TwoValuedRow {
    int a1, a2, b1, b2;
    int eta; // 11, 12, 21, 22
};

/// The sixteen rows: the first eight carry weight x, the last eight weight y.
const std::array<TwoValuedRow, 16>& two_valued_rows();

struct TwoValuedSpace {
    FiniteProbSpace space;
    RandomVariable a1, a2, b1, b2, eta;
    std::array<Event, 4> blocks; // eta == 11, 12, 21, 22
    TwoValuedParams params;

    const RandomVariable& a(int i) const { return i == 1 ? a1 : a2; }
    const RandomVariable& b(int j) const { return j == 1 ? b1 : b2; }
    const Event& block(int i, int j) const { return blocks[2 * (i - 1) + (j - 1)]; }
};

TwoValuedSpace build_two_valued_space(const TwoValuedParams& params);

/// E(A^(i)B^(j) | eta=ij) for the four pairs, in order 11, 12, 21, 22.
/// Computed from the space by conditioning, then checked against the closed
/// forms 8x-8y (pairs 11, 12, 21) and 8y-8x (pair 22); a mismatch is an
/// internal invariant violation.
std::array<Scalar, 4> conditional_correlations(const TwoValuedSpace& tvs);

/// Parameters hitting conditional correlation c on pairs 11, 12, 21 (and -c
/// on 22): x = (1+c)/16, y = (1-c)/16. Requires |c| <= 1.
TwoValuedParams solve_xy(const Scalar& c);

struct NonSignallingCheck {
    std::string description;
    Scalar probability; // should be 1/2
    double deviation = 0;
};

struct NonSignallingReport {
    bool holds = false;
    double max_deviation = 0;
    std::array<NonSignallingCheck, 24> checks; // 2 sides x 2 settings x 2 signs x 3 conditionings
};

/// P(side outcome | own setting, any claim about the pair label) is 1/2
/// across the board: exact in rational mode.
NonSignallingReport verify_non_signalling(const TwoValuedSpace& tvs);

struct RemarkReport {
    std::array<Scalar, 4> conditional;   // E(A^(i)B^(j)|eta=ij)
    std::array<Scalar, 4> unconditional; // <A^(i),B^(j)>
    std::array<double, 4> residuals;
    bool equality_holds = false; // true iff conditional == unconditional for every pair
};

/// Whether conditioning on the settings label changes the pair correlations.
/// Equality holds only at x == y; the report carries the per-pair gaps.
RemarkReport check_remark(const TwoValuedSpace& tvs);

} // namespace chsh
