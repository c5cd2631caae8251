#include "chsh/two_valued.hpp"

#include <cmath>

namespace chsh {

const std::array<TwoValuedRow, 16>& two_valued_rows() {
    // Eight x-rows, then eight y-rows. In every row A2 = A1; B2 = B1 except
    // at eta = 22, where B2 flips relative to the matching x/y pattern.
    static const std::array<TwoValuedRow, 16> rows = {{
        {+1, +1, +1, +1, 11},
        {-1, -1, -1, -1, 11},
        {+1, +1, +1, +1, 12},
        {-1, -1, -1, -1, 12},
        {+1, +1, +1, +1, 21},
        {-1, -1, -1, -1, 21},
        {+1, +1, +1, -1, 22},
        {-1, -1, -1, +1, 22},

        {-1, -1, +1, +1, 11},
        {+1, +1, -1, -1, 11},
        {-1, -1, +1, +1, 12},
        {+1, +1, -1, -1, 12},
        {-1, -1, +1, +1, 21},
        {+1, +1, -1, -1, 21},
        {-1, -1, +1, -1, 22},
        {+1, +1, -1, +1, 22},
    }};
    return rows;
}

TwoValuedParams TwoValuedParams::make(Scalar x, Scalar y) {
    if (x.sign() < 0 || y.sign() < 0)
        fail(ErrorCode::InvalidParams, "x and y must be nonnegative (got x=" + x.str() + ", y=" + y.str() + ")");
    Scalar sum = Scalar(8) * x + Scalar(8) * y;
    if (x.exact() && y.exact()) {
        if (sum.rat() != 1)
            fail(ErrorCode::InvalidParams, "8x + 8y = " + sum.str() + ", expected exactly 1");
    } else if (std::abs(sum.as_double() - 1.0) > kFloatTol) {
        fail(ErrorCode::InvalidParams, "8x + 8y = " + sum.str() + ", expected 1 within 1e-12");
    }
    return TwoValuedParams{std::move(x), std::move(y)};
}

TwoValuedSpace build_two_valued_space(const TwoValuedParams& params) {
    TwoValuedParams checked = TwoValuedParams::make(params.x, params.y);
    const auto& rows = two_valued_rows();

    std::vector<std::string> atoms;
    std::vector<Scalar> weights;
    atoms.reserve(16);
    weights.reserve(16);
    for (std::size_t k = 0; k < 16; ++k) {
        atoms.push_back((k < 8 ? "x" : "y") + std::to_string(k % 8 + 1));
        weights.push_back(k < 8 ? checked.x : checked.y);
    }
    FiniteProbSpace space = make_space(std::move(atoms), std::move(weights));

    auto field_rv = [&](int TwoValuedRow::* field) {
        return RandomVariable::map(space, [&](std::size_t k) { return Scalar(rows[k].*field); });
    };
    auto block_event = [&](int eta) {
        return Event::where(space, [&](std::size_t k, const std::string&) { return rows[k].eta == eta; });
    };

    return TwoValuedSpace{
        .space = space,
        .a1 = field_rv(&TwoValuedRow::a1),
        .a2 = field_rv(&TwoValuedRow::a2),
        .b1 = field_rv(&TwoValuedRow::b1),
        .b2 = field_rv(&TwoValuedRow::b2),
        .eta = field_rv(&TwoValuedRow::eta),
        .blocks = {block_event(11), block_event(12), block_event(21), block_event(22)},
        .params = checked,
    };
}

std::array<Scalar, 4> conditional_correlations(const TwoValuedSpace& tvs) {
    std::array<Scalar, 4> out;
    Scalar eight_diff = Scalar(8) * (tvs.params.x - tvs.params.y);
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            int idx = 2 * (i - 1) + (j - 1);
            out[idx] = conditional_expectation(tvs.space, product(tvs.a(i), tvs.b(j)), tvs.block(i, j));

            Scalar closed = (i == 2 && j == 2) ? -eight_diff : eight_diff;
            bool ok = out[idx].exact() && closed.exact()
                          ? out[idx].rat() == closed.rat()
                          : std::abs((out[idx] - closed).as_double()) <= kFloatTol;
            if (!ok)
                fail(ErrorCode::Internal, "conditional correlation from the space (" + out[idx].str() +
                                              ") disagrees with its closed form (" + closed.str() + ")");
        }
    }
    return out;
}

TwoValuedParams solve_xy(const Scalar& c) {
    bool in_range = c.exact() ? (c.rat() >= -1 && c.rat() <= 1) : std::abs(c.as_double()) <= 1.0;
    if (!in_range) fail(ErrorCode::TargetOutOfRange, "target correlation " + c.str() + " outside [-1,1]");
    Scalar sixteenth = Scalar::ratio(1, 16);
    return TwoValuedParams::make((Scalar(1) + c) * sixteenth, (Scalar(1) - c) * sixteenth);
}

NonSignallingReport verify_non_signalling(const TwoValuedSpace& tvs) {
    const auto& rows = two_valued_rows();
    NonSignallingReport report;
    Scalar half = Scalar::ratio(1, 2);

    std::size_t n = 0;
    bool all_equal = true;
    auto run_side = [&](char side, int setting) {
        // Conditioning events: each single pair label using this setting, and
        // their union (the marginal law of this side's own setting choice).
        for (int other = 1; other <= 3; ++other) {
            Event cond = Event::where(tvs.space, [&](std::size_t k, const std::string&) {
                int e = rows[k].eta;
                int own = side == 'A' ? e / 10 : e % 10;
                int oth = side == 'A' ? e % 10 : e / 10;
                return own == setting && (other == 3 || oth == other);
            });
            const RandomVariable& rv = side == 'A' ? tvs.a(setting) : tvs.b(setting);
            for (int eps : {+1, -1}) {
                Event outcome = Event::where(tvs.space, [&](std::size_t k, const std::string&) {
                    return cond.contains(k) && rv.value(k) == Scalar(eps);
                });
                Scalar p = tvs.space.prob(outcome) / tvs.space.prob(cond);
                Scalar gap = p - half;
                NonSignallingCheck check;
                check.description = std::string(1, side) + std::to_string(setting) + "=" +
                                    (eps > 0 ? "+1" : "-1") + " | eta in " +
                                    (other == 3 ? "{both pairs}" : "{pair " + std::to_string(other) + "}");
                check.probability = p;
                check.deviation = std::abs(gap.as_double());
                bool equal = gap.exact() ? gap.rat() == 0 : check.deviation <= kFloatTol;
                all_equal = all_equal && equal;
                report.max_deviation = std::max(report.max_deviation, check.deviation);
                report.checks[n++] = check;
            }
        }
    };
    for (int i = 1; i <= 2; ++i) run_side('A', i);
    for (int j = 1; j <= 2; ++j) run_side('B', j);

    report.holds = all_equal;
    return report;
}

RemarkReport check_remark(const TwoValuedSpace& tvs) {
    RemarkReport report;
    std::array<Scalar, 4> cond = conditional_correlations(tvs);
    bool all_equal = true;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            int idx = 2 * (i - 1) + (j - 1);
            report.conditional[idx] = cond[idx];
            report.unconditional[idx] = correlation(tvs.space, tvs.a(i), tvs.b(j));
            Scalar gap = report.conditional[idx] - report.unconditional[idx];
            report.residuals[idx] = std::abs(gap.as_double());
            bool equal = gap.exact() ? gap.rat() == 0 : report.residuals[idx] <= kFloatTol;
            all_equal = all_equal && equal;
        }
    }
    report.equality_holds = all_equal;
    return report;
}

} // namespace chsh
