#include "chsh/unifying.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace chsh {

namespace {

constexpr int kSigns[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};

std::string tuple_label(const std::array<int, 4>& t) {
    std::string s = "(";
    for (int k = 0; k < 4; ++k) {
        if (k) s += ",";
        s += std::to_string(t[k]);
    }
    s += ")";
    return s;
}

} // namespace

UnifyingSpace build_unifying_space(const CondTableFamily& family) {
    family.validate();

    std::vector<std::string> atoms;
    std::vector<Scalar> weights;
    std::array<std::array<int, 4>, 16> tuples{};
    atoms.reserve(16);
    weights.reserve(16);

    int atom = 0;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            const CondTable& p = family.table(i, j);
            for (const auto& sign : kSigns) {
                int eps = sign[0], eps_prime = sign[1];
                std::array<int, 4> t{0, 0, 0, 0};
                t[i - 1] = eps;
                t[2 + (j - 1)] = eps_prime;
                tuples[atom] = t;
                atoms.push_back(tuple_label(t));
                weights.push_back(family.gate(i, j) * p.at(eps, eps_prime));
                ++atom;
            }
        }
    }

    FiniteProbSpace space = make_space(std::move(atoms), std::move(weights));

    auto slot_rv = [&](int slot) {
        return RandomVariable::map(space, [&](std::size_t k) { return Scalar(tuples[k][slot]); });
    };

    UnifyingSpace us{
        .space = space,
        .a1 = slot_rv(0),
        .a2 = slot_rv(1),
        .b1 = slot_rv(2),
        .b2 = slot_rv(3),
        .eta = RandomVariable::map(space, [&](std::size_t k) {
            int block = static_cast<int>(k) / 4;
            return Scalar(11 + 10 * (block / 2) + (block % 2));
        }),
        .blocks = {Event::of_indices(space, {0, 1, 2, 3}), Event::of_indices(space, {4, 5, 6, 7}),
                   Event::of_indices(space, {8, 9, 10, 11}), Event::of_indices(space, {12, 13, 14, 15})},
        .tuples = tuples,
        .family = family,
    };
    return us;
}

PiReport verify_pi_identity(const UnifyingSpace& us) {
    PiReport report;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            int idx = CondTableFamily::index(i, j);
            const Scalar& q = us.family.gate(i, j);
            if (q.is_zero())
                fail(ErrorCode::NullEvent, "gate probability q_" + std::to_string(i) + std::to_string(j) +
                                               " is zero; conditional correlation undefined");

            PiPairReport pair;
            pair.i = i;
            pair.j = j;
            pair.cond_exp = conditional_expectation(us.space, product(us.a(i), us.b(j)), us.block(i, j));
            pair.scaled_corr = correlation(us.space, us.a(i), us.b(j)) / q;
            pair.table_corr = table_correlation(us.family.table(i, j));
            double to_table = std::abs((pair.cond_exp - pair.table_corr).as_double());
            double to_scaled = std::abs((pair.scaled_corr - pair.table_corr).as_double());
            pair.residual = std::max(to_table, to_scaled);
            report.max_residual = std::max(report.max_residual, pair.residual);
            report.pairs[idx] = pair;
        }
    }
    return report;
}

ChshReport conditional_chsh(const UnifyingSpace& us) {
    PiReport pi = verify_pi_identity(us); // shares the positivity requirement on gates
    std::array<Scalar, 4> terms = {pi.pairs[0].cond_exp, pi.pairs[1].cond_exp, pi.pairs[2].cond_exp,
                                   pi.pairs[3].cond_exp};
    return make_chsh_report(terms, {4.0, 8.0});
}

} // namespace chsh
