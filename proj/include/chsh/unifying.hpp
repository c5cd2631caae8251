#pragma once

#include <array>

#include "chsh/prob_space.hpp"
#include "chsh/settings.hpp"

namespace chsh {

/// The 16-atom three-valued space unifying the four per-setting experiments.
///
/// Atoms are 4-tuples (w1,w2,w3,w4): exactly one of w1,w2 and one of w3,w4 is
/// +-1, the rest 0. The nonzero slots identify the selected settings pair, so
/// the atom (e1,0,e1',0) carries weight q11*p11(e1,e1'), and so on. A1..B2
/// read their slot (hence vanish off their blocks), eta reads the pair label.
struct UnifyingSpace {
    FiniteProbSpace space;
    RandomVariable a1, a2, b1, b2, eta;
    std::array<Event, 4> blocks;                 // eta == 11, 12, 21, 22
    std::array<std::array<int, 4>, 16> tuples;   // atom order: blocks 11,12,21,22; (+,+),(+,-),(-,+),(-,-)
    CondTableFamily family;

    const RandomVariable& a(int i) const { return i == 1 ? a1 : a2; }
    const RandomVariable& b(int j) const { return j == 1 ? b1 : b2; }
    const Event& block(int i, int j) const { return blocks[CondTableFamily::index(i, j)]; }
};

UnifyingSpace build_unifying_space(const CondTableFamily& family);

struct PiPairReport {
    int i = 0, j = 0;
    Scalar cond_exp;    // E(A^(i) B^(j) | eta = ij)
    Scalar scaled_corr; // <A^(i), B^(j)> / q_ij
    Scalar table_corr;  // correlation of p_ij
    double residual = 0;
};

struct PiReport {
    std::array<PiPairReport, 4> pairs;
    double max_residual = 0;
    bool holds(double tol = kFloatTol) const { return max_residual <= tol; }
};

/// Checks E(A^(i)B^(j) | eta=ij) = <A^(i),B^(j)> / q_ij = table correlation
/// for each pair. Requires every gate probability positive.
PiReport verify_pi_identity(const UnifyingSpace& us);

/// CHSH combination of the four conditional correlations, judged against the
/// trivial bound 4 and the gate-scaled bound 8.
ChshReport conditional_chsh(const UnifyingSpace& us);

} // namespace chsh
