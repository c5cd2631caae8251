#include <doctest.h>

#include <cmath>

#include "chsh/rng.hpp"
#include "chsh/settings.hpp"
#include "support/oracles.hpp"

using namespace chsh;

namespace {
const AngleConfig kTestAngles{.theta1 = M_PI / 4, .theta2 = 0, .theta1p = M_PI / 8, .theta2p = 3 * M_PI / 8};
constexpr double kInvSqrt2 = 0.70710678118654752;
} // namespace

TEST_CASE("equal angles give perfect correlation under the half-angle convention") {
    CondTable t = qm_table(0.7, 0.7, AngleConvention::HalfAngle);
    CHECK(t.pp.as_double() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.pm.as_double() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(table_correlation(t).as_double() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("full-angle tables at the standard test angles hit +-1/sqrt(2)") {
    CHECK(table_correlation(qm_table(M_PI / 4, M_PI / 8, AngleConvention::FullAngle)).as_double() ==
          doctest::Approx(kInvSqrt2).epsilon(1e-14));
    CHECK(table_correlation(qm_table(0, 3 * M_PI / 8, AngleConvention::FullAngle)).as_double() ==
          doctest::Approx(-kInvSqrt2).epsilon(1e-14));
}

TEST_CASE("the two conventions disagree at the standard test angles") {
    // Half-angle reads the same difference as cos(pi/8) = 0.9238..., which is
    // why the convention is an explicit switch and not a guess.
    double half = table_correlation(qm_table(M_PI / 4, M_PI / 8, AngleConvention::HalfAngle)).as_double();
    CHECK(half == doctest::Approx(std::cos(M_PI / 8)).epsilon(1e-14));
    CHECK(half != doctest::Approx(kInvSqrt2).epsilon(1e-3));
}

TEST_CASE("qm_table entries sum to one at floating accuracy") {
    SplitMix64 rng(5);
    for (int round = 0; round < 500; ++round) {
        double a = 20.0 * rng.next_unit() - 10.0;
        double b = 20.0 * rng.next_unit() - 10.0;
        auto convention = round % 2 ? AngleConvention::HalfAngle : AngleConvention::FullAngle;
        CondTable t = qm_table(a, b, convention);
        double sum = t.pp.as_double() + t.pm.as_double() + t.mp.as_double() + t.mm.as_double();
        REQUIRE(std::abs(sum - 1.0) <= 1e-15);

        double expected = convention == AngleConvention::HalfAngle ? std::cos(a - b) : std::cos(2 * (a - b));
        REQUIRE(std::abs(table_correlation(t).as_double() - expected) <= 1e-12);

        Marginals m = marginals(t);
        for (double v : {m.a_plus.as_double(), m.a_minus.as_double(), m.b_plus.as_double(),
                         m.b_minus.as_double()})
            REQUIRE(std::abs(v - 0.5) <= 1e-15);
    }
}

TEST_CASE("marginals of a degenerate table") {
    CondTable t = CondTable::make(Scalar(1), Scalar(0), Scalar(0), Scalar(0));
    Marginals m = marginals(t);
    CHECK(m.a_plus.rat() == 1);
    CHECK(m.a_minus.rat() == 0);
    CHECK(m.b_plus.rat() == 1);
    CHECK(m.b_minus.rat() == 0);
}

TEST_CASE("marginals of the uniform table are 1/2") {
    Marginals m = marginals(CondTable::uniform());
    CHECK(m.a_plus.rat() == Rational(1, 2));
    CHECK(m.b_minus.rat() == Rational(1, 2));
    CHECK(table_correlation(CondTable::uniform()).rat() == 0);
}

TEST_CASE("tables reject negatives and bad sums") {
    CHECK_THROWS_WITH_AS(CondTable::make(Scalar::ratio(1, 2), Scalar::ratio(1, 2), Scalar::ratio(1, 2),
                                         Scalar::ratio(-1, 2)),
                         doctest::Contains("InvalidTable"), Error);
    CHECK_THROWS_AS(CondTable::make(Scalar(0.5), Scalar(0.5), Scalar(0.1), Scalar(0.0)), Error);
}

TEST_CASE("family validation covers gate probabilities") {
    CondTableFamily family = oracle::family_from_correlations(
        {Scalar::ratio(1, 2), Scalar::ratio(1, 2), Scalar::ratio(1, 2), Scalar::ratio(-1, 2)});
    family.validate();
    family.gate_probs = {Scalar::ratio(1, 2), Scalar::ratio(1, 2), Scalar::ratio(1, 2), Scalar::ratio(1, 2)};
    CHECK_THROWS_WITH_AS(family.validate(), doctest::Contains("InvalidFamily"), Error);
    family.gate_probs = {Scalar::ratio(3, 2), Scalar::ratio(-1, 2), Scalar(0), Scalar(0)};
    CHECK_THROWS_AS(family.validate(), Error);
}

TEST_CASE("qm families are marginal-consistent at any angles") {
    SplitMix64 rng(7);
    for (int round = 0; round < 100; ++round) {
        AngleConfig angles{.theta1 = 6 * rng.next_unit(), .theta2 = 6 * rng.next_unit(),
                           .theta1p = 6 * rng.next_unit(), .theta2p = 6 * rng.next_unit(),
                           .convention = round % 2 ? AngleConvention::HalfAngle : AngleConvention::FullAngle};
        MarginalConsistencyReport report = check_marginal_consistency(qm_family(angles));
        REQUIRE(report.consistent);
        REQUIRE(report.max_discrepancy <= 1e-15);
    }
}

TEST_CASE("mixing a deterministic table with uniform breaks consistency by 1/2") {
    CondTableFamily family;
    family.tables = {CondTable::make(Scalar(1), Scalar(0), Scalar(0), Scalar(0)), CondTable::uniform(),
                     CondTable::uniform(), CondTable::uniform()};
    MarginalConsistencyReport report = check_marginal_consistency(family);
    CHECK(!report.consistent);
    CHECK(report.max_discrepancy == doctest::Approx(0.5));
    CHECK(!report.worst.empty());
}

TEST_CASE("the uniform family is consistent") {
    CondTableFamily family = CondTableFamily::of_tables(
        {CondTable::uniform(), CondTable::uniform(), CondTable::uniform(), CondTable::uniform()});
    CHECK(check_marginal_consistency(family).consistent);
}

TEST_CASE("qm_family at the test angles reproduces the target correlations") {
    CondTableFamily family = qm_family(kTestAngles);
    double expected[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    for (int g = 0; g < 4; ++g)
        CHECK(table_correlation(family.tables[g]).as_double() == doctest::Approx(expected[g]).epsilon(1e-14));
}

TEST_CASE("non-finite angles are rejected") {
    CHECK_THROWS_AS(qm_table(std::nan(""), 0.0, AngleConvention::FullAngle), Error);
    CHECK_THROWS_AS(qm_table(0.0, INFINITY, AngleConvention::FullAngle), Error);
}
