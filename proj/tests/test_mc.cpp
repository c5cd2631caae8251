#include <doctest.h>

#include <cmath>
#include <sstream>

#include "chsh/mc.hpp"
#include "chsh/rng.hpp"
#include "support/oracles.hpp"

using namespace chsh;

namespace {

const AngleConfig kTestAngles{.theta1 = M_PI / 4, .theta2 = 0, .theta1p = M_PI / 8, .theta2p = 3 * M_PI / 8};

CondTableFamily uniform_family() {
    return CondTableFamily::of_tables(
        {CondTable::uniform(), CondTable::uniform(), CondTable::uniform(), CondTable::uniform()});
}

CondTableFamily all_plus_family() {
    CondTable t = CondTable::make(Scalar(1), Scalar(0), Scalar(0), Scalar(0));
    return CondTableFamily::of_tables({t, t, t, t});
}

McConfig config_for(const CondTableFamily& family, std::uint64_t trials, std::uint64_t seed) {
    McConfig c;
    c.family = family;
    c.trials = trials;
    c.seed = seed;
    return c;
}

bool structurally_valid(const TrialLog& log) {
    for (const TrialRecord& r : log.records) {
        int i = r.gate / 2, j = r.gate % 2;
        int active_a = i == 0 ? r.a1 : r.a2;
        int active_b = j == 0 ? r.b1 : r.b2;
        int blocked_a = i == 0 ? r.a2 : r.a1;
        int blocked_b = j == 0 ? r.b2 : r.b1;
        if (std::abs(active_a) != 1 || std::abs(active_b) != 1) return false;
        if (blocked_a != 0 || blocked_b != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("config validation") {
    McConfig c = config_for(uniform_family(), 0, 1);
    CHECK_THROWS_WITH_AS(run_experiment(c), doctest::Contains("InvalidConfig"), Error);
    c.trials = 10;
    c.batch_size = 0;
    CHECK_THROWS_AS(run_experiment(c), Error);
    c.batch_size = 4;
    c.schedule = GateSchedule::Balanced;
    CHECK_THROWS_AS(run_experiment(c), Error); // 10 % 4 != 0
    c.trials = 12;
    CHECK_NOTHROW(run_experiment(c));
    c.family.gate_probs = {Scalar::ratio(1, 2), Scalar::ratio(1, 6), Scalar::ratio(1, 6), Scalar::ratio(1, 6)};
    CHECK_THROWS_AS(run_experiment(c), Error); // balanced needs uniform gates
}

TEST_CASE("deterministic tables produce only (+1,+1) on the selected pair") {
    TrialLog log = run_experiment(config_for(all_plus_family(), 2000, 5));
    REQUIRE(structurally_valid(log));
    for (const TrialRecord& r : log.records) {
        int i = r.gate / 2, j = r.gate % 2;
        CHECK((i == 0 ? r.a1 : r.a2) == 1);
        CHECK((j == 0 ? r.b1 : r.b2) == 1);
    }
}

TEST_CASE("same seed, same log; different seed, different log") {
    McConfig c = config_for(qm_family(kTestAngles), 50000, 99);
    TrialLog first = run_experiment(c);
    TrialLog second = run_experiment(c);
    REQUIRE(first.records.size() == second.records.size());
    for (std::size_t k = 0; k < first.records.size(); ++k) {
        REQUIRE(first.records[k].gate == second.records[k].gate);
        REQUIRE(first.records[k].a1 == second.records[k].a1);
        REQUIRE(first.records[k].b2 == second.records[k].b2);
    }
    c.seed = 100;
    TrialLog third = run_experiment(c);
    bool any_difference = false;
    for (std::size_t k = 0; k < first.records.size() && !any_difference; ++k)
        any_difference = first.records[k].gate != third.records[k].gate ||
                         first.records[k].a1 != third.records[k].a1;
    CHECK(any_difference);
}

TEST_CASE("parallelism degree does not change the log") {
    McConfig c = config_for(qm_family(kTestAngles), 100000, 7);
    c.batch_size = 1024;
    c.max_threads = 1;
    TrialLog serial = run_experiment(c);
    c.max_threads = 8;
    TrialLog parallel = run_experiment(c);
    std::ostringstream a, b;
    write_csv(serial, a);
    write_csv(parallel, b);
    REQUIRE(a.str() == b.str());
}

TEST_CASE("gate frequencies concentrate around 1/4") {
    const std::uint64_t m = 1000000;
    TrialLog log = run_experiment(config_for(uniform_family(), m, 2024));
    McEstimate est = estimate(log);
    double band = 3.0 * std::sqrt(3.0 / 16.0) / std::sqrt(static_cast<double>(m));
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) REQUIRE(std::abs(est.gate_freq(i, j) - 0.25) <= band);
}

TEST_CASE("balanced schedule selects each pair exactly trials/4 times") {
    McConfig c = config_for(qm_family(kTestAngles), 40000, 3);
    c.schedule = GateSchedule::Balanced;
    TrialLog log = run_experiment(c);
    REQUIRE(structurally_valid(log));
    McEstimate est = estimate(log);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) REQUIRE(est.pair(i, j).count == 10000);
}

TEST_CASE("structure: exactly one channel per side, matching the gate") {
    TrialLog log = run_experiment(config_for(qm_family(kTestAngles), 20000, 11));
    CHECK(structurally_valid(log));
}

TEST_CASE("csv format") {
    McConfig c = config_for(all_plus_family(), 3, 1);
    TrialLog log = run_experiment(c);
    std::ostringstream out;
    write_csv(log, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,eta,a1,a2,b1,b2");
    int k = 0;
    while (std::getline(in, line)) {
        ++k;
        CHECK(line.rfind(std::to_string(k) + ",", 0) == 0);
    }
    CHECK(k == 3);
}

TEST_CASE("estimates converge to the table correlations") {
    McConfig c = config_for(qm_family(kTestAngles), 4000000, 1);
    McEstimate est = estimate(run_experiment(c));
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            double target = table_correlation(c.family.table(i, j)).as_double();
            const PairEstimate& p = est.pair(i, j);
            REQUIRE(p.cond.has_value());
            double band = 3.0 * std::sqrt((1.0 - target * target) / static_cast<double>(p.count));
            REQUIRE(std::abs(*p.cond - target) <= band);
        }
    }
}

TEST_CASE("full estimate is the conditional scaled by the gate frequency, exactly") {
    McEstimate est = estimate(run_experiment(config_for(qm_family(kTestAngles), 100000, 17)));
    for (const PairEstimate& p : est.pairs) {
        // Integer identity: both derive from the same sum.
        REQUIRE(p.count > 0);
        Rational full(p.sum_products, static_cast<long long>(est.trials));
        Rational cond(p.sum_products, static_cast<long long>(p.count));
        Rational freq(static_cast<long long>(p.count), static_cast<long long>(est.trials));
        REQUIRE(full == freq * cond);
        REQUIRE(p.full == doctest::Approx(*p.cond * static_cast<double>(freq)).epsilon(1e-12));
    }
}

TEST_CASE("a single trial fills one cell and leaves the rest empty") {
    McConfig c = config_for(all_plus_family(), 1, 42);
    McEstimate est = estimate(run_experiment(c));
    int filled = 0;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            if (est.pair(i, j).count == 1) {
                ++filled;
                CHECK(est.cond_or_fail(i, j) == 1.0);
            } else {
                CHECK_THROWS_WITH_AS(est.cond_or_fail(i, j), doctest::Contains("EmptyCell"), Error);
            }
        }
    }
    CHECK(filled == 1);
    CHECK_THROWS_AS(chsh_from_estimates(est), Error);
}

TEST_CASE("estimating an empty log fails") {
    TrialLog log;
    CHECK_THROWS_AS(estimate(log), Error);
}

TEST_CASE("chsh_from_estimates approaches 2*sqrt(2) conditionally and stays under 2 unconditionally") {
    McConfig c = config_for(qm_family(kTestAngles), 4000000, 2);
    McEstimate est = estimate(run_experiment(c));
    McChshReport report = chsh_from_estimates(est);

    double pooled = 0;
    for (const PairEstimate& p : est.pairs) pooled += *p.cond_se * *p.cond_se;
    double band = 3.0 * std::sqrt(pooled);
    CHECK(std::abs(report.conditional.s.as_double() - 2.0 * std::sqrt(2.0)) <= band);
    CHECK(report.conditional.bounds[0].satisfied);
    CHECK(report.conditional.bounds[1].satisfied);

    CHECK(std::abs(report.full.s.as_double() - std::sqrt(2.0) / 2.0) <= band);
    CHECK(report.full.bounds[0].satisfied);
}

TEST_CASE("uniform family estimates hover near zero") {
    McEstimate est = estimate(run_experiment(config_for(uniform_family(), 1000000, 8)));
    for (const PairEstimate& p : est.pairs) REQUIRE(std::abs(*p.cond) <= 3.0 * *p.cond_se);
}

TEST_CASE("deterministic extreme tables give a conditional sum of exactly 4 in every run") {
    CondTable plus = CondTable::make(Scalar::ratio(1, 2), Scalar(0), Scalar(0), Scalar::ratio(1, 2));
    CondTable minus = CondTable::make(Scalar(0), Scalar::ratio(1, 2), Scalar::ratio(1, 2), Scalar(0));
    CondTableFamily family = CondTableFamily::of_tables({plus, plus, plus, minus});
    for (std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
        McEstimate est = estimate(run_experiment(config_for(family, 40000, seed)));
        McChshReport report = chsh_from_estimates(est);
        REQUIRE(report.conditional.s.as_double() == 4.0);
    }
}

TEST_CASE("estimator is unbiased across seeds") {
    // Mean conditional estimate over 100 seeds should sit within four pooled
    // standard errors of the table correlation.
    CondTableFamily family = qm_family(kTestAngles);
    const int seeds = 100;
    const std::uint64_t m = 100000;
    std::array<double, 4> mean{}, pooled_var{};
    for (int s = 0; s < seeds; ++s) {
        McEstimate est = estimate(run_experiment(config_for(family, m, 1000 + s)));
        for (int g = 0; g < 4; ++g) {
            mean[g] += *est.pairs[g].cond / seeds;
            pooled_var[g] += (*est.pairs[g].cond_se) * (*est.pairs[g].cond_se) / (seeds * seeds);
        }
    }
    for (int g = 0; g < 4; ++g) {
        double target = table_correlation(family.tables[g]).as_double();
        REQUIRE(std::abs(mean[g] - target) <= 4.0 * std::sqrt(pooled_var[g]));
    }
}

TEST_CASE("sensor device preset: uniform switching, one live sensor per side") {
    McConfig preset = sensor_device_preset();
    for (const Scalar& q : preset.family.gate_probs) CHECK(q.rat() == Rational(1, 4));

    TrialLog log = run_experiment(preset);
    CHECK(structurally_valid(log));

    // Swapping in deterministic tables keeps the structure.
    preset.family = all_plus_family();
    preset.trials = 500;
    TrialLog det = run_experiment(preset);
    CHECK(structurally_valid(det));
    for (const TrialRecord& r : det.records) {
        int nonzero_a = (r.a1 != 0) + (r.a2 != 0);
        int nonzero_b = (r.b1 != 0) + (r.b2 != 0);
        REQUIRE(nonzero_a == 1);
        REQUIRE(nonzero_b == 1);
    }
}
