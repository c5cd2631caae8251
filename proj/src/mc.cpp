#include "chsh/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "chsh/rng.hpp"

namespace chsh {

void McConfig::validate() const {
    family.validate();
    if (trials < 1) fail(ErrorCode::InvalidConfig, "trials must be >= 1");
    if (batch_size < 1) fail(ErrorCode::InvalidConfig, "batch_size must be >= 1");
    if (schedule == GateSchedule::Balanced) {
        if (trials % 4 != 0)
            fail(ErrorCode::InvalidConfig, "balanced schedule needs trials divisible by 4");
        if (!family.uniform_gates())
            fail(ErrorCode::InvalidConfig, "balanced schedule needs uniform gate probabilities");
    }
}

namespace {

struct GateTables {
    // Cumulative thresholds for inverse-CDF draws, doubles for the hot loop.
    std::array<double, 3> gate_cum;
    std::array<std::array<double, 3>, 4> outcome_cum;
    std::array<std::array<TrialRecord, 4>, 4> records; // [gate][outcome] prototypes
};

GateTables precompute(const CondTableFamily& family) {
    GateTables t{};
    double acc = 0;
    for (int g = 0; g < 3; ++g) {
        acc += family.gate_probs[g].as_double();
        t.gate_cum[g] = acc;
    }
    constexpr int kSigns[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
    for (int g = 0; g < 4; ++g) {
        const CondTable& table = family.tables[g];
        const double probs[4] = {table.pp.as_double(), table.pm.as_double(), table.mp.as_double(),
                                 table.mm.as_double()};
        double c = 0;
        for (int o = 0; o < 3; ++o) {
            c += probs[o];
            t.outcome_cum[g][o] = c;
        }
        int i = g / 2, j = g % 2; // 0-based setting indices
        for (int o = 0; o < 4; ++o) {
            TrialRecord r{0, 0, 0, 0, static_cast<std::uint8_t>(g)};
            std::int8_t eps = static_cast<std::int8_t>(kSigns[o][0]);
            std::int8_t eps_prime = static_cast<std::int8_t>(kSigns[o][1]);
            (i == 0 ? r.a1 : r.a2) = eps;
            (j == 0 ? r.b1 : r.b2) = eps_prime;
            t.records[g][o] = r;
        }
    }
    return t;
}

inline int pick(const std::array<double, 3>& cum, double u) {
    if (u < cum[0]) return 0;
    if (u < cum[1]) return 1;
    if (u < cum[2]) return 2;
    return 3;
}

std::vector<std::uint8_t> balanced_gate_sequence(std::uint64_t trials, std::uint64_t seed) {
    std::vector<std::uint8_t> gates(trials);
    std::uint64_t per_gate = trials / 4;
    for (std::uint64_t k = 0; k < trials; ++k) gates[k] = static_cast<std::uint8_t>(k / per_gate);
    // Fisher-Yates on substream 0; batch substreams start at 1.
    SplitMix64 rng(derive_stream(seed, 0));
    for (std::uint64_t k = trials - 1; k > 0; --k) {
        std::uint64_t r = rng.next_below(k + 1);
        std::swap(gates[k], gates[r]);
    }
    return gates;
}

} // namespace

TrialLog run_experiment(const McConfig& config) {
    config.validate();

    TrialLog log;
    log.seed = config.seed;
    log.batch_size = config.batch_size;
    log.schedule = config.schedule;
    log.records.resize(config.trials);

    const GateTables tables = precompute(config.family);
    std::vector<std::uint8_t> balanced;
    if (config.schedule == GateSchedule::Balanced)
        balanced = balanced_gate_sequence(config.trials, config.seed);

    const std::uint64_t n_batches = (config.trials + config.batch_size - 1) / config.batch_size;

    auto run_batch = [&](std::uint64_t batch) {
        SplitMix64 rng(derive_stream(config.seed, batch + 1));
        const std::uint64_t begin = batch * config.batch_size;
        const std::uint64_t end = std::min<std::uint64_t>(begin + config.batch_size, config.trials);
        for (std::uint64_t k = begin; k < end; ++k) {
            int gate = config.schedule == GateSchedule::Balanced ? balanced[k]
                                                                 : pick(tables.gate_cum, rng.next_unit());
            int outcome = pick(tables.outcome_cum[gate], rng.next_unit());
            log.records[k] = tables.records[gate][outcome];
        }
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned threads = config.max_threads == 0 ? hw : config.max_threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_batches));

    if (threads <= 1) {
        for (std::uint64_t b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                for (;;) {
                    std::uint64_t b = next.fetch_add(1);
                    if (b >= n_batches) return;
                    run_batch(b);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return log;
}

void write_csv(const TrialLog& log, std::ostream& out) {
    out << "k,eta,a1,a2,b1,b2\n";
    for (std::size_t k = 0; k < log.records.size(); ++k) {
        const TrialRecord& r = log.records[k];
        out << (k + 1) << ',' << gate_label(r.gate) << ',' << int(r.a1) << ',' << int(r.a2) << ','
            << int(r.b1) << ',' << int(r.b2) << '\n';
    }
}

double McEstimate::cond_or_fail(int i, int j) const {
    const PairEstimate& p = pair(i, j);
    if (!p.cond)
        fail(ErrorCode::EmptyCell, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") was never selected; conditional estimate undefined");
    return *p.cond;
}

McEstimate estimate(const TrialLog& log) {
    if (log.records.empty()) fail(ErrorCode::InvalidConfig, "cannot estimate from an empty trial log");

    McEstimate est;
    est.trials = log.records.size();
    for (const TrialRecord& r : log.records) {
        PairEstimate& p = est.pairs[r.gate];
        ++p.count;
        int a = r.gate / 2 == 0 ? r.a1 : r.a2;
        int b = r.gate % 2 == 0 ? r.b1 : r.b2;
        p.sum_products += a * b;
    }

    const double m = static_cast<double>(est.trials);
    for (PairEstimate& p : est.pairs) {
        const double s = static_cast<double>(p.sum_products);
        p.full = s / m;
        // A^(i)B^(j) is 0 off the pair's trials and +-1 on them, so
        // E(X^2) = N_ij / M.
        double var_full = static_cast<double>(p.count) / m - p.full * p.full;
        p.full_se = std::sqrt(std::max(0.0, var_full) / m);
        if (p.count > 0) {
            const double n = static_cast<double>(p.count);
            double c = s / n;
            p.cond = c;
            p.cond_se = std::sqrt(std::max(0.0, 1.0 - c * c) / n);
        }
    }
    return est;
}

McChshReport chsh_from_estimates(const McEstimate& est) {
    std::array<Scalar, 4> full_terms, cond_terms;
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            int idx = CondTableFamily::index(i, j);
            full_terms[idx] = Scalar(est.pair(i, j).full);
            cond_terms[idx] = Scalar(est.cond_or_fail(i, j));
        }
    }
    return McChshReport{make_chsh_report(full_terms, {2.0}), make_chsh_report(cond_terms, {4.0, 8.0})};
}

McConfig sensor_device_preset() {
    McConfig config;
    config.family = CondTableFamily::of_tables(
        {CondTable::uniform(), CondTable::uniform(), CondTable::uniform(), CondTable::uniform()});
    config.trials = 10000;
    config.seed = 0;
    return config;
}

} // namespace chsh
