#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "chsh/prob_space.hpp"
#include "chsh/settings.hpp"

namespace chsh {

enum class GateSchedule {
    Iid,      // gate drawn independently each trial with probability q_ij
    Balanced, // random permutation of a schedule holding each pair exactly M/4 times
};

struct McConfig {
    CondTableFamily family;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint32_t batch_size = 1u << 16;
    GateSchedule schedule = GateSchedule::Iid;
    unsigned max_threads = 0; // 0 = hardware concurrency

    void validate() const;
};

/// One trial: the two selected channels carry +-1, the blocked ones 0.
/// gate is the settings-pair index 2*(i-1)+(j-1); the label is 11/12/21/22.
struct TrialRecord {
    std::int8_t a1, a2, b1, b2;
    std::uint8_t gate;
};

inline int gate_label(int gate_index) { return 11 + 10 * (gate_index / 2) + gate_index % 2; }

struct TrialLog {
    std::vector<TrialRecord> records;
    std::uint64_t seed = 0;
    std::uint32_t batch_size = 0;
    GateSchedule schedule = GateSchedule::Iid;
};

/// Runs the gated experiment. Deterministic in (seed, trials, batch_size,
/// schedule): batches draw from substreams indexed by batch number, so the
/// log is byte-identical no matter how many threads execute it.
TrialLog run_experiment(const McConfig& config);

/// CSV with header k,eta,a1,a2,b1,b2; k counts from 1, eta in {11,12,21,22}.
void write_csv(const TrialLog& log, std::ostream& out);

struct PairEstimate {
    std::uint64_t count = 0;     // N_ij: trials with this pair selected
    long long sum_products = 0;  // sum of A*B over those trials (integer, so the
                                 // full/conditional consistency is exact)
    double full = 0;             // sum_products / M
    double full_se = 0;
    std::optional<double> cond;  // sum_products / N_ij, absent when N_ij = 0
    std::optional<double> cond_se;
};

struct McEstimate {
    std::uint64_t trials = 0;
    std::array<PairEstimate, 4> pairs;

    const PairEstimate& pair(int i, int j) const { return pairs[CondTableFamily::index(i, j)]; }
    double gate_freq(int i, int j) const {
        return static_cast<double>(pair(i, j).count) / static_cast<double>(trials);
    }
    /// Conditional estimate, or Error(EmptyCell) when that pair never fired.
    double cond_or_fail(int i, int j) const;
};

McEstimate estimate(const TrialLog& log);

struct McChshReport {
    ChshReport full;        // judged against 2
    ChshReport conditional; // judged against 4 and 8
};

McChshReport chsh_from_estimates(const McEstimate& est);

/// The four-sensor device configuration: one A-sensor and one B-sensor are
/// powered per poll (uniform random switching), unpowered sensors report the
/// default 0. Identical in law to the gated experiment above; callers swap in
/// their own outcome tables.
McConfig sensor_device_preset();

} // namespace chsh
