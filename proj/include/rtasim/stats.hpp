#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rtasim/model.hpp"

namespace rtasim {

__extension__ typedef __int128 DelaySumPs;

/// Per-slot summary kept for the resource-share statistics.
struct SlotLogEntry {
    SlotIndex slot = 0;
    int ra_count = 0;
    int det_count = 0;
    bool had_ra_collision = false;

    friend bool operator==(const SlotLogEntry&, const SlotLogEntry&) = default;
};

/// Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double center = 0.0;
    double half_width = 0.0;

    [[nodiscard]] double lower() const { return center - half_width; }
    [[nodiscard]] double upper() const { return center + half_width; }
};

/// 95% Wilson interval of successes / trials. Throws std::invalid_argument
/// when trials == 0.
WilsonInterval binomial_ci(std::uint64_t successes, std::uint64_t trials);

/**
 * Delay and resource-share statistics of one run, or of several runs
 * merged together. All totals are integers (delays in picoseconds), so
 * merging is exact and order-independent.
 */
class RunMetrics {
public:
    RunMetrics() = default;
    RunMetrics(double slot_duration, double deadline, int f_max);

    void add_delivery(double delay);
    void add_slots(const SlotLogEntry& entry, std::uint64_t count = 1);

    /// Throws std::invalid_argument if the two were built with different
    /// slot duration, deadline or f_max.
    void merge(const RunMetrics& other);

    [[nodiscard]] std::uint64_t n_delivered() const { return n_delivered_; }
    [[nodiscard]] std::uint64_t n_late() const { return n_late_; }
    [[nodiscard]] std::uint64_t n_slots() const { return n_slots_; }

    /// Undefined (nullopt) without a delivered frame.
    [[nodiscard]] std::optional<double> mean_delay() const;
    [[nodiscard]] std::optional<double> p_late() const;
    [[nodiscard]] std::optional<WilsonInterval> p_late_interval() const;
    [[nodiscard]] std::optional<double> p_late_ci95() const;

    [[nodiscard]] double non_rta_share() const;
    [[nodiscard]] double slots_in_cycle_fraction() const;

    /// Bin i counts delays in [i * slot_duration, (i + 1) * slot_duration).
    [[nodiscard]] const std::vector<std::uint64_t>& delay_histogram() const { return histogram_; }
    [[nodiscard]] double bin_width() const { return slot_duration_; }
    [[nodiscard]] double deadline() const { return deadline_; }
    [[nodiscard]] int f_max() const { return f_max_; }

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;

private:
    double slot_duration_ = 0.0;
    double deadline_ = 0.0;
    int f_max_ = 0;

    std::uint64_t n_delivered_ = 0;
    std::uint64_t n_late_ = 0;
    DelaySumPs delay_sum_ps_ = 0;
    std::vector<std::uint64_t> histogram_;

    std::uint64_t n_slots_ = 0;
    std::uint64_t free_rus_ = 0;
    std::uint64_t cycle_slots_ = 0;
};

/// Folds the records and slot log of one run (warm-up already removed).
RunMetrics aggregate(std::span<const FrameRecord> records, std::span<const SlotLogEntry> slot_log,
                     const SimConfig& cfg);

/// Mean and Student-t 95% half-width across independent replications.
struct ReplicationSummary {
    double mean = 0.0;
    double ci95 = 0.0;
    std::size_t n = 0;
};

/// Needs at least two values.
ReplicationSummary summarize_replications(std::span<const double> values);

}  // namespace rtasim
