#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rtasim/cra.hpp"
#include "rtasim/model.hpp"
#include "rtasim/random.hpp"
#include "rtasim/stats.hpp"
#include "rtasim/traffic.hpp"
#include "rtasim/uora.hpp"

namespace rtasim {

/// What happened in one simulated slot, handed to RunOptions::on_slot.
struct SlotTrace {
    const SlotSchedule& schedule;
    std::span<const TransmissionIntent> intents;
    const SlotOutcome& outcome;
    std::span<const FrameRecord> delivered;
};

struct RunOptions {
    /// Jump over slots in which no station can transmit. The metrics are
    /// identical either way; on_slot only sees the slots actually stepped.
    bool fast_forward = true;
    /// Keep post-warm-up FrameRecords and slot log entries in memory.
    bool keep_records = false;
    bool keep_slot_log = false;
    std::function<void(const SlotTrace&)> on_slot;
};

/**
 * Slotted simulation of the uplink. Each slot: promote frames generated
 * before the slot start, build the schedule, collect one intent per
 * transmitting station, resolve the RUs, then deliver successes and
 * update back-off state.
 *
 * Station s draws from its own stream (seed, s + 1); the AP uses
 * (seed, 0). Two engines built from equal configs evolve identically.
 */
class Engine {
public:
    explicit Engine(const SimConfig& cfg, RunOptions options = {});

    /// Simulates exactly one slot.
    void step_slot();

    /// Runs to the horizon.
    void run();

    [[nodiscard]] SlotIndex now_slot() const { return now_; }
    [[nodiscard]] bool finished() const { return now_ >= cfg_.horizon_slots; }
    [[nodiscard]] const SimConfig& config() const { return cfg_; }

    /// Post-warm-up metrics so far.
    [[nodiscard]] const RunMetrics& metrics() const { return metrics_; }
    [[nodiscard]] const std::vector<FrameRecord>& records() const { return records_; }
    [[nodiscard]] const std::vector<SlotLogEntry>& slot_log() const { return slot_log_; }

    /// Frames generated before the current time, delivered ones and those
    /// still waiting, counted from t = 0 including warm-up.
    [[nodiscard]] std::uint64_t frames_generated() const;
    [[nodiscard]] std::uint64_t frames_delivered() const { return delivered_total_; }
    [[nodiscard]] std::uint64_t frames_pending() const { return pending_.size() + not_yet_eligible(); }

    [[nodiscard]] const CraState& cra_state() const { return cra_; }
    [[nodiscard]] const ObeState& backoff(StationId s) const
    {
        return stations_[static_cast<std::size_t>(s)].backoff;
    }
    [[nodiscard]] const ArrivalProcess& arrivals() const { return arrivals_; }

private:
    struct Station {
        ObeState backoff;
        int attempts = 0;
        bool pending = false;
    };

    std::uint64_t not_yet_eligible() const;
    void skip_idle_slots();
    void build_schedule();
    void collect_intents();
    void apply_outcome();
    void log_slots(const SlotLogEntry& entry, SlotIndex count);

    SimConfig cfg_;
    RunOptions options_;

    SlotIndex now_ = 0;
    RandomStream ap_rng_;
    std::vector<RandomStream> rngs_;
    std::vector<Station> stations_;
    std::vector<StationId> pending_;
    ArrivalProcess arrivals_;
    CraState cra_;

    SlotSchedule schedule_;
    std::vector<TransmissionIntent> intents_;
    SlotResolver resolver_;
    SlotOutcome outcome_;
    bool have_prev_ = false;
    std::vector<FrameRecord> delivered_now_;

    std::uint64_t promoted_total_ = 0;
    std::uint64_t delivered_total_ = 0;

    RunMetrics metrics_;
    std::vector<FrameRecord> records_;
    std::vector<SlotLogEntry> slot_log_;
};

/// Validates cfg and runs it to the horizon.
RunMetrics run(const SimConfig& cfg);

}  // namespace rtasim
