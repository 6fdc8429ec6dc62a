#pragma once

#include <optional>
#include <queue>
#include <vector>

#include "rtasim/model.hpp"
#include "rtasim/random.hpp"

namespace rtasim {

/// A point in time held as (slot, offset into that slot) so that delays
/// stay exact over long horizons. 0 <= offset < slot_duration.
struct SlotTime {
    SlotIndex slot = 0;
    double offset = 0.0;

    [[nodiscard]] double seconds(double slot_duration) const
    {
        return static_cast<double>(slot) * slot_duration + offset;
    }

    friend bool operator==(const SlotTime&, const SlotTime&) = default;
};

/// now + Exp(lambda).
double schedule_next_arrival(double now, double lambda, RandomStream& rng);

/// Slotted form: the draw starts at the boundary opening slot `boundary`.
SlotTime schedule_next_arrival(SlotIndex boundary, double lambda, double slot_duration,
                               RandomStream& rng);

struct ArrivalState {
    std::optional<SlotTime> next_arrival;
    std::optional<SlotTime> pending;  // generation time of the undelivered frame
};

/**
 * Closed-loop arrival process: each station holds one outstanding frame at
 * most, and the next one is generated an exponential time after delivery.
 *
 * A frame generated at time t becomes eligible at the first slot whose
 * start is strictly greater than t.
 */
class ArrivalProcess {
public:
    ArrivalProcess(int n_stations, double lambda, double slot_duration);

    /// Draws the next generation time of `station`, counting from the
    /// boundary that opens slot `boundary`.
    void schedule(StationId station, SlotIndex boundary, RandomStream& rng);

    /// Sets the next generation time explicitly.
    void schedule_at(StationId station, SlotTime at);

    /// Appends to `out` the stations whose next arrival precedes the start
    /// of `slot`, in (eligible slot, station id) order, and marks them pending.
    void frames_becoming_pending(SlotIndex slot, std::vector<StationId>& out);

    /// Clears the pending frame after delivery. Returns its generation time.
    SlotTime deliver(StationId station);

    /// First slot in which a not-yet-pending frame becomes eligible.
    [[nodiscard]] std::optional<SlotIndex> next_eligible_slot() const;

    [[nodiscard]] const ArrivalState& state(StationId station) const
    {
        return states_[static_cast<std::size_t>(station)];
    }
    [[nodiscard]] int size() const { return static_cast<int>(states_.size()); }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] double slot_duration() const { return slot_duration_; }

private:
    struct Due {
        SlotIndex eligible_slot;
        StationId station;
        bool operator>(const Due& o) const
        {
            return eligible_slot != o.eligible_slot ? eligible_slot > o.eligible_slot
                                                    : station > o.station;
        }
    };

    double lambda_;
    double slot_duration_;
    std::vector<ArrivalState> states_;
    std::priority_queue<Due, std::vector<Due>, std::greater<>> due_;
};

}  // namespace rtasim
