#pragma once

#include <optional>
#include <vector>

#include "rtasim/model.hpp"
#include "rtasim/random.hpp"

namespace rtasim {

enum class CraMode { Quiet, Cycling };

/**
 * AP-side state of the cyclic resource assignment scheduler.
 *
 * Every slot carries f_ra random-access RUs. A collision in RA starts a
 * cycle: the stations are shuffled and served f_max - f_ra at a time in
 * deterministic RUs, for as long as each slot still shows an RA collision.
 * A slot with collision-free RA ends the cycle. When the order runs out
 * while collisions persist, a new shuffle starts the next pass.
 */
struct CraState {
    CraMode mode = CraMode::Quiet;
    std::vector<StationId> order;
    int cursor = 0;
    int n_stations = 0;
    int f_ra = 1;
    int f_max = 1;

    [[nodiscard]] int group_capacity() const { return f_max - f_ra; }

    friend bool operator==(const CraState&, const CraState&) = default;
};

CraState make_cra_state(int n_stations, int f_ra, int f_max);

/// Uniformly random permutation of 0..n-1.
std::vector<StationId> shuffle_order(int n, RandomStream& rng);

/**
 * Builds the schedule of slot `slot` given the outcome of the previous
 * slot (nullptr before the first slot). RA RUs are 0..f_ra-1, the
 * deterministic RUs follow them.
 */
void next_schedule(CraState& state, const SlotOutcome* prev, SlotIndex slot, RandomStream& rng,
                   SlotSchedule& out);

SlotSchedule next_schedule(CraState& state, const SlotOutcome* prev, SlotIndex slot,
                           RandomStream& rng);

/**
 * A station with a deterministic RU uses only that RU. Any other station
 * with a pending frame contends in RA with OCW = 0, i.e. transmits at
 * once in a uniformly chosen RA RU.
 */
std::optional<TransmissionIntent> cra_station_intent(StationId station,
                                                     const SlotSchedule& schedule,
                                                     bool has_pending, RandomStream& rng);

}  // namespace rtasim
