#include "rtasim/cra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rtasim/uora.hpp"

namespace rtasim {

CraState make_cra_state(int n_stations, int f_ra, int f_max)
{
    if (n_stations < 0 || f_ra < 1 || f_ra > f_max) {
        throw std::invalid_argument("CRA needs n >= 0 and 1 <= f_ra <= f_max");
    }
    CraState state;
    state.n_stations = n_stations;
    state.f_ra = f_ra;
    state.f_max = f_max;
    return state;
}

std::vector<StationId> shuffle_order(int n, RandomStream& rng)
{
    std::vector<StationId> order(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    return order;
}

void next_schedule(CraState& state, const SlotOutcome* prev, SlotIndex slot, RandomStream& rng,
                   SlotSchedule& out)
{
    out.clear();
    out.slot_index = slot;
    for (RuIndex ru = 0; ru < state.f_ra; ++ru) {
        out.ra_rus.push_back(ru);
    }

    const bool collision = prev != nullptr && prev->had_ra_collision;
    if (!collision || state.n_stations == 0) {
        state.mode = CraMode::Quiet;
        return;
    }

    if (state.mode == CraMode::Quiet || state.cursor >= state.n_stations) {
        state.order = shuffle_order(state.n_stations, rng);
        state.cursor = 0;
    }
    state.mode = CraMode::Cycling;

    const int group = std::min(state.group_capacity(), state.n_stations - state.cursor);
    for (int i = 0; i < group; ++i) {
        const auto station = state.order[static_cast<std::size_t>(state.cursor + i)];
        out.det_assignments.push_back({state.f_ra + i, station});
    }
    state.cursor += group;
}

SlotSchedule next_schedule(CraState& state, const SlotOutcome* prev, SlotIndex slot,
                           RandomStream& rng)
{
    SlotSchedule out;
    next_schedule(state, prev, slot, rng, out);
    return out;
}

std::optional<TransmissionIntent> cra_station_intent(StationId station,
                                                     const SlotSchedule& schedule,
                                                     bool has_pending, RandomStream& rng)
{
    if (!has_pending) {
        return std::nullopt;
    }
    if (const auto ru = schedule.assigned_ru(station)) {
        return TransmissionIntent{station, *ru, Access::Deterministic};
    }
    if (schedule.ra_rus.empty()) {
        return std::nullopt;
    }
    ObeState zero_window = make_obe_state(0, 0);
    const auto decision = on_trigger(zero_window, static_cast<int>(schedule.ra_rus.size()), rng);
    return TransmissionIntent{station, schedule.ra_rus[static_cast<std::size_t>(decision.position)],
                              Access::RandomAccess};
}

}  // namespace rtasim
