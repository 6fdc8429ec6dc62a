#include "rtasim/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace rtasim {

double schedule_next_arrival(double now, double lambda, RandomStream& rng)
{
    return now + rng.exponential(lambda);
}

SlotTime schedule_next_arrival(SlotIndex boundary, double lambda, double slot_duration,
                               RandomStream& rng)
{
    const double wait = rng.exponential(lambda);
    const double whole = std::floor(wait / slot_duration);
    double offset = wait - whole * slot_duration;
    auto slot = boundary + static_cast<SlotIndex>(whole);
    if (offset < 0.0) {
        offset += slot_duration;
        --slot;
    } else if (offset >= slot_duration) {
        offset -= slot_duration;
        ++slot;
    }
    return {slot, offset};
}

ArrivalProcess::ArrivalProcess(int n_stations, double lambda, double slot_duration)
    : lambda_(lambda), slot_duration_(slot_duration),
      states_(static_cast<std::size_t>(n_stations))
{
}

void ArrivalProcess::schedule(StationId station, SlotIndex boundary, RandomStream& rng)
{
    schedule_at(station, schedule_next_arrival(boundary, lambda_, slot_duration_, rng));
}

void ArrivalProcess::schedule_at(StationId station, SlotTime at)
{
    auto& st = states_.at(static_cast<std::size_t>(station));
    if (st.pending || st.next_arrival) {
        throw std::logic_error("station already has an outstanding frame");
    }
    st.next_arrival = at;
    due_.push({at.slot + 1, station});
}

void ArrivalProcess::frames_becoming_pending(SlotIndex slot, std::vector<StationId>& out)
{
    while (!due_.empty() && due_.top().eligible_slot <= slot) {
        const StationId s = due_.top().station;
        due_.pop();
        auto& st = states_[static_cast<std::size_t>(s)];
        st.pending = st.next_arrival;
        st.next_arrival.reset();
        out.push_back(s);
    }
}

SlotTime ArrivalProcess::deliver(StationId station)
{
    auto& st = states_.at(static_cast<std::size_t>(station));
    if (!st.pending) {
        throw std::logic_error("delivering a station with no pending frame");
    }
    const SlotTime generated = *st.pending;
    st.pending.reset();
    return generated;
}

std::optional<SlotIndex> ArrivalProcess::next_eligible_slot() const
{
    if (due_.empty()) {
        return std::nullopt;
    }
    return due_.top().eligible_slot;
}

}  // namespace rtasim
