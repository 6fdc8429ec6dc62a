#include "rtasim/uora.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtasim {

ObeState make_obe_state(int ocw_min, int ocw_max)
{
    if (ocw_min < 0 || ocw_min > ocw_max) {
        throw std::invalid_argument("OCW bounds must satisfy 0 <= ocw_min <= ocw_max");
    }
    return ObeState{0, ocw_min, ocw_min, ocw_max};
}

int draw_obo(int ocw, RandomStream& rng)
{
    if (ocw <= 1) {
        return 0;
    }
    return rng.uniform_int(0, ocw - 1);
}

void start_frame(ObeState& state, RandomStream& rng)
{
    state.obo = draw_obo(state.ocw, rng);
}

TriggerDecision on_trigger(ObeState& state, int num_ra_rus, RandomStream& rng)
{
    if (num_ra_rus < 1) {
        throw std::invalid_argument("trigger must advertise at least one RA RU");
    }
    if (state.obo > num_ra_rus) {
        state.obo -= num_ra_rus;
        return {};
    }
    state.obo = 0;
    const int position = num_ra_rus == 1 ? 0 : rng.uniform_int(0, num_ra_rus - 1);
    return {true, position};
}

void on_result(ObeState& state, TxResult result, RandomStream& rng)
{
    if (result == TxResult::Success) {
        state.ocw = state.ocw_min;
        state.obo = 0;
        return;
    }
    state.ocw = static_cast<int>(
        std::min<long long>(2LL * state.ocw + 1, state.ocw_max));
    state.obo = draw_obo(state.ocw, rng);
}

}  // namespace rtasim
