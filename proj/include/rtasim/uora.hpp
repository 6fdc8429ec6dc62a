#pragma once

#include "rtasim/random.hpp"

namespace rtasim {

/// Per-station OFDMA back-off state.
struct ObeState {
    int obo = 0;
    int ocw = 0;
    int ocw_min = 0;
    int ocw_max = 0;

    friend bool operator==(const ObeState&, const ObeState&) = default;
};

ObeState make_obe_state(int ocw_min, int ocw_max);

/// Uniform draw from {0, ..., ocw - 1}; 0 when ocw <= 1.
int draw_obo(int ocw, RandomStream& rng);

/// Draws a fresh OBO from the current OCW when a new frame arrives.
void start_frame(ObeState& state, RandomStream& rng);

struct TriggerDecision {
    bool transmit = false;
    int position = -1;  // index into the trigger's RA RU list when transmitting
};

/**
 * Reaction to a trigger frame advertising num_ra_rus RA RUs. An OBO
 * greater than num_ra_rus is decremented by that amount; otherwise the
 * station picks one of the RA RUs uniformly and its OBO is consumed.
 */
TriggerDecision on_trigger(ObeState& state, int num_ra_rus, RandomStream& rng);

enum class TxResult { Success, Collision };

/// Success resets OCW to OCW_MIN. Collision grows it to min(2 * OCW + 1,
/// OCW_MAX) and redraws the OBO right away.
void on_result(ObeState& state, TxResult result, RandomStream& rng);

}  // namespace rtasim
