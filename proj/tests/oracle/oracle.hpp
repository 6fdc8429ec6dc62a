#pragma once

// Reference models used only by the tests. Nothing here calls into the
// simulator's protocol code; each model restates the rules on its own.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtasim/model.hpp"

namespace rtasim::oracle {

class SingularChain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// E[boundary - t] for a frame generated at t inside a slot, where the
/// generation time is exponential from the slot start conditioned on
/// landing in the slot. Computed by quadrature.
double mean_residual_in_slot(double lambda, double slot_duration);

/// Same quantity in closed form: slot - 1/lambda + slot / (e^{lambda slot} - 1).
double mean_residual_closed_form(double lambda, double slot_duration);

struct SingleStationLaw {
    double mean = 0.0;           // seconds
    double mean_residual = 0.0;  // seconds
    std::string description;
};

/// N = 1 under CRA: every frame goes out in the first slot it is eligible
/// for, so delay = slot + residual. Throws std::invalid_argument otherwise.
SingleStationLaw single_station_delay_law(const SimConfig& cfg);

/**
 * A finite Markov chain over slot-start states with per-state rewards.
 * Mean frame delay = slot * (pi . pending) / (pi . delivered) + residual.
 */
struct ChainSpec {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> transition;  // row-stochastic
    std::vector<double> pending;    // frames waiting at the start of the slot
    std::vector<double> delivered;  // expected deliveries during the slot
    double slot_duration = 0.0;
    double mean_residual = 0.0;

    [[nodiscard]] std::size_t size() const { return transition.size(); }
};

/// Throws std::invalid_argument on a malformed spec, SingularChain when
/// the stationary distribution is not unique.
std::vector<double> stationary_distribution(const ChainSpec& spec);

/// Stationary mean frame delay, seconds.
double solve_chain(const ChainSpec& spec);

/// Relabels the states: new state i is old state perm[i].
ChainSpec permuted(const ChainSpec& spec, std::span<const std::size_t> perm);

/// Exact slot-level chains of the two protocols for tiny configurations.
ChainSpec build_cra_chain(const SimConfig& cfg);
ChainSpec build_uora_chain(const SimConfig& cfg);

}  // namespace rtasim::oracle
