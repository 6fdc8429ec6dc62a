#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rtasim {

using StationId = std::int32_t;
using RuIndex = std::int32_t;
using SlotIndex = std::int64_t;

enum class Algorithm { Uora, Cra };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// OCW = 2^exponent - 1.
int ocw_from_exponent(int exponent);

/// Raised by validate_config; the message names the violated invariant.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Full parameterization of one simulation run.
 *
 * Times are in seconds. Slots are numbered from 0; slot k covers
 * [k * slot_duration, (k + 1) * slot_duration).
 */
struct SimConfig {
    int n_stations = 0;
    int f_ra = 6;
    int f_max = 18;
    double lambda = 200.0;
    double slot_duration = 250e-6;
    Algorithm algorithm = Algorithm::Cra;
    int ocw_min = 7;   // EOCW_min = 3
    int ocw_max = 31;  // EOCW_max = 5
    double deadline = 1e-3;
    SlotIndex horizon_slots = 40'000'000;
    SlotIndex warmup_slots = 400'000;
    std::uint64_t seed = 1;
};

/// Returns a copy of cfg if every invariant holds, throws ConfigError otherwise.
SimConfig validate_config(const SimConfig& cfg);

struct DeterministicAssignment {
    RuIndex ru = 0;
    StationId station = 0;

    friend bool operator==(const DeterministicAssignment&, const DeterministicAssignment&) = default;
};

/**
 * The AP's RU allocation for one slot, as advertised in the trigger frame.
 * RUs not listed are left to non-RTA traffic.
 */
struct SlotSchedule {
    SlotIndex slot_index = 0;
    std::vector<RuIndex> ra_rus;
    std::vector<DeterministicAssignment> det_assignments;

    [[nodiscard]] int allocated() const
    {
        return static_cast<int>(ra_rus.size() + det_assignments.size());
    }
    [[nodiscard]] bool is_random_access(RuIndex ru) const;
    [[nodiscard]] std::optional<StationId> assignee(RuIndex ru) const;
    [[nodiscard]] std::optional<RuIndex> assigned_ru(StationId station) const;

    void clear()
    {
        ra_rus.clear();
        det_assignments.clear();
    }

    friend bool operator==(const SlotSchedule&, const SlotSchedule&) = default;
};

/// Throws std::logic_error if the schedule breaks its own invariants.
void check_schedule(const SlotSchedule& schedule, int f_max);

enum class Access { RandomAccess, Deterministic };

struct TransmissionIntent {
    StationId station = 0;
    RuIndex ru = 0;
    Access kind = Access::RandomAccess;

    friend bool operator==(const TransmissionIntent&, const TransmissionIntent&) = default;
};

enum class RuState { Idle, Success, Collision };

struct RuResult {
    RuIndex ru = 0;
    RuState state = RuState::Idle;
    StationId station = -1;  // valid only for Success

    friend bool operator==(const RuResult&, const RuResult&) = default;
};

/// Per-RU view of a finished slot, for every RU the schedule allocated.
struct SlotOutcome {
    std::vector<RuResult> per_ru;  // ascending RU index
    bool had_ra_collision = false;

    [[nodiscard]] const RuResult* find(RuIndex ru) const;

    friend bool operator==(const SlotOutcome&, const SlotOutcome&) = default;
};

/**
 * Collision resolution for one slot. Keeps scratch buffers so the engine
 * can resolve millions of slots without reallocating.
 */
class SlotResolver {
public:
    /// Throws std::logic_error on a duplicate station or an intent the
    /// schedule does not entitle.
    void resolve(const SlotSchedule& schedule,
                 std::span<const TransmissionIntent> intents,
                 SlotOutcome& out);

private:
    static constexpr StationId kUnallocated = -1;
    static constexpr StationId kRandomAccess = -2;

    struct RuSlot {
        StationId owner = kUnallocated;  // kRandomAccess or the assignee
        int count = 0;
        StationId last = -1;
    };

    std::vector<RuSlot> rus_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
};

SlotOutcome resolve_slot(const SlotSchedule& schedule, std::span<const TransmissionIntent> intents);

/// A delivered frame. delivered_at is the end of the slot that carried it.
struct FrameRecord {
    StationId station = 0;
    double generated_at = 0.0;
    double delivered_at = 0.0;
    double delay = 0.0;  // computed slot-relative, exact up to one rounding
    int attempts = 0;
};

}  // namespace rtasim
