#include "rtasim/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rtasim {

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::Uora:
        return "uora";
    case Algorithm::Cra:
        return "cra";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name)
{
    if (name == "uora" || name == "UORA") {
        return Algorithm::Uora;
    }
    if (name == "cra" || name == "CRA") {
        return Algorithm::Cra;
    }
    return std::nullopt;
}

int ocw_from_exponent(int exponent)
{
    if (exponent < 0 || exponent > 30) {
        throw ConfigError("OCW exponent must be in [0, 30]");
    }
    return (1 << exponent) - 1;
}

SimConfig validate_config(const SimConfig& cfg)
{
    auto fail = [](const std::string& what) { throw ConfigError(what); };

    if (cfg.f_ra < 1) {
        fail("f_ra must be ≥ 1");
    }
    if (cfg.f_max < 1) {
        fail("f_max must be ≥ 1");
    }
    if (cfg.f_ra > cfg.f_max) {
        std::ostringstream os;
        os << "f_ra exceeds f_max (" << cfg.f_ra << " > " << cfg.f_max << ")";
        fail(os.str());
    }
    if (cfg.n_stations < 0) {
        fail("n_stations must be ≥ 0");
    }
    if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
        fail("lambda must be > 0");
    }
    if (!(cfg.slot_duration > 0.0) || !std::isfinite(cfg.slot_duration)) {
        fail("slot_duration must be > 0");
    }
    if (!(cfg.deadline > 0.0) || !std::isfinite(cfg.deadline)) {
        fail("deadline must be > 0");
    }
    if (cfg.ocw_min < 0) {
        fail("ocw_min must be ≥ 0");
    }
    if (cfg.ocw_min > cfg.ocw_max) {
        fail("ocw_min exceeds ocw_max");
    }
    if (cfg.horizon_slots < 1) {
        fail("horizon_slots must be ≥ 1");
    }
    if (cfg.warmup_slots < 0) {
        fail("warmup_slots must be ≥ 0");
    }
    if (cfg.warmup_slots >= cfg.horizon_slots) {
        fail("warmup_slots must be < horizon_slots");
    }
    return cfg;
}

bool SlotSchedule::is_random_access(RuIndex ru) const
{
    return std::find(ra_rus.begin(), ra_rus.end(), ru) != ra_rus.end();
}

std::optional<StationId> SlotSchedule::assignee(RuIndex ru) const
{
    for (const auto& a : det_assignments) {
        if (a.ru == ru) {
            return a.station;
        }
    }
    return std::nullopt;
}

std::optional<RuIndex> SlotSchedule::assigned_ru(StationId station) const
{
    for (const auto& a : det_assignments) {
        if (a.station == station) {
            return a.ru;
        }
    }
    return std::nullopt;
}

void check_schedule(const SlotSchedule& schedule, int f_max)
{
    if (schedule.allocated() > f_max) {
        throw std::logic_error("schedule allocates more than f_max RUs");
    }
    std::vector<RuIndex> rus = schedule.ra_rus;
    std::vector<StationId> stations;
    for (const auto& a : schedule.det_assignments) {
        rus.push_back(a.ru);
        stations.push_back(a.station);
    }
    std::sort(rus.begin(), rus.end());
    if (std::adjacent_find(rus.begin(), rus.end()) != rus.end()) {
        throw std::logic_error("RU listed twice in schedule");
    }
    if (!rus.empty() && (rus.front() < 0 || rus.back() >= f_max)) {
        throw std::logic_error("RU index outside [0, f_max)");
    }
    std::sort(stations.begin(), stations.end());
    if (std::adjacent_find(stations.begin(), stations.end()) != stations.end()) {
        throw std::logic_error("station assigned two deterministic RUs");
    }
}

const RuResult* SlotOutcome::find(RuIndex ru) const
{
    auto it = std::lower_bound(per_ru.begin(), per_ru.end(), ru,
                               [](const RuResult& r, RuIndex v) { return r.ru < v; });
    if (it == per_ru.end() || it->ru != ru) {
        return nullptr;
    }
    return &*it;
}

void SlotResolver::resolve(const SlotSchedule& schedule,
                           std::span<const TransmissionIntent> intents,
                           SlotOutcome& out)
{
    out.per_ru.clear();
    out.had_ra_collision = false;

    RuIndex max_ru = -1;
    for (RuIndex ru : schedule.ra_rus) {
        max_ru = std::max(max_ru, ru);
    }
    for (const auto& a : schedule.det_assignments) {
        max_ru = std::max(max_ru, a.ru);
    }
    const auto width = static_cast<std::size_t>(max_ru + 1);
    rus_.assign(width, RuSlot{});
    for (RuIndex ru : schedule.ra_rus) {
        rus_[static_cast<std::size_t>(ru)].owner = kRandomAccess;
    }
    for (const auto& a : schedule.det_assignments) {
        rus_[static_cast<std::size_t>(a.ru)].owner = a.station;
    }

    ++epoch_;
    for (const auto& intent : intents) {
        const auto st = static_cast<std::size_t>(intent.station);
        if (intent.station < 0) {
            throw std::logic_error("negative station id in transmission intent");
        }
        if (st >= stamp_.size()) {
            stamp_.resize(st + 1, 0);
        }
        if (stamp_[st] == epoch_) {
            throw std::logic_error("station holds two transmission intents in one slot");
        }
        stamp_[st] = epoch_;

        const auto idx = static_cast<std::size_t>(intent.ru);
        const bool in_range = intent.ru >= 0 && idx < width;
        const StationId owner = in_range ? rus_[idx].owner : kUnallocated;
        const bool entitled = intent.kind == Access::RandomAccess ? owner == kRandomAccess
                                                                  : owner == intent.station;
        if (!entitled) {
            throw std::logic_error("transmission intent on an RU the station is not entitled to");
        }
        ++rus_[idx].count;
        rus_[idx].last = intent.station;
    }

    auto emit = [&](RuIndex ru, bool random_access) {
        const auto& slot = rus_[static_cast<std::size_t>(ru)];
        RuResult r{ru, RuState::Idle, -1};
        if (slot.count == 1) {
            r.state = RuState::Success;
            r.station = slot.last;
        } else if (slot.count >= 2) {
            r.state = RuState::Collision;
            if (random_access) {
                out.had_ra_collision = true;
            }
        }
        out.per_ru.push_back(r);
    };
    for (RuIndex ru : schedule.ra_rus) {
        emit(ru, true);
    }
    for (const auto& a : schedule.det_assignments) {
        emit(a.ru, false);
    }
    auto by_ru = [](const RuResult& a, const RuResult& b) { return a.ru < b.ru; };
    if (!std::is_sorted(out.per_ru.begin(), out.per_ru.end(), by_ru)) {
        std::sort(out.per_ru.begin(), out.per_ru.end(), by_ru);
    }
}

SlotOutcome resolve_slot(const SlotSchedule& schedule, std::span<const TransmissionIntent> intents)
{
    SlotResolver resolver;
    SlotOutcome out;
    resolver.resolve(schedule, intents, out);
    return out;
}

}  // namespace rtasim
