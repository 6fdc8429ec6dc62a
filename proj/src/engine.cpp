#include "rtasim/engine.hpp"

#include <algorithm>

namespace rtasim {

Engine::Engine(const SimConfig& cfg, RunOptions options)
    : cfg_(validate_config(cfg)), options_(std::move(options)), ap_rng_(cfg.seed, 0),
      arrivals_(cfg.n_stations, cfg.lambda, cfg.slot_duration),
      cra_(make_cra_state(cfg.n_stations, cfg.f_ra, cfg.f_max)),
      metrics_(cfg.slot_duration, cfg.deadline, cfg.f_max)
{
    const auto n = static_cast<std::size_t>(cfg_.n_stations);
    rngs_.reserve(n);
    stations_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        rngs_.emplace_back(cfg_.seed, s + 1);
        if (cfg_.algorithm == Algorithm::Uora) {
            stations_[s].backoff = make_obe_state(cfg_.ocw_min, cfg_.ocw_max);
        }
    }
    // As if every station had just delivered a frame at t = 0.
    for (std::size_t s = 0; s < n; ++s) {
        arrivals_.schedule(static_cast<StationId>(s), 0, rngs_[s]);
    }
}

std::uint64_t Engine::not_yet_eligible() const
{
    // Generated before now_ but not promoted yet.
    std::uint64_t waiting = 0;
    for (StationId s = 0; s < arrivals_.size(); ++s) {
        const auto& next = arrivals_.state(s).next_arrival;
        if (next && next->slot < now_) {
            ++waiting;
        }
    }
    return waiting;
}

std::uint64_t Engine::frames_generated() const
{
    return promoted_total_ + not_yet_eligible();
}

void Engine::log_slots(const SlotLogEntry& entry, SlotIndex count)
{
    // Only the part of [entry.slot, entry.slot + count) past warm-up counts.
    const SlotIndex first = std::max(entry.slot, cfg_.warmup_slots);
    const SlotIndex last = entry.slot + count;
    if (first >= last) {
        return;
    }
    metrics_.add_slots(entry, static_cast<std::uint64_t>(last - first));
    if (options_.keep_slot_log) {
        for (SlotIndex k = first; k < last; ++k) {
            SlotLogEntry e = entry;
            e.slot = k;
            slot_log_.push_back(e);
        }
    }
}

void Engine::skip_idle_slots()
{
    if (!pending_.empty() || (have_prev_ && outcome_.had_ra_collision)) {
        return;
    }
    SlotIndex until = cfg_.horizon_slots;
    if (const auto next = arrivals_.next_eligible_slot()) {
        until = std::min(until, *next);
    }
    if (until <= now_) {
        return;
    }
    // Nothing can be sent before `until`: every slot is RA-only and idle.
    log_slots({now_, cfg_.f_ra, 0, false}, until - now_);
    cra_.mode = CraMode::Quiet;
    outcome_.per_ru.clear();
    for (RuIndex ru = 0; ru < cfg_.f_ra; ++ru) {
        outcome_.per_ru.push_back({ru, RuState::Idle, -1});
    }
    outcome_.had_ra_collision = false;
    have_prev_ = true;
    now_ = until;
}

void Engine::build_schedule()
{
    if (cfg_.algorithm == Algorithm::Cra) {
        next_schedule(cra_, have_prev_ ? &outcome_ : nullptr, now_, ap_rng_, schedule_);
        return;
    }
    if (static_cast<int>(schedule_.ra_rus.size()) != cfg_.f_ra) {
        schedule_.clear();
        for (RuIndex ru = 0; ru < cfg_.f_ra; ++ru) {
            schedule_.ra_rus.push_back(ru);
        }
    }
    schedule_.slot_index = now_;
}

void Engine::collect_intents()
{
    intents_.clear();
    const int num_ra = static_cast<int>(schedule_.ra_rus.size());
    for (StationId s : pending_) {
        auto& rng = rngs_[static_cast<std::size_t>(s)];
        if (cfg_.algorithm == Algorithm::Uora) {
            auto& backoff = stations_[static_cast<std::size_t>(s)].backoff;
            const auto d = on_trigger(backoff, num_ra, rng);
            if (d.transmit) {
                intents_.push_back({s, schedule_.ra_rus[static_cast<std::size_t>(d.position)],
                                    Access::RandomAccess});
            }
        } else if (auto intent = cra_station_intent(s, schedule_, true, rng)) {
            intents_.push_back(*intent);
        }
    }
}

void Engine::apply_outcome()
{
    delivered_now_.clear();
    const double slot = cfg_.slot_duration;
    const SlotIndex end_boundary = now_ + 1;

    for (const auto& intent : intents_) {
        const auto idx = static_cast<std::size_t>(intent.station);
        auto& st = stations_[idx];
        ++st.attempts;
        const RuResult* r = outcome_.find(intent.ru);
        if (r->state == RuState::Success) {
            const SlotTime gen = arrivals_.deliver(intent.station);
            FrameRecord rec;
            rec.station = intent.station;
            rec.generated_at = gen.seconds(slot);
            rec.delivered_at = static_cast<double>(end_boundary) * slot;
            rec.delay = static_cast<double>(end_boundary - gen.slot) * slot - gen.offset;
            rec.attempts = st.attempts;
            delivered_now_.push_back(rec);

            st.pending = false;
            st.attempts = 0;
            if (cfg_.algorithm == Algorithm::Uora) {
                on_result(st.backoff, TxResult::Success, rngs_[idx]);
            }
            arrivals_.schedule(intent.station, end_boundary, rngs_[idx]);
        } else if (cfg_.algorithm == Algorithm::Uora) {
            on_result(st.backoff, TxResult::Collision, rngs_[idx]);
        }
    }

    if (!delivered_now_.empty()) {
        std::erase_if(pending_, [this](StationId s) {
            return !stations_[static_cast<std::size_t>(s)].pending;
        });
        delivered_total_ += delivered_now_.size();
        if (now_ >= cfg_.warmup_slots) {
            for (const auto& rec : delivered_now_) {
                metrics_.add_delivery(rec.delay);
            }
            if (options_.keep_records) {
                records_.insert(records_.end(), delivered_now_.begin(), delivered_now_.end());
            }
        }
    }
}

void Engine::step_slot()
{
    const auto first_new = pending_.size();
    arrivals_.frames_becoming_pending(now_, pending_);
    for (auto i = first_new; i < pending_.size(); ++i) {
        const auto idx = static_cast<std::size_t>(pending_[i]);
        stations_[idx].pending = true;
        stations_[idx].attempts = 0;
        if (cfg_.algorithm == Algorithm::Uora) {
            start_frame(stations_[idx].backoff, rngs_[idx]);
        }
    }
    promoted_total_ += pending_.size() - first_new;

    build_schedule();
    collect_intents();
    resolver_.resolve(schedule_, intents_, outcome_);
    have_prev_ = true;
    apply_outcome();

    log_slots({now_, static_cast<int>(schedule_.ra_rus.size()),
               static_cast<int>(schedule_.det_assignments.size()), outcome_.had_ra_collision},
              1);
    if (options_.on_slot) {
        options_.on_slot(SlotTrace{schedule_, intents_, outcome_, delivered_now_});
    }
    ++now_;
}

void Engine::run()
{
    while (now_ < cfg_.horizon_slots) {
        if (options_.fast_forward) {
            skip_idle_slots();
            if (now_ >= cfg_.horizon_slots) {
                break;
            }
        }
        step_slot();
    }
}

RunMetrics run(const SimConfig& cfg)
{
    Engine engine(cfg);
    engine.run();
    return engine.metrics();
}

}  // namespace rtasim
