#include "rtasim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace rtasim {

namespace {

constexpr double kZ95 = 1.959963984540054;

}  // namespace

WilsonInterval binomial_ci(std::uint64_t successes, std::uint64_t trials)
{
    if (trials == 0) {
        throw std::invalid_argument("binomial_ci needs at least one trial");
    }
    if (successes > trials) {
        throw std::invalid_argument("binomial_ci: successes exceed trials");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {center, half};
}

RunMetrics::RunMetrics(double slot_duration, double deadline, int f_max)
    : slot_duration_(slot_duration), deadline_(deadline), f_max_(f_max)
{
}

void RunMetrics::add_delivery(double delay)
{
    ++n_delivered_;
    if (delay > deadline_) {
        ++n_late_;
    }
    delay_sum_ps_ += static_cast<DelaySumPs>(std::llround(delay * 1e12));
    const auto bin = static_cast<std::size_t>(std::max(0.0, std::floor(delay / slot_duration_)));
    if (bin >= histogram_.size()) {
        histogram_.resize(bin + 1, 0);
    }
    ++histogram_[bin];
}

void RunMetrics::add_slots(const SlotLogEntry& entry, std::uint64_t count)
{
    n_slots_ += count;
    const int free = f_max_ - entry.ra_count - entry.det_count;
    free_rus_ += static_cast<std::uint64_t>(std::max(free, 0)) * count;
    if (entry.det_count > 0) {
        cycle_slots_ += count;
    }
}

void RunMetrics::merge(const RunMetrics& other)
{
    if (slot_duration_ != other.slot_duration_ || deadline_ != other.deadline_ ||
        f_max_ != other.f_max_) {
        throw std::invalid_argument("merging metrics of incompatible configurations");
    }
    n_delivered_ += other.n_delivered_;
    n_late_ += other.n_late_;
    delay_sum_ps_ += other.delay_sum_ps_;
    if (other.histogram_.size() > histogram_.size()) {
        histogram_.resize(other.histogram_.size(), 0);
    }
    for (std::size_t i = 0; i < other.histogram_.size(); ++i) {
        histogram_[i] += other.histogram_[i];
    }
    n_slots_ += other.n_slots_;
    free_rus_ += other.free_rus_;
    cycle_slots_ += other.cycle_slots_;
}

std::optional<double> RunMetrics::mean_delay() const
{
    if (n_delivered_ == 0) {
        return std::nullopt;
    }
    return static_cast<double>(delay_sum_ps_) / static_cast<double>(n_delivered_) * 1e-12;
}

std::optional<double> RunMetrics::p_late() const
{
    if (n_delivered_ == 0) {
        return std::nullopt;
    }
    return static_cast<double>(n_late_) / static_cast<double>(n_delivered_);
}

std::optional<WilsonInterval> RunMetrics::p_late_interval() const
{
    if (n_delivered_ == 0) {
        return std::nullopt;
    }
    return binomial_ci(n_late_, n_delivered_);
}

std::optional<double> RunMetrics::p_late_ci95() const
{
    if (auto ci = p_late_interval()) {
        return ci->half_width;
    }
    return std::nullopt;
}

double RunMetrics::non_rta_share() const
{
    if (n_slots_ == 0 || f_max_ == 0) {
        return 0.0;
    }
    return static_cast<double>(free_rus_) /
           static_cast<double>(n_slots_ * static_cast<std::uint64_t>(f_max_));
}

double RunMetrics::slots_in_cycle_fraction() const
{
    if (n_slots_ == 0) {
        return 0.0;
    }
    return static_cast<double>(cycle_slots_) / static_cast<double>(n_slots_);
}

RunMetrics aggregate(std::span<const FrameRecord> records, std::span<const SlotLogEntry> slot_log,
                     const SimConfig& cfg)
{
    RunMetrics m(cfg.slot_duration, cfg.deadline, cfg.f_max);
    for (const auto& r : records) {
        m.add_delivery(r.delay);
    }
    for (const auto& e : slot_log) {
        m.add_slots(e);
    }
    return m;
}

ReplicationSummary summarize_replications(std::span<const double> values)
{
    if (values.size() < 2) {
        throw std::invalid_argument("need at least two replications for a confidence interval");
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    return {mean, t * sd / std::sqrt(n), values.size()};
}

}  // namespace rtasim
