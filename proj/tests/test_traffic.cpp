#include <doctest.h>

#include <cmath>
#include <vector>

#include "rtasim/traffic.hpp"

using namespace rtasim;

namespace {
constexpr double kSlot = 250e-6;
}

TEST_CASE("exponential inter-arrival has mean 1/lambda")
{
    RandomStream rng(42, 7);
    const int draws = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        sum += schedule_next_arrival(0.0, 200.0, rng);
    }
    CHECK(sum / draws == doctest::Approx(1.0 / 200.0).epsilon(0.01));
}

TEST_CASE("huge rate still draws strictly positive waits")
{
    RandomStream rng(1, 1);
    for (int i = 0; i < 200'000; ++i) {
        const double t = schedule_next_arrival(3.0, 1e9, rng);
        REQUIRE(t > 3.0);
    }
    RandomStream raw(2, 2);
    for (int i = 0; i < 200'000; ++i) {
        REQUIRE(raw.exponential(1e9) > 0.0);
    }
}

TEST_CASE("fixed seed gives an identical draw sequence")
{
    RandomStream a(99, 3);
    RandomStream b(99, 3);
    RandomStream c(99, 4);
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = schedule_next_arrival(0.0, 200.0, a);
        CHECK(x == schedule_next_arrival(0.0, 200.0, b));
        any_diff |= x != schedule_next_arrival(0.0, 200.0, c);
    }
    CHECK(any_diff);
}

TEST_CASE("slotted draw agrees with the continuous one")
{
    RandomStream a(5, 0);
    RandomStream b(5, 0);
    for (int i = 0; i < 10'000; ++i) {
        const SlotIndex boundary = i * 37;
        const SlotTime t = schedule_next_arrival(boundary, 200.0, kSlot, a);
        const double expected = schedule_next_arrival(boundary * kSlot, 200.0, b);
        REQUIRE(t.offset >= 0.0);
        REQUIRE(t.offset < kSlot);
        REQUIRE(t.slot >= boundary);
        CHECK(t.seconds(kSlot) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("a frame generated mid-slot is eligible at the next boundary")
{
    ArrivalProcess arrivals(3, 200.0, kSlot);
    arrivals.schedule_at(1, SlotTime{0, 0.1e-3});  // t = 0.1 ms
    std::vector<StationId> due;
    arrivals.frames_becoming_pending(0, due);
    CHECK(due.empty());
    arrivals.frames_becoming_pending(1, due);  // slot 1 starts at 0.25 ms
    REQUIRE(due.size() == 1);
    CHECK(due[0] == 1);
    REQUIRE(arrivals.state(1).pending.has_value());
    CHECK(arrivals.state(1).pending->seconds(kSlot) == doctest::Approx(0.1e-3));
    CHECK_FALSE(arrivals.state(1).next_arrival.has_value());
}

TEST_CASE("a frame generated exactly at a boundary waits for the following one")
{
    ArrivalProcess arrivals(1, 200.0, kSlot);
    arrivals.schedule_at(0, SlotTime{1, 0.0});  // t = 0.25 ms, the start of slot 1
    std::vector<StationId> due;
    arrivals.frames_becoming_pending(1, due);
    CHECK(due.empty());
    arrivals.frames_becoming_pending(2, due);
    CHECK(due.size() == 1);
}

TEST_CASE("no arrivals due gives an empty list")
{
    ArrivalProcess arrivals(4, 200.0, kSlot);
    std::vector<StationId> due;
    arrivals.frames_becoming_pending(10, due);
    CHECK(due.empty());
    CHECK_FALSE(arrivals.next_eligible_slot().has_value());
}

TEST_CASE("one outstanding frame per station")
{
    ArrivalProcess arrivals(1, 200.0, kSlot);
    RandomStream rng(3, 1);
    arrivals.schedule(0, 0, rng);
    const SlotTime drawn = *arrivals.state(0).next_arrival;
    CHECK_THROWS_AS(arrivals.schedule(0, 0, rng), std::logic_error);
    CHECK_THROWS_AS(arrivals.deliver(0), std::logic_error);

    std::vector<StationId> due;
    arrivals.frames_becoming_pending(*arrivals.next_eligible_slot(), due);
    REQUIRE(due.size() == 1);
    CHECK_THROWS_AS(arrivals.schedule(0, 0, rng), std::logic_error);
    const SlotTime generated = arrivals.deliver(0);
    CHECK_FALSE(arrivals.state(0).pending.has_value());
    CHECK(generated == drawn);
}

TEST_CASE("stations pop in eligible-slot then id order")
{
    ArrivalProcess arrivals(3, 200.0, kSlot);
    arrivals.schedule_at(2, SlotTime{4, 1e-5});
    arrivals.schedule_at(0, SlotTime{4, 2e-5});
    arrivals.schedule_at(1, SlotTime{2, 0.0});
    CHECK(arrivals.next_eligible_slot() == 3);
    std::vector<StationId> due;
    arrivals.frames_becoming_pending(5, due);
    CHECK(due == std::vector<StationId>{1, 0, 2});
}

TEST_CASE("regenerated frames have increasing generation times and mean gap 1/lambda")
{
    ArrivalProcess arrivals(1, 200.0, kSlot);
    RandomStream rng(11, 1);
    arrivals.schedule(0, 0, rng);
    double last = -1.0;
    double gap_sum = 0.0;
    const int frames = 200'000;
    std::vector<StationId> due;
    for (int i = 0; i < frames; ++i) {
        const SlotIndex slot = *arrivals.next_eligible_slot();
        due.clear();
        arrivals.frames_becoming_pending(slot, due);
        const double gen = arrivals.deliver(0).seconds(kSlot);
        REQUIRE(gen > last);
        // Delivered at the end of its first eligible slot; the next wait starts there.
        const double delivered = static_cast<double>(slot + 1) * kSlot;
        last = gen;
        arrivals.schedule(0, slot + 1, rng);
        gap_sum += arrivals.state(0).next_arrival->seconds(kSlot) - delivered;
    }
    CHECK(gap_sum / frames == doctest::Approx(1.0 / 200.0).epsilon(0.01));
}
