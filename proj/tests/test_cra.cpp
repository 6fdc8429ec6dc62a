#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "rtasim/cra.hpp"

using namespace rtasim;

namespace {

SlotOutcome collided()
{
    SlotOutcome o;
    o.per_ru.push_back({0, RuState::Collision, -1});
    o.had_ra_collision = true;
    return o;
}

SlotOutcome clean()
{
    SlotOutcome o;
    o.per_ru.push_back({0, RuState::Success, 0});
    return o;
}

std::vector<StationId> assigned(const SlotSchedule& s)
{
    std::vector<StationId> out;
    for (const auto& a : s.det_assignments) {
        out.push_back(a.station);
    }
    return out;
}

}  // namespace

TEST_CASE("first schedule is RA only")
{
    RandomStream rng(1, 0);
    CraState st = make_cra_state(30, 6, 18);
    const auto s = next_schedule(st, nullptr, 0, rng);
    CHECK(s.ra_rus == std::vector<RuIndex>{0, 1, 2, 3, 4, 5});
    CHECK(s.det_assignments.empty());
    CHECK(st.mode == CraMode::Quiet);
}

TEST_CASE("a collision starts a cycle with f_max - f deterministic RUs")
{
    RandomStream rng(2, 0);
    CraState st = make_cra_state(30, 6, 18);
    const auto prev = collided();
    const auto s = next_schedule(st, &prev, 1, rng);
    CHECK(st.mode == CraMode::Cycling);
    REQUIRE(s.det_assignments.size() == 12);
    CHECK(s.ra_rus.size() == 6);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(s.det_assignments[i].ru == static_cast<RuIndex>(6 + i));
        CHECK(s.det_assignments[i].station == st.order[i]);
    }
    CHECK(st.cursor == 12);
    CHECK_NOTHROW(check_schedule(s, 18));
}

TEST_CASE("cycle walks the order and a partial group ends the pass")
{
    RandomStream rng(3, 0);
    CraState st = make_cra_state(30, 6, 18);
    const auto hit = collided();
    auto s = next_schedule(st, &hit, 1, rng);
    const auto order = st.order;
    std::vector<StationId> served = assigned(s);
    s = next_schedule(st, &hit, 2, rng);
    CHECK(st.order == order);
    CHECK(st.cursor == 24);
    for (auto id : assigned(s)) {
        served.push_back(id);
    }
    s = next_schedule(st, &hit, 3, rng);
    CHECK(s.det_assignments.size() == 6);
    CHECK(st.cursor == 30);
    for (auto id : assigned(s)) {
        served.push_back(id);
    }
    CHECK(served == order);

    // Still colliding after the last group: a fresh pass.
    s = next_schedule(st, &hit, 4, rng);
    CHECK(st.cursor == 12);
    CHECK(st.mode == CraMode::Cycling);
    CHECK(s.det_assignments.size() == 12);
    CHECK(std::is_permutation(st.order.begin(), st.order.end(), order.begin()));
}

TEST_CASE("collision-free RA ends the cycle and the next collision reshuffles")
{
    RandomStream rng(4, 0);
    CraState st = make_cra_state(30, 6, 18);
    const auto hit = collided();
    const auto ok = clean();
    next_schedule(st, &hit, 1, rng);
    auto s = next_schedule(st, &ok, 2, rng);
    CHECK(st.mode == CraMode::Quiet);
    CHECK(s.det_assignments.empty());
    s = next_schedule(st, &hit, 3, rng);
    CHECK(st.cursor == 12);
    CHECK(s.det_assignments.size() == 12);
}

TEST_CASE("small N: one group covers everyone")
{
    RandomStream rng(5, 0);
    CraState st = make_cra_state(4, 6, 18);
    const auto hit = collided();
    const auto s = next_schedule(st, &hit, 1, rng);
    CHECK(s.det_assignments.size() == 4);
    CHECK(st.cursor == 4);
}

TEST_CASE("f = f_max never assigns deterministic RUs")
{
    RandomStream rng(6, 0);
    CraState st = make_cra_state(10, 18, 18);
    const auto hit = collided();
    for (int k = 1; k < 10; ++k) {
        const auto s = next_schedule(st, &hit, k, rng);
        CHECK(s.det_assignments.empty());
        CHECK(s.ra_rus.size() == 18);
    }
}

TEST_CASE("N = 0 stays quiet")
{
    RandomStream rng(7, 0);
    CraState st = make_cra_state(0, 6, 18);
    const auto hit = collided();
    const auto s = next_schedule(st, &hit, 1, rng);
    CHECK(st.mode == CraMode::Quiet);
    CHECK(s.det_assignments.empty());
}

TEST_CASE("bad CRA parameters")
{
    CHECK_THROWS_AS(make_cra_state(3, 0, 18), std::invalid_argument);
    CHECK_THROWS_AS(make_cra_state(3, 19, 18), std::invalid_argument);
    CHECK_THROWS_AS(make_cra_state(-1, 6, 18), std::invalid_argument);
}

TEST_CASE("shuffle_order")
{
    RandomStream rng(8, 0);
    CHECK(shuffle_order(0, rng).empty());
    CHECK(shuffle_order(1, rng) == std::vector<StationId>{0});

    std::map<std::vector<StationId>, int> counts;
    const int draws = 600'000;
    for (int i = 0; i < draws; ++i) {
        ++counts[shuffle_order(3, rng)];
    }
    CHECK(counts.size() == 6);
    for (const auto& [perm, c] : counts) {
        CHECK(static_cast<double>(c) / draws == doctest::Approx(1.0 / 6.0).epsilon(0.06));
    }

    RandomStream a(9, 0);
    RandomStream b(9, 0);
    for (int i = 0; i < 100; ++i) {
        REQUIRE(shuffle_order(25, a) == shuffle_order(25, b));
    }
}

TEST_CASE("station intents under CRA")
{
    RandomStream rng(10, 3);
    SlotSchedule s;
    s.ra_rus = {0, 1, 2, 3, 4, 5};
    s.det_assignments = {{6, 3}, {7, 9}};

    SUBCASE("assigned station uses its RU")
    {
        for (int i = 0; i < 100; ++i) {
            const auto in = cra_station_intent(9, s, true, rng);
            REQUIRE(in.has_value());
            CHECK(in->ru == 7);
            CHECK(in->kind == Access::Deterministic);
        }
    }
    SUBCASE("unassigned station picks an RA RU uniformly")
    {
        std::vector<int> hist(6, 0);
        const int draws = 120'000;
        for (int i = 0; i < draws; ++i) {
            const auto in = cra_station_intent(1, s, true, rng);
            REQUIRE(in.has_value());
            REQUIRE(in->kind == Access::RandomAccess);
            REQUIRE(in->ru >= 0);
            REQUIRE(in->ru < 6);
            ++hist[static_cast<std::size_t>(in->ru)];
        }
        for (int c : hist) {
            CHECK(static_cast<double>(c) / draws == doctest::Approx(1.0 / 6.0).epsilon(0.05));
        }
    }
    SUBCASE("station without a frame stays silent")
    {
        CHECK_FALSE(cra_station_intent(1, s, false, rng).has_value());
        CHECK_FALSE(cra_station_intent(3, s, false, rng).has_value());
    }
}

TEST_CASE("each station appears at most once per pass")
{
    RandomStream rng(11, 0);
    CraState st = make_cra_state(37, 4, 15);
    const auto hit = collided();
    std::set<StationId> seen;
    for (int k = 1; k < 200; ++k) {
        const auto s = next_schedule(st, &hit, k, rng);
        if (st.cursor <= st.group_capacity()) {
            seen.clear();
        }
        for (auto id : assigned(s)) {
            REQUIRE(seen.insert(id).second);
        }
        CHECK_NOTHROW(check_schedule(s, 15));
    }
}
