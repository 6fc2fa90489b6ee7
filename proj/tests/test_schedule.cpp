#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hsnewton/schedule.hpp"

using namespace hsnewton;

TEST_CASE("constant schedule: sums and tightest constants") {
    const AlphaSchedule sched = make_constant_schedule(1.0, 5);
    for (int n = 0; n < 5; ++n) CHECK(sched.s(n) == doctest::Approx(n + 1.0));
    CHECK(sched.s(-1) == 0.0);
    // max ratio s_{n+1}/s_n = (n+2)/(n+1) is 2 at n = 0
    CHECK(sched.c0 == doctest::Approx(2.0));
    CHECK(sched.c1 == doctest::Approx(1.0));
}

TEST_CASE("geometric schedule: s_n = 2^{n+1} - 1 for q = 1/2") {
    const AlphaSchedule sched = make_geometric_schedule(1.0, 0.5, 20);
    for (int n = 0; n < 20; ++n)
        CHECK(sched.s(n) == doctest::Approx(std::pow(2.0, n + 1) - 1.0).epsilon(1e-13));
    // ratio maximal at n = 0: s_1/s_0 = 3
    CHECK(sched.c0 == doctest::Approx(3.0));
    const AlphaSchedule longer = make_geometric_schedule(1.0, 0.5, 100);
    CHECK(longer.c0 <= 3.0 + 1e-12);
}

TEST_CASE("reciprocal-integer schedule: k_n = n + 1") {
    const AlphaSchedule sched = make_reciprocal_schedule(1, 1, 30);
    for (int n = 0; n < 30; ++n)
        CHECK(sched.s(n) == doctest::Approx((n + 1.0) * (n + 2.0) / 2.0));
    CHECK(sched.c0 == doctest::Approx(3.0));  // s_1/s_0 = 3, decreasing after
    CHECK(sched.c1 == doctest::Approx(1.0));
}

TEST_CASE("reciprocal-geometric schedule has exact integer reciprocals") {
    const AlphaSchedule sched = make_reciprocal_geometric_schedule(1, 1.25, 40);
    for (int n = 0; n < 40; ++n) {
        const double kd = 1.0 / sched.alpha(n);
        CHECK(kd == doctest::Approx(std::round(kd)).epsilon(1e-14));
    }
    const ScheduleReport rep = validate_schedule(sched);
    CHECK(rep.pass);
}

TEST_CASE("make_schedule rejects bad parameters") {
    CHECK_THROWS_AS(make_constant_schedule(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_constant_schedule(0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_geometric_schedule(1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_geometric_schedule(-1.0, 0.5, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_reciprocal_schedule(0, 1, 5), std::invalid_argument);
}

TEST_CASE("validate_schedule: pass and fail cases") {
    const ScheduleReport ok = validate_schedule(make_constant_schedule(1.0, 10));
    CHECK(ok.pass);
    CHECK(ok.empirical_c1 == doctest::Approx(1.0));

    // growing alpha_n = n + 1 declared with c1 = 1 fails the alpha bound
    std::vector<double> growing;
    for (int n = 0; n < 8; ++n) growing.push_back(n + 1.0);
    const AlphaSchedule bad = schedule_from_alphas(growing, 10.0, 1.0);
    const ScheduleReport rep = validate_schedule(bad);
    CHECK_FALSE(rep.alpha_bounded);
    CHECK_FALSE(rep.pass);
    CHECK(rep.empirical_c1 == doctest::Approx(8.0));

    // declared ratio constant too small fails the ratio check
    const AlphaSchedule tight = schedule_from_alphas({1.0, 1.0, 1.0}, 1.5, 1.0);
    CHECK_FALSE(validate_schedule(tight).ratio_ok);

    const ScheduleReport geo = validate_schedule(make_geometric_schedule(1.0, 0.5, 50));
    CHECK(geo.pass);
    CHECK(geo.empirical_c0 == doctest::Approx(3.0));
}
