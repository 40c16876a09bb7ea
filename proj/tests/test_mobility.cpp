#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "mobisim/mobility.hpp"

using namespace mobisim;

TEST_CASE("static UE stays put")
{
    const MobilityRegion region{500.0};
    CounterRng rng(1);
    MotionState m{{12.0, -40.0}, 0.0, 1.0};
    for (double dt : {1e-3, 1.0, 100.0}) {
        const auto n = step(m, dt, region, rng);
        CHECK(n.position.x == m.position.x);
        CHECK(n.position.y == m.position.y);
    }
}

TEST_CASE("step length is speed times dt")
{
    const MobilityRegion region{1e6};
    CounterRng rng(2);
    MotionState m{{0.0, 0.0}, 120.0, 0.0};
    for (int i = 0; i < 1000; ++i) {
        const auto n = step(m, 1e-3, region, rng);
        CHECK((n.position - m.position).norm() == doctest::Approx(120.0 / 3.6 * 1e-3).epsilon(1e-12));
        CHECK((n.position - m.position).norm() == doctest::Approx(0.03333).epsilon(1e-4));
        m = n;
    }
    CHECK_THROWS_AS(step(m, 0.0, region, rng), std::invalid_argument);
    MotionState backwards{{0.0, 0.0}, -1.0, 0.0};
    CHECK_THROWS_AS(step(backwards, 1.0, region, rng), std::invalid_argument);
}

TEST_CASE("reflection at a face mirrors the heading")
{
    const MobilityRegion region{100.0};
    const double a = kPi / 6.0;
    const Vec2 n{std::cos(a), std::sin(a)};
    MotionState m{99.0 * n, 3.0 * 3.6, a};
    const auto r = advance(m, 1.0, region);
    CHECK(r.position.x == doctest::Approx(98.0 * n.x));
    CHECK(r.position.y == doctest::Approx(98.0 * n.y));
    CHECK(std::cos(r.heading_rad) == doctest::Approx(-n.x));
    CHECK(std::sin(r.heading_rad) == doctest::Approx(-n.y));
    CHECK(region.contains(r.position));

    // Oblique hit: the component along the face normal flips, the tangential one is kept.
    const Vec2 t{-n.y, n.x};
    const double heading = std::atan2(n.y + t.y, n.x + t.x);
    MotionState o{99.5 * n, 2.0 * 3.6, heading};
    const auto q = advance(o, 1.0, region);
    const Vec2 d{std::cos(q.heading_rad), std::sin(q.heading_rad)};
    CHECK(d.dot(n) == doctest::Approx(-std::sqrt(0.5)));
    CHECK(d.dot(t) == doctest::Approx(std::sqrt(0.5)));
    CHECK(region.contains(q.position));
}

TEST_CASE("random walk never leaves the region")
{
    const MobilityRegion region{30.0};
    CounterRng rng(3);
    MotionState m{{0.0, 0.0}, 3600.0, 0.0};
    for (int i = 0; i < 20000; ++i) {
        m = step(m, 0.01, region, rng);
        REQUIRE(region.contains(m.position));
    }
}

TEST_CASE("mean squared displacement grows linearly")
{
    const MobilityRegion region{1e6};
    constexpr int trials = 10000, steps = 100;
    const double length = 120.0 / 3.6 * 1e-3;
    double msd = 0.0;
    for (int k = 0; k < trials; ++k) {
        CounterRng rng = make_stream(9, StreamPurpose::mobility, std::uint64_t(k));
        MotionState m{{0.0, 0.0}, 120.0, 0.0};
        for (int i = 0; i < steps; ++i)
            m = step(m, 1e-3, region, rng);
        msd += m.position.dot(m.position);
    }
    msd /= trials;
    CHECK(std::abs(msd / (steps * length * length) - 1.0) < 0.10);
}

TEST_CASE("mobility region follows the layout")
{
    LayoutOptions opt;
    const auto layout = build_layout(opt);
    const auto region = mobility_region(layout, 100.0);
    CHECK(region.inradius_m == doctest::Approx(layout.coverage_inradius_m() + 100.0));
    for (const auto& site : layout.sites)
        CHECK(region.contains(site.position));
    CHECK_FALSE(region.contains({0.0, 3.0 * region.inradius_m}));
}
