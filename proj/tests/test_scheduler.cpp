#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "mobisim/kpi.hpp"
#include "mobisim/scheduler.hpp"

using namespace mobisim;

namespace {

std::vector<std::size_t> counts(const std::vector<std::size_t>& owners, std::size_t ues)
{
    std::vector<std::size_t> c(ues, 0);
    for (auto o : owners)
        ++c.at(o);
    return c;
}

struct FairnessRun {
    double rr_jain;
    double pf_jain;
};

// Symmetric i.i.d. per-subband rates; delivered = rate of every won subband.
FairnessRun fairness_run(std::uint64_t seed)
{
    constexpr std::size_t ues = 6, subbands = 9, ttis = 500;
    std::mt19937_64 gen(seed);
    std::exponential_distribution<double> rate(1.0 / 1e6);
    std::vector<double> rr_total(ues, 0.0), pf_total(ues, 0.0), avg(ues, 1e3);
    RoundRobinCursor cursor;
    std::vector<std::size_t> active(ues);
    std::iota(active.begin(), active.end(), 0);
    for (std::size_t t = 0; t < ttis; ++t) {
        RateTable r(ues, subbands);
        for (std::size_t u = 0; u < ues; ++u)
            for (std::size_t s = 0; s < subbands; ++s)
                r.at(u, s) = rate(gen);
        const auto rr = rr_schedule(cursor, active, subbands);
        for (std::size_t s = 0; s < subbands; ++s)
            rr_total[rr[s]] += r.at(rr[s], s);
        const auto pf = pf_schedule(r, avg, 1.0, 1.0);
        std::vector<double> delivered(ues, 0.0);
        for (std::size_t s = 0; s < subbands; ++s)
            delivered[pf[s]] += r.at(pf[s], s);
        for (std::size_t u = 0; u < ues; ++u) {
            pf_total[u] += delivered[u];
            avg[u] = update_average(avg[u], delivered[u], 20.0, 1e3);
        }
    }
    return {jain_fairness(rr_total), jain_fairness(pf_total)};
}

}  // namespace

TEST_CASE("scheduler names")
{
    CHECK(parse_scheduler("rr") == SchedulerPolicy::round_robin);
    CHECK(parse_scheduler("pf") == SchedulerPolicy::proportional_fair);
    CHECK(to_string(SchedulerPolicy::round_robin) == "rr");
    CHECK(to_string(SchedulerPolicy::proportional_fair) == "pf");
    CHECK_THROWS_AS(parse_scheduler("max-ci"), std::invalid_argument);
}

TEST_CASE("round robin dealing")
{
    const std::vector<std::size_t> three{10, 11, 12};
    RoundRobinCursor c;
    CHECK(counts(rr_schedule(c, three, 6), 3) == std::vector<std::size_t>{2, 2, 2});

    const std::vector<std::size_t> two{4, 7};
    RoundRobinCursor d;
    const auto first = rr_schedule(d, two, 5);
    CHECK(first == std::vector<std::size_t>{0, 1, 0, 1, 0});
    CHECK(d.position == 1);
    const auto second = rr_schedule(d, two, 5);
    CHECK(second.front() == 1);

    RoundRobinCursor e;
    std::vector<std::size_t> tally(3, 0);
    std::vector<long> running(3, 0);
    for (int t = 0; t < 300; ++t) {
        for (auto o : rr_schedule(e, three, 9))
            ++tally[o];
        const auto [lo, hi] = std::minmax_element(tally.begin(), tally.end());
        CHECK(*hi - *lo <= 1);
    }
    CHECK(tally == std::vector<std::size_t>{900, 900, 900});

    RoundRobinCursor f;
    CHECK_THROWS_AS(rr_schedule(f, std::vector<std::size_t>{}, 9), std::invalid_argument);
}

TEST_CASE("round robin shares stay within one subband")
{
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t ues = 1 + gen() % 12;
        const std::size_t subbands = 1 + gen() % 13;
        std::vector<std::size_t> active(ues);
        std::iota(active.begin(), active.end(), 0);
        RoundRobinCursor c;
        std::vector<std::size_t> tally(ues, 0);
        for (int t = 0; t < 40; ++t) {
            for (auto o : rr_schedule(c, active, subbands))
                ++tally[o];
            const auto [lo, hi] = std::minmax_element(tally.begin(), tally.end());
            CHECK(*hi - *lo <= 1);
        }
    }
}

TEST_CASE("PF priority")
{
    CHECK(pf_priority(2e6, 1e6, 1.0, 1.0) == doctest::Approx(2.0));
    CHECK(pf_priority(5e5, 5e5, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(pf_priority(0.0, 4e5, 0.0, 1.0) == doctest::Approx(1.0 / 4e5));
    CHECK(pf_priority(9e9, 4e5, 0.0, 1.0) == doctest::Approx(1.0 / 4e5));
    CHECK_THROWS_AS(pf_priority(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("PF allocation")
{
    RateTable r(2, 1);
    r.at(0, 0) = 1e6;
    r.at(1, 0) = 2e6;
    const std::vector<double> equal{1e6, 1e6};
    CHECK(pf_schedule(r, equal, 1.0, 1.0) == std::vector<std::size_t>{1});

    RateTable tie(3, 2);
    for (std::size_t u = 0; u < 3; ++u)
        for (std::size_t s = 0; s < 2; ++s)
            tie.at(u, s) = 5.0;
    const std::vector<double> same{1.0, 1.0, 1.0};
    CHECK(pf_schedule(tie, same, 1.0, 1.0) == std::vector<std::size_t>{0, 0});

    const std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(pf_schedule(r, wrong, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("PF allocation is invariant to common rate scaling")
{
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.0, 1e7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t ues = 2 + trial % 7, subbands = 9;
        RateTable r(ues, subbands), scaled(ues, subbands);
        std::vector<double> avg(ues);
        for (std::size_t k = 0; k < ues; ++k) {
            avg[k] = 1e3 + u(gen);
            for (std::size_t s = 0; s < subbands; ++s) {
                r.at(k, s) = u(gen);
                scaled.at(k, s) = 10.0 * r.at(k, s);
            }
        }
        for (double alpha : {0.5, 1.0, 2.0})
            CHECK(pf_schedule(r, avg, alpha, 1.0) == pf_schedule(scaled, avg, alpha, 1.0));
    }
}

TEST_CASE("a starved UE wins within the averaging window")
{
    constexpr double t_c = 20.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> rate(1e5, 1e6);
        constexpr std::size_t ues = 5, subbands = 9;
        std::vector<double> avg(ues, 5e5);
        avg[3] = 1e3;
        // The starved UE is also the weakest on every draw.
        bool won = false;
        for (int t = 0; t < int(t_c) && !won; ++t) {
            RateTable r(ues, subbands);
            for (std::size_t k = 0; k < ues; ++k)
                for (std::size_t s = 0; s < subbands; ++s)
                    r.at(k, s) = k == 3 ? 0.2 * rate(gen) : rate(gen);
            const auto owners = pf_schedule(r, avg, 1.0, 1.0);
            std::vector<double> delivered(ues, 0.0);
            for (std::size_t s = 0; s < subbands; ++s)
                delivered[owners[s]] += r.at(owners[s], s);
            won = delivered[3] > 0.0;
            for (std::size_t k = 0; k < ues; ++k)
                avg[k] = update_average(avg[k], delivered[k], t_c, 1e3);
        }
        CHECK(won);
    }
}

TEST_CASE("PF fairness is close to round robin on symmetric rates")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto f = fairness_run(seed);
        CHECK(f.pf_jain >= f.rr_jain - 0.05);
    }
}

TEST_CASE("average throughput window")
{
    CHECK(update_average(1e6, 2e6, 10.0) == doctest::Approx(1.1e6));
    double avg = 5e6;
    for (int t = 0; t < 2000; ++t)
        avg = update_average(avg, 0.0, 20.0, 1e3);
    CHECK(avg == 1e3);
    double previous = 5e6;
    avg = 5e6;
    for (int t = 0; t < 50; ++t) {
        avg = update_average(avg, 0.0, 20.0, 1e3);
        CHECK(avg < previous);
        previous = avg;
    }
    avg = 1e3;
    for (int t = 0; t < 5000; ++t)
        avg = update_average(avg, 3.3e6, 20.0, 1e3);
    CHECK(avg == doctest::Approx(3.3e6).epsilon(1e-9));
    CHECK_THROWS_AS(update_average(1.0, 1.0, 1.5), std::invalid_argument);
}
