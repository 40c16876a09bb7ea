#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <vector>

#include "mobisim/fading.hpp"
#include "mobisim/geometry.hpp"

using namespace mobisim;

namespace {

// J0(x) = (1/π) ∫_0^π cos(x sin t) dt; the trapezoid rule converges
// geometrically for this periodic integrand.
double j0_by_quadrature(double x)
{
    constexpr int n = 4000;
    const double pi = 3.14159265358979323846;
    double sum = 0.5 * (std::cos(0.0) + std::cos(x * std::sin(pi)));
    for (int k = 1; k < n; ++k)
        sum += std::cos(x * std::sin(pi * k / n));
    return sum / n;
}

std::vector<Complex> entry_series(double rho, std::size_t steps, std::uint64_t seed,
                                  Eigen::Index i = 0, Eigen::Index j = 0)
{
    CounterRng init(seed);
    auto channel = draw_initial(2, 2, 1, init);
    channel.lag1_correlation = rho;
    CounterRng rng(seed + 1000);
    std::vector<Complex> series;
    series.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        series.push_back(channel.h[0](i, j));
        evolve(channel, rng);
    }
    return series;
}

double autocorrelation(const std::vector<Complex>& x, std::size_t lag)
{
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t t = 0; t + lag < x.size(); ++t)
        num += x[t + lag] * std::conj(x[t]);
    for (const auto& v : x)
        den += std::norm(v);
    return num.real() / den * static_cast<double>(x.size()) /
           static_cast<double>(x.size() - lag);
}

}  // namespace

TEST_CASE("Doppler shift")
{
    CHECK(doppler_hz(0.0, 2.45e9) == 0.0);
    CHECK(doppler_hz(120.0, 2.45e9) == doctest::Approx(272.4).epsilon(2e-4));
    CHECK(doppler_hz(30.0, 2.45e9) == doctest::Approx(68.1).epsilon(5e-4));
    CHECK_THROWS_AS(doppler_hz(-1.0, 2.45e9), std::invalid_argument);
}

TEST_CASE("Bessel J0 matches the integral representation to 1e-10")
{
    double worst = 0.0;
    for (double x = 0.0; x <= 60.0; x += 0.0371)
        worst = std::max(worst, std::abs(bessel_j0(x) - j0_by_quadrature(x)));
    for (double x : {7.999, 8.0, 11.99, 12.0, 12.01, 25.0})
        worst = std::max(worst, std::abs(bessel_j0(x) - j0_by_quadrature(x)));
    CHECK(worst < 1e-10);
    CHECK(bessel_j0(-3.3) == bessel_j0(3.3));
    CHECK(std::abs(bessel_j0(2.5) - std::cyl_bessel_j(0.0, 2.5)) < 1e-12);
}

TEST_CASE("Jakes lag-one coefficient")
{
    const double fd = doppler_hz(120.0, 2.45e9);
    const double rho = lag1_correlation(fd, 1e-3);
    CHECK(rho == doctest::Approx(bessel_j0(2.0 * kPi * fd * 1e-3)));
    CHECK(rho == doctest::Approx(0.39).epsilon(0.02));
    CHECK(lag1_correlation(0.0, 1e-3) == 1.0);
    // Past the first zero of J0 the coefficient is clamped at 0.
    CHECK(lag1_correlation(500.0, 1e-3) == 0.0);
}

TEST_CASE("initial draws")
{
    CounterRng rng(1);
    const auto c = draw_initial(2, 4, 9, rng);
    CHECK(c.subband_count() == 9);
    CHECK(c.rx() == 4);
    CHECK(c.tx() == 2);
    CHECK(draw_initial(4, 4, 1, rng).h.size() == 1);
    CHECK_THROWS_AS(draw_initial(3, 4, 1, rng), std::invalid_argument);
    CHECK_THROWS_AS(draw_initial(2, 5, 1, rng), std::invalid_argument);
    CHECK_THROWS_AS(draw_initial(2, 2, 0, rng), std::invalid_argument);

    double power = 0.0;
    int count = 0;
    CounterRng many(9);
    while (count < 100000) {
        const auto d = draw_initial(2, 2, 25, many);
        for (const auto& h : d.h) {
            power += h.cwiseAbs2().sum();
            count += 4;
        }
    }
    CHECK(std::abs(power / count - 1.0) < 0.02);
}

TEST_CASE("evolution with rho = 1 freezes the channel")
{
    CounterRng init(2);
    auto c = draw_initial(4, 4, 3, init);
    const auto before = c.h;
    CounterRng rng(3);
    for (int i = 0; i < 10; ++i)
        evolve(c, rng);
    for (std::size_t s = 0; s < before.size(); ++s)
        CHECK(c.h[s] == before[s]);
}

TEST_CASE("evolution with rho = 0 forgets the past")
{
    constexpr int trials = 100000;
    Complex cross = 0.0;
    double pa = 0.0, pb = 0.0;
    CounterRng init(4), rng(5);
    auto c = draw_initial(2, 2, 1, init);
    c.lag1_correlation = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Complex a = c.h[0](0, 0);
        evolve(c, rng);
        const Complex b = c.h[0](0, 0);
        cross += b * std::conj(a);
        pa += std::norm(a);
        pb += std::norm(b);
    }
    CHECK(std::abs(cross) / std::sqrt(pa * pb) < 0.02);
}

TEST_CASE("empirical autocorrelation follows rho^k")
{
    const double fd = doppler_hz(120.0, 2.45e9);
    const double rho = lag1_correlation(fd, 1e-3);
    const auto series = entry_series(rho, 200000, 17);
    CHECK(std::abs(autocorrelation(series, 1) - rho) < 0.02);
    for (std::size_t k = 1; k <= 5; ++k)
        CHECK(std::abs(autocorrelation(series, k) - std::pow(rho, double(k))) < 0.03);

    for (double speed : {3.0, 30.0, 60.0}) {
        const double r = lag1_correlation(doppler_hz(speed, 2.45e9), 1e-3);
        const auto s = entry_series(r, 100000, 23);
        for (std::size_t k = 1; k <= 5; ++k)
            CHECK(std::abs(autocorrelation(s, k) - std::pow(r, double(k))) < 0.03);
    }
}

TEST_CASE("evolution keeps unit power and is reproducible")
{
    const double rho = 0.7;
    double power = 0.0;
    int count = 0;
    for (std::uint64_t link = 0; link < 3000; ++link) {
        CounterRng init(link), rng(link + 1'000'000);
        auto c = draw_initial(4, 4, 1, init);
        c.lag1_correlation = rho;
        for (int t = 0; t < 1000; ++t)
            evolve(c, rng);
        power += c.h[0].cwiseAbs2().sum();
        count += 16;
    }
    CHECK(std::abs(power / count - 1.0) < 0.02);

    auto run = [] {
        CounterRng init(77), rng(78);
        auto c = draw_initial(2, 4, 9, init);
        c.lag1_correlation = 0.5;
        for (int t = 0; t < 50; ++t)
            evolve(c, rng);
        return c.h;
    };
    const auto a = run();
    const auto b = run();
    for (std::size_t s = 0; s < a.size(); ++s)
        CHECK(a[s] == b[s]);
}
