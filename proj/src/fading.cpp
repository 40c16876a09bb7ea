#include "mobisim/fading.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mobisim {

namespace {

constexpr double kPiLocal = 3.14159265358979323846;

double j0_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)))
            break;
    }
    return sum;
}

// Hankel expansion truncated at its smallest term.
double j0_asymptotic(double x)
{
    double p = 0.0;
    double q = 0.0;
    double ak = 1.0;  // a_k(0) / x^k
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            ak *= -(odd * odd) / (8.0 * k * x);
        }
        if (std::abs(ak) > last)
            break;
        last = std::abs(ak);
        // Even k feed P with sign (−1)^{k/2}; odd k feed Q with sign (−1)^{(k−1)/2}.
        switch (k % 4) {
        case 0: p += ak; break;
        case 1: q += ak; break;
        case 2: p -= ak; break;
        case 3: q -= ak; break;
        }
    }
    const double chi = x - 0.25 * kPiLocal;
    return std::sqrt(2.0 / (kPiLocal * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x)
{
    x = std::abs(x);
    return x < 12.0 ? j0_series(x) : j0_asymptotic(x);
}

double doppler_hz(double speed_kmph, double carrier_hz)
{
    if (speed_kmph < 0.0)
        throw std::invalid_argument("speed must be non-negative");
    return speed_kmph / 3.6 * carrier_hz / kSpeedOfLight;
}

double lag1_correlation(double doppler, double tti_s)
{
    return std::clamp(bessel_j0(2.0 * kPiLocal * doppler * tti_s), 0.0, 1.0);
}

Complex standard_complex_gaussian(CounterRng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ChannelRealization draw_initial(std::size_t tx, std::size_t rx, std::size_t subbands,
                                CounterRng& rng)
{
    if (tx != 2 && tx != 4)
        throw std::invalid_argument("transmit antenna count must be 2 or 4");
    if (rx < 2 || rx > 4)
        throw std::invalid_argument("receive antenna count must be 2, 3 or 4");
    if (subbands == 0)
        throw std::invalid_argument("subband count must be at least 1");

    ChannelRealization channel;
    channel.h.reserve(subbands);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (std::size_t s = 0; s < subbands; ++s) {
        CMatrix h(static_cast<Eigen::Index>(rx), static_cast<Eigen::Index>(tx));
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            for (Eigen::Index i = 0; i < h.rows(); ++i) {
                const double re = normal(rng);
                const double im = normal(rng);
                h(i, j) = {re, im};
            }
        channel.h.push_back(h);
    }
    return channel;
}

void evolve(ChannelRealization& channel, CounterRng& rng)
{
    const double rho = channel.lag1_correlation;
    if (rho >= 1.0)
        return;
    const double innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (CMatrix& h : channel.h) {
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            for (Eigen::Index i = 0; i < h.rows(); ++i) {
                const double re = normal(rng);
                const double im = normal(rng);
                h(i, j) = rho * h(i, j) + innovation * Complex(re, im);
            }
    }
}

}  // namespace mobisim
