#pragma once

#include <cstddef>
#include <vector>

#include "mobisim/linalg.hpp"
#include "mobisim/rng.hpp"

namespace mobisim {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Bessel function of the first kind, order zero. Power series below
/// |x| = 12, Hankel asymptotic expansion above; absolute error < 1e-10.
double bessel_j0(double x);

/// Maximum Doppler shift in Hz for a speed in km/h and a carrier in Hz.
double doppler_hz(double speed_kmph, double carrier_hz);

/// Jakes lag-one coefficient J0(2π·f_d·τ), clamped to [0, 1].
double lag1_correlation(double doppler_hz, double tti_s);

/// Small-scale channel of one UE–sector link: one rx × tx matrix per subband,
/// evolving as a first-order Gauss–Markov process.
struct ChannelRealization {
    std::vector<CMatrix> h;
    double doppler_hz = 0.0;
    double lag1_correlation = 1.0;

    std::size_t subband_count() const { return h.size(); }
    Eigen::Index rx() const { return h.empty() ? 0 : h.front().rows(); }
    Eigen::Index tx() const { return h.empty() ? 0 : h.front().cols(); }
};

/// Circularly-symmetric complex Gaussian with unit variance.
Complex standard_complex_gaussian(CounterRng& rng);

/// I.i.d. unit-power Rayleigh entries, independent across subbands.
/// Throws std::invalid_argument unless tx and rx are in {2, 3, 4} (rx) and {2, 4} (tx).
ChannelRealization draw_initial(std::size_t tx, std::size_t rx, std::size_t subbands,
                                CounterRng& rng);

/// One step h' = ρ·h + √(1−ρ²)·w. With ρ = 1 the channel is left untouched
/// and no variates are consumed.
void evolve(ChannelRealization& channel, CounterRng& rng);

}  // namespace mobisim
