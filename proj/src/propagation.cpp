#include "mobisim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mobisim {

double path_loss_db(double distance_km, double bs_height_m, double carrier_mhz,
                    double min_distance_km)
{
    if (!(bs_height_m > 0.0) || bs_height_m >= 250.0)
        throw std::invalid_argument("bs_height must lie in (0, 250) m for the macro path loss");
    if (!(carrier_mhz > 0.0))
        throw std::invalid_argument("carrier must be positive");
    const double r = std::max(distance_km, min_distance_km);
    return 40.0 * (1.0 - 4e-3 * bs_height_m) * std::log10(r) - 18.0 * std::log10(bs_height_m) +
           21.0 * std::log10(carrier_mhz) + 80.0;
}

double shadowing_db(CounterRng& rng, double sigma_db)
{
    if (sigma_db < 0.0)
        throw std::invalid_argument("shadowing sigma must be non-negative");
    if (sigma_db == 0.0)
        return 0.0;
    std::normal_distribution<double> normal(0.0, sigma_db);
    return normal(rng);
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

LinkBudget link_budget(const NetworkLayout& layout, std::size_t sector, Vec2 ue_position,
                       double shadowing, const PropagationParams& params)
{
    const Sector& sec = layout.sectors.at(sector);
    const Site& site = layout.sites[sec.site];
    const Vec2 offset = ue_position - site.position;
    const double d2d = std::max(offset.norm(), params.min_distance_m);

    const double bearing = std::atan2(offset.y, offset.x) * 180.0 / kPi;
    const double horizontal = wrap_degrees(bearing - sec.azimuth_deg);
    const double vertical = std::atan2(site.height_m - params.ue_height_m, d2d) * 180.0 / kPi;

    AntennaPattern pattern = layout.pattern;
    pattern.downtilt_deg = sec.downtilt_deg;

    LinkBudget b;
    b.path_loss_db = path_loss_db(d2d / 1000.0, site.height_m, params.carrier_mhz,
                                  params.min_distance_m / 1000.0);
    b.shadowing_db = shadowing;
    b.antenna_attenuation_db = antenna_attenuation_db(pattern, horizontal, vertical);
    b.antenna_gain_dbi = sec.boresight_gain_dbi;
    b.coupling_gain_db =
        b.antenna_gain_dbi - b.path_loss_db - b.antenna_attenuation_db + b.shadowing_db;
    b.rx_power_dbm = params.tx_power_dbm + b.coupling_gain_db;
    return b;
}

std::size_t attach(std::span<const LinkBudget> budgets)
{
    if (budgets.empty())
        throw std::invalid_argument("attach needs at least one sector");
    std::size_t best = 0;
    for (std::size_t s = 1; s < budgets.size(); ++s)
        if (budgets[s].rx_power_dbm > budgets[best].rx_power_dbm)
            best = s;
    return best;
}

std::vector<double> draw_shadowing(std::uint64_t seed, std::size_t ue_count,
                                   std::size_t site_count, double sigma_db)
{
    std::vector<double> out(ue_count * site_count);
    for (std::size_t u = 0; u < ue_count; ++u) {
        for (std::size_t s = 0; s < site_count; ++s) {
            auto rng = make_stream(seed, StreamPurpose::shadowing, u, s);
            out[u * site_count + s] = shadowing_db(rng, sigma_db);
        }
    }
    return out;
}

}  // namespace mobisim
