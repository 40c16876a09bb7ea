#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mobisim/geometry.hpp"
#include "mobisim/rng.hpp"

namespace mobisim {

/// Urban macro-cell path loss in dB. Distance in km (clamped below at
/// `min_distance_km`), base-station height in m, carrier in MHz.
/// Throws std::invalid_argument for heights outside (0, 250) m, where the
/// distance slope changes sign.
double path_loss_db(double distance_km, double bs_height_m, double carrier_mhz,
                    double min_distance_km = 0.035);

/// Zero-mean Gaussian shadow fade in dB.
double shadowing_db(CounterRng& rng, double sigma_db);

/// Thermal noise floor plus receiver noise figure.
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

struct LinkBudget {
    double path_loss_db = 0.0;
    double shadowing_db = 0.0;  ///< signed; positive values strengthen the link
    double antenna_attenuation_db = 0.0;
    double antenna_gain_dbi = 0.0;
    double coupling_gain_db = 0.0;
    double rx_power_dbm = 0.0;
};

struct PropagationParams {
    double carrier_mhz = 2450.0;
    double bs_height_m = 20.0;
    double ue_height_m = 1.5;
    double tx_power_dbm = 45.0;
    double min_distance_m = 35.0;
};

/// Large-scale budget of one UE–sector link.
LinkBudget link_budget(const NetworkLayout& layout, std::size_t sector, Vec2 ue_position,
                       double shadowing_db, const PropagationParams& params);

/// Serving sector: argmax of rx power, lowest index on ties.
std::size_t attach(std::span<const LinkBudget> budgets);

/// Per UE–site shadowing matrix, row-major [ue][site]; each pair has its own
/// stream so the value does not depend on UE or site count.
std::vector<double> draw_shadowing(std::uint64_t seed, std::size_t ue_count,
                                   std::size_t site_count, double sigma_db);

}  // namespace mobisim
