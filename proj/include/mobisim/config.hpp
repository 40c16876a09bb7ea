#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mobisim/scheduler.hpp"

namespace mobisim {

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Validation failure attributable to one configuration key.
class ConfigKeyError : public ConfigError
{
  public:
    ConfigKeyError(std::string key, const std::string& message)
        : ConfigError(message), key_(std::move(key))
    {
    }
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

struct AntennaMode {
    std::size_t tx = 2;
    std::size_t rx = 2;

    friend bool operator==(const AntennaMode&, const AntennaMode&) = default;
};

enum class KpiScope { all, center };

/// Every simulation parameter. Defaults reproduce the reference network
/// table; the remaining defaults are declared modelling choices.
struct SimConfig {
    // Network and radio
    double carrier_mhz = 2450.0;
    double bandwidth_mhz = 20.0;
    std::size_t prb_count = 100;
    double bs_height_m = 20.0;
    double ue_height_m = 1.5;
    double tx_power_dbm = 45.0;
    double antenna_gain_dbi = 15.0;
    double azimuth_offset_deg = 30.0;
    double inter_site_distance_m = 500.0;
    std::size_t rings = 2;
    std::size_t ues_per_sector = 10;
    double downtilt_deg = 8.0;
    double horizontal_hpbw_deg = 70.0;
    double vertical_hpbw_deg = 10.0;
    double front_to_back_db = 20.0;
    double sigma_shadow_db = 8.0;
    double noise_figure_db = 9.0;
    double min_distance_m = 35.0;

    // Link
    std::vector<AntennaMode> modes{{2, 2}, {2, 3}, {2, 4}, {4, 2}, {4, 3}, {4, 4}};
    std::size_t subbands = 9;
    std::size_t feedback_delay = 3;
    int max_modulation_order = 6;  ///< restrict_modulation = 16qam sets 4

    // Scheduling
    std::vector<SchedulerPolicy> schedulers{SchedulerPolicy::proportional_fair,
                                            SchedulerPolicy::round_robin};
    double alpha = 1.0;
    double beta = 1.0;
    double t_c = 20.0;
    double pf_initial_average_bps = 1e3;

    // Time and sweep
    std::size_t ttis_pf = 50;
    std::size_t ttis_rr = 50;
    double tti_ms = 1.0;
    std::vector<double> speeds_kmph{0.0, 30.0, 60.0, 90.0, 120.0};
    std::size_t seeds = 1;
    std::uint64_t base_seed = 1;
    double mobility_margin_m = 100.0;

    KpiScope kpi_scope = KpiScope::all;
    std::size_t workers = 1;
    std::string data_dir;  ///< empty: built-in data directory

    std::size_t ttis_for(SchedulerPolicy p) const
    {
        return p == SchedulerPolicy::round_robin ? ttis_rr : ttis_pf;
    }
    double tti_s() const { return tti_ms * 1e-3; }
    double bandwidth_hz() const { return bandwidth_mhz * 1e6; }

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Applies one `key = value` assignment; throws ConfigError for unknown keys
/// or malformed values.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Parses key=value text ('#' starts a comment). Errors carry
/// "<source>:<line>:" prefixes.
SimConfig parse_config(std::string_view text, std::string_view source = "<config>");

SimConfig load_config(const std::filesystem::path& path);

/// Keys accepted by apply_setting.
const std::vector<std::string>& config_keys();

std::vector<AntennaMode> parse_modes(std::string_view text);
std::string format_mode(AntennaMode mode);

}  // namespace mobisim
