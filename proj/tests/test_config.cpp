#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <fstream>
#include <string>

#include "mobisim/config.hpp"

using namespace mobisim;

namespace {

std::string error_of(const std::string& text)
{
    try {
        parse_config(text, "t.cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("empty configuration yields the reference parameters")
{
    const SimConfig c = parse_config("", "empty");
    CHECK(c.carrier_mhz == 2450.0);
    CHECK(c.bandwidth_mhz == 20.0);
    CHECK(c.bs_height_m == 20.0);
    CHECK(c.ue_height_m == 1.5);
    CHECK(c.tx_power_dbm == 45.0);
    CHECK(c.antenna_gain_dbi == 15.0);
    CHECK(c.azimuth_offset_deg == 30.0);
    CHECK(c.inter_site_distance_m == 500.0);
    CHECK(c.rings == 2);
    CHECK(c.ues_per_sector == 10);
    CHECK(c.ttis_pf == 50);
    CHECK(c.ttis_rr == 50);
    CHECK(c.tti_ms == 1.0);
    CHECK(c.modes.size() == 6);
    CHECK(c.modes.front() == AntennaMode{2, 2});
    CHECK(c.modes.back() == AntennaMode{4, 4});
    CHECK(c.feedback_delay == 3);
    CHECK(c.t_c == 20.0);
    CHECK(c.pf_initial_average_bps == 1e3);
    CHECK(c.subbands == 9);
    CHECK(c.sigma_shadow_db == 8.0);
    CHECK(c.kpi_scope == KpiScope::all);
    CHECK(c.max_modulation_order == 6);
    CHECK(c.schedulers.size() == 2);
    CHECK(c.speeds_kmph == std::vector<double>{0, 30, 60, 90, 120});
    CHECK(c.bandwidth_hz() == 20e6);
    CHECK(c.tti_s() == 1e-3);
}

TEST_CASE("lists and overrides")
{
    const SimConfig c = parse_config(R"(
# desk sweep
speed_kmph = 0,30,60,120
scheduler = rr
transmission_modes = 2x4, 4x2   # two modes
ttis_rr = 20
kpi_scope = center
restrict_modulation = 16qam
)");
    CHECK(c.speeds_kmph == std::vector<double>{0, 30, 60, 120});
    CHECK(c.schedulers == std::vector<SchedulerPolicy>{SchedulerPolicy::round_robin});
    REQUIRE(c.modes.size() == 2);
    CHECK(c.modes[0] == AntennaMode{2, 4});
    CHECK(c.modes[1] == AntennaMode{4, 2});
    CHECK(c.ttis_for(SchedulerPolicy::round_robin) == 20);
    CHECK(c.ttis_for(SchedulerPolicy::proportional_fair) == 50);
    CHECK(c.kpi_scope == KpiScope::center);
    CHECK(c.max_modulation_order == 4);

    const SimConfig d = parse_config("tx_antennas = 2\nrx_antennas = 3,4\n");
    REQUIRE(d.modes.size() == 2);
    CHECK(d.modes[0] == AntennaMode{2, 3});
    CHECK(d.modes[1] == AntennaMode{2, 4});

    CHECK(parse_modes("4×3") == std::vector<AntennaMode>{{4, 3}});
    CHECK(format_mode({4, 3}) == "4x3");
    CHECK(parse_config("ttis = 7").ttis_rr == 7);
}

TEST_CASE("invalid values name the key and line")
{
    const auto tx3 = error_of("carrier_mhz = 2450\ntx_antennas = 3\n");
    CHECK(contains(tx3, "t.cfg:2:"));
    CHECK(contains(tx3, "tx_antennas"));

    const auto unknown = error_of("\n\nfoo = 1\n");
    CHECK(contains(unknown, "t.cfg:3:"));
    CHECK(contains(unknown, "foo"));

    CHECK(contains(error_of("seeds = -1"), "seeds"));
    CHECK(contains(error_of("alpha = abc"), "alpha"));
    CHECK(contains(error_of("t_c = 1"), "t_c"));
    CHECK(contains(error_of("scheduler = maxci"), "scheduler"));
    CHECK(contains(error_of("transmission_modes = 2x5"), "rx_antennas"));
    CHECK(contains(error_of("transmission_modes = 22"), "transmission_modes"));
    CHECK(contains(error_of("speed_kmph = 10,-5"), "speed_kmph"));
    CHECK(contains(error_of("bs_height_m = 300"), "bs_height_m"));
    CHECK(contains(error_of("just words"), "t.cfg:1:"));
    CHECK(contains(error_of("key ="), "t.cfg:1:"));
}

TEST_CASE("every key is accepted by the parser")
{
    for (const auto& key : {"carrier_mhz", "tx_power_dbm", "feedback_delay", "t_c", "seeds",
                            "workers", "speed_kmph", "scheduler", "transmission_modes",
                            "kpi_scope", "ttis_pf", "ttis_rr", "subbands", "rings"})
        CHECK(std::find(config_keys().begin(), config_keys().end(), key) != config_keys().end());
    SimConfig c;
    CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), ConfigError);
}

TEST_CASE("loading from disk")
{
    CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
    const auto c = load_config(std::string(MOBISIM_TEST_CONFIG_DIR) + "/desk.cfg");
    CHECK(c.rings == 1);
    CHECK_NOTHROW(c.validate());
}
