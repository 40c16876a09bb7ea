#include "mobisim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mobisim {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto end = comma == std::string_view::npos ? s.size() : comma;
        out.push_back(trim(s.substr(start, end - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why)
{
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                      "': " + std::string(why));
}

double parse_double(std::string_view key, std::string_view value)
{
    double v = 0.0;
    const std::string text(trim(value));
    std::size_t used = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        bad_value(key, value, "expected a number");
    }
    if (used != text.size() || !std::isfinite(v))
        bad_value(key, value, "expected a number");
    return v;
}

std::size_t parse_count(std::string_view key, std::string_view value)
{
    const std::string_view t = trim(value);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        bad_value(key, value, "expected a non-negative integer");
    return v;
}

std::vector<std::size_t> parse_count_list(std::string_view key, std::string_view value)
{
    std::vector<std::size_t> out;
    for (auto item : split_list(value))
        out.push_back(parse_count(key, item));
    return out;
}

template <typename T>
std::vector<T> unique_ordered(std::vector<T> v)
{
    std::vector<T> out;
    for (const T& x : v)
        if (std::find(out.begin(), out.end(), x) == out.end())
            out.push_back(x);
    return out;
}

void set_antennas(SimConfig& c, std::string_view key, std::string_view value, bool transmit)
{
    std::vector<std::size_t> tx, rx;
    for (const auto& m : c.modes) {
        tx.push_back(m.tx);
        rx.push_back(m.rx);
    }
    (transmit ? tx : rx) = parse_count_list(key, value);
    tx = unique_ordered(tx);
    rx = unique_ordered(rx);
    c.modes.clear();
    for (auto t : tx)
        for (auto r : rx)
            c.modes.push_back({t, r});
}

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        auto real = [&t](const char* key, double SimConfig::*field) {
            t[key] = [field](SimConfig& c, std::string_view k, std::string_view v) {
                c.*field = parse_double(k, v);
            };
        };
        auto count = [&t](const char* key, std::size_t SimConfig::*field) {
            t[key] = [field](SimConfig& c, std::string_view k, std::string_view v) {
                c.*field = parse_count(k, v);
            };
        };
        real("carrier_mhz", &SimConfig::carrier_mhz);
        real("bandwidth_mhz", &SimConfig::bandwidth_mhz);
        count("prb_count", &SimConfig::prb_count);
        real("bs_height_m", &SimConfig::bs_height_m);
        real("ue_height_m", &SimConfig::ue_height_m);
        real("tx_power_dbm", &SimConfig::tx_power_dbm);
        real("antenna_gain_dbi", &SimConfig::antenna_gain_dbi);
        real("azimuth_offset_deg", &SimConfig::azimuth_offset_deg);
        real("inter_site_distance_m", &SimConfig::inter_site_distance_m);
        count("rings", &SimConfig::rings);
        count("ues_per_sector", &SimConfig::ues_per_sector);
        real("downtilt_deg", &SimConfig::downtilt_deg);
        real("horizontal_hpbw_deg", &SimConfig::horizontal_hpbw_deg);
        real("vertical_hpbw_deg", &SimConfig::vertical_hpbw_deg);
        real("front_to_back_db", &SimConfig::front_to_back_db);
        real("sigma_shadow_db", &SimConfig::sigma_shadow_db);
        real("noise_figure_db", &SimConfig::noise_figure_db);
        real("min_distance_m", &SimConfig::min_distance_m);
        count("subbands", &SimConfig::subbands);
        count("feedback_delay", &SimConfig::feedback_delay);
        real("alpha", &SimConfig::alpha);
        real("beta", &SimConfig::beta);
        real("t_c", &SimConfig::t_c);
        real("pf_initial_average_bps", &SimConfig::pf_initial_average_bps);
        count("ttis_pf", &SimConfig::ttis_pf);
        count("ttis_rr", &SimConfig::ttis_rr);
        real("tti_ms", &SimConfig::tti_ms);
        count("seeds", &SimConfig::seeds);
        real("mobility_margin_m", &SimConfig::mobility_margin_m);
        count("workers", &SimConfig::workers);

        t["ttis"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            c.ttis_pf = c.ttis_rr = parse_count(k, v);
        };
        t["base_seed"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            c.base_seed = parse_count(k, v);
        };
        t["transmission_modes"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            try {
                c.modes = parse_modes(v);
            } catch (const ConfigError& e) {
                bad_value(k, v, e.what());
            }
        };
        t["tx_antennas"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            set_antennas(c, k, v, true);
        };
        t["rx_antennas"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            set_antennas(c, k, v, false);
        };
        t["scheduler"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            std::vector<SchedulerPolicy> out;
            for (auto item : split_list(v)) {
                try {
                    out.push_back(parse_scheduler(item));
                } catch (const std::invalid_argument&) {
                    bad_value(k, v, "expected rr and/or pf");
                }
            }
            c.schedulers = unique_ordered(out);
        };
        t["speed_kmph"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            std::vector<double> out;
            for (auto item : split_list(v))
                out.push_back(parse_double(k, item));
            c.speeds_kmph = out;
        };
        t["kpi_scope"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            const auto s = trim(v);
            if (s == "all")
                c.kpi_scope = KpiScope::all;
            else if (s == "center")
                c.kpi_scope = KpiScope::center;
            else
                bad_value(k, v, "expected all or center");
        };
        t["restrict_modulation"] = [](SimConfig& c, std::string_view k, std::string_view v) {
            const auto s = trim(v);
            if (s == "none")
                c.max_modulation_order = 6;
            else if (s == "16qam")
                c.max_modulation_order = 4;
            else
                bad_value(k, v, "expected none or 16qam");
        };
        t["data_dir"] = [](SimConfig& c, std::string_view, std::string_view v) {
            c.data_dir = std::string(trim(v));
        };
        return t;
    }();
    return table;
}

void require(bool ok, const char* key, const std::string& why)
{
    if (!ok)
        throw ConfigKeyError(key, "key '" + std::string(key) + "': " + why);
}

}  // namespace

std::vector<AntennaMode> parse_modes(std::string_view text)
{
    std::vector<AntennaMode> modes;
    for (auto item : split_list(text)) {
        const auto x = item.find_first_of("xX×");
        if (x == std::string_view::npos)
            throw ConfigError("antenna mode '" + std::string(item) + "' is not of the form TxR");
        const auto tail = item.substr(x).rfind("×", 0) == 0 ? x + std::string_view("×").size()
                                                             : x + 1;
        AntennaMode m;
        m.tx = parse_count("transmission_modes", item.substr(0, x));
        m.rx = parse_count("transmission_modes", item.substr(tail));
        modes.push_back(m);
    }
    return unique_ordered(modes);
}

std::string format_mode(AntennaMode mode)
{
    return std::to_string(mode.tx) + "x" + std::to_string(mode.rx);
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters())
            k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_setting(SimConfig& config, std::string_view key, std::string_view value)
{
    const auto& table = setters();
    const auto it = table.find(trim(key));
    if (it == table.end())
        throw ConfigError("unknown key '" + std::string(trim(key)) + "'");
    it->second(config, trim(key), trim(value));
}

void SimConfig::validate() const
{
    require(carrier_mhz > 0.0, "carrier_mhz", "must be positive");
    require(bandwidth_mhz > 0.0, "bandwidth_mhz", "must be positive");
    require(prb_count >= 1, "prb_count", "must be at least 1");
    require(bs_height_m > 0.0 && bs_height_m < 250.0, "bs_height_m", "must lie in (0, 250) m");
    require(ue_height_m >= 0.0 && ue_height_m < bs_height_m, "ue_height_m",
            "must lie in [0, bs_height_m)");
    require(inter_site_distance_m > 0.0, "inter_site_distance_m", "must be positive");
    require(ues_per_sector >= 1, "ues_per_sector", "must be at least 1");
    require(horizontal_hpbw_deg > 0.0, "horizontal_hpbw_deg", "must be positive");
    require(vertical_hpbw_deg > 0.0, "vertical_hpbw_deg", "must be positive");
    require(front_to_back_db >= 0.0, "front_to_back_db", "must be non-negative");
    require(sigma_shadow_db >= 0.0, "sigma_shadow_db", "must be non-negative");
    require(min_distance_m > 0.0, "min_distance_m", "must be positive");
    require(!modes.empty(), "transmission_modes", "at least one mode required");
    for (const auto& m : modes) {
        require(m.tx == 2 || m.tx == 4, "tx_antennas",
                "unsupported count " + std::to_string(m.tx) + " (codebooks exist for 2 and 4)");
        require(m.rx >= 2 && m.rx <= 4, "rx_antennas",
                "unsupported count " + std::to_string(m.rx) + " (expected 2, 3 or 4)");
    }
    require(subbands >= 1 && subbands <= prb_count, "subbands", "must lie in [1, prb_count]");
    require(!schedulers.empty(), "scheduler", "at least one scheduler required");
    require(alpha >= 0.0, "alpha", "must be non-negative");
    require(beta >= 0.0, "beta", "must be non-negative");
    require(t_c >= 2.0, "t_c", "must be at least 2");
    require(pf_initial_average_bps > 0.0, "pf_initial_average_bps", "must be positive");
    require(ttis_pf >= 1, "ttis_pf", "must be at least 1");
    require(ttis_rr >= 1, "ttis_rr", "must be at least 1");
    require(tti_ms > 0.0, "tti_ms", "must be positive");
    require(!speeds_kmph.empty(), "speed_kmph", "at least one speed required");
    for (double v : speeds_kmph)
        require(v >= 0.0, "speed_kmph", "speeds must be non-negative");
    require(seeds >= 1, "seeds", "must be at least 1");
    require(mobility_margin_m >= 0.0, "mobility_margin_m", "must be non-negative");
    require(workers >= 1, "workers", "must be at least 1");
}

SimConfig parse_config(std::string_view text, std::string_view source)
{
    SimConfig config;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    const std::string where(source);
    std::map<std::string, int, std::less<>> assigned_at;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos)
            body = body.substr(0, hash);
        body = trim(body);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ":" + std::to_string(lineno) +
                              ": malformed line (expected key = value)");
        const auto key = trim(body.substr(0, eq));
        const auto value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(where + ":" + std::to_string(lineno) +
                              ": malformed line (expected key = value)");
        try {
            apply_setting(config, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + ":" + std::to_string(lineno) + ": " + e.what());
        }
        assigned_at[std::string(key)] = lineno;
    }
    try {
        config.validate();
    } catch (const ConfigKeyError& e) {
        // Antenna counts can come from any of the three mode keys.
        int line_of_key = 0;
        for (const std::string& alias :
             e.key() == "tx_antennas" || e.key() == "rx_antennas"
                 ? std::vector<std::string>{"transmission_modes", "tx_antennas", "rx_antennas"}
                 : std::vector<std::string>{e.key(), e.key() == "ttis_pf" || e.key() == "ttis_rr"
                                                         ? std::string("ttis")
                                                         : e.key()}) {
            if (const auto it = assigned_at.find(alias); it != assigned_at.end())
                line_of_key = std::max(line_of_key, it->second);
        }
        if (line_of_key > 0)
            throw ConfigError(where + ":" + std::to_string(line_of_key) + ": " + e.what());
        throw ConfigError(where + ": " + e.what());
    }
    return config;
}

SimConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

}  // namespace mobisim
