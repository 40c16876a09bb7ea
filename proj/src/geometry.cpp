#include "mobisim/geometry.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace mobisim {

namespace {

constexpr double kDeg = kPi / 180.0;

int hex_distance(int q, int r)
{
    return std::max({std::abs(q), std::abs(r), std::abs(q + r)});
}

}  // namespace

double NetworkLayout::coverage_inradius_m() const
{
    const double d = inter_site_distance_m;
    return static_cast<double>(rings) * d * std::sqrt(3.0) / 2.0 + d / std::sqrt(3.0);
}

NetworkLayout build_layout(double inter_site_distance_m, std::size_t rings)
{
    LayoutOptions options;
    options.inter_site_distance_m = inter_site_distance_m;
    options.rings = rings;
    return build_layout(options);
}

NetworkLayout build_layout(const LayoutOptions& options)
{
    if (!(options.inter_site_distance_m > 0.0))
        throw std::invalid_argument("inter_site_distance must be positive");

    const double d = options.inter_site_distance_m;
    const int n = static_cast<int>(options.rings);

    // (ring, angle, q, r) sorted so ring k sites come before ring k + 1.
    std::vector<std::tuple<int, double, int, int>> cells;
    for (int q = -n; q <= n; ++q) {
        for (int r = -n; r <= n; ++r) {
            const int ring = hex_distance(q, r);
            if (ring > n)
                continue;
            const double x = d * (q + 0.5 * r);
            const double y = d * (std::sqrt(3.0) / 2.0 * r);
            double angle = ring == 0 ? 0.0 : std::atan2(y, x);
            if (angle < -1e-12)
                angle += 2.0 * kPi;
            cells.emplace_back(ring, angle, q, r);
        }
    }
    std::sort(cells.begin(), cells.end());

    NetworkLayout layout;
    layout.inter_site_distance_m = d;
    layout.rings = options.rings;
    layout.pattern = options.pattern;
    layout.sites.reserve(cells.size());
    for (const auto& [ring, angle, q, r] : cells) {
        Site site;
        site.position = {d * (q + 0.5 * r), d * (std::sqrt(3.0) / 2.0 * r)};
        site.height_m = options.bs_height_m;
        layout.sites.push_back(site);
    }
    for (std::size_t s = 0; s < layout.sites.size(); ++s) {
        for (int k = 0; k < 3; ++k) {
            Sector sector;
            sector.site = s;
            sector.azimuth_deg = wrap_degrees(options.azimuth_offset_deg + 120.0 * k);
            sector.downtilt_deg = options.pattern.downtilt_deg;
            sector.boresight_gain_dbi = options.pattern.boresight_gain_dbi;
            layout.sectors.push_back(sector);
        }
    }
    return layout;
}

double wrap_degrees(double angle_deg)
{
    double a = std::fmod(angle_deg, 360.0);
    if (a <= -180.0)
        a += 360.0;
    else if (a > 180.0)
        a -= 360.0;
    return a;
}

double antenna_attenuation_db(const AntennaPattern& pattern, double horizontal_angle_deg,
                              double vertical_angle_deg)
{
    const double cap = pattern.front_to_back_cap_db;
    const double h = horizontal_angle_deg / pattern.horizontal_hpbw_deg;
    const double v = (vertical_angle_deg - pattern.downtilt_deg) / pattern.vertical_hpbw_deg;
    const double horizontal = std::min(12.0 * h * h, cap);
    const double vertical = std::min(12.0 * v * v, cap);
    return std::min(horizontal + vertical, cap);
}

bool inside_site_cell(Vec2 offset, double inter_site_distance_m)
{
    const double half = 0.5 * inter_site_distance_m;
    for (int k = 0; k < 6; ++k) {
        const Vec2 normal{std::cos(k * 60.0 * kDeg), std::sin(k * 60.0 * kDeg)};
        if (offset.dot(normal) > half)
            return false;
    }
    return true;
}

std::vector<DroppedUe> drop_ues(const NetworkLayout& layout, std::size_t per_sector,
                                CounterRng& rng)
{
    if (per_sector == 0)
        throw std::invalid_argument("per_sector must be at least 1");

    const double d = layout.inter_site_distance_m;
    const double circumradius = d / std::sqrt(3.0);

    std::vector<DroppedUe> ues;
    ues.reserve(per_sector * layout.sectors.size());
    for (std::size_t s = 0; s < layout.sectors.size(); ++s) {
        const Sector& sector = layout.sectors[s];
        const Vec2 origin = layout.sites[sector.site].position;
        std::size_t placed = 0;
        while (placed < per_sector) {
            const double radius = circumradius * std::sqrt(rng.uniform());
            const double angle = 2.0 * kPi * rng.uniform();
            const Vec2 offset{radius * std::cos(angle), radius * std::sin(angle)};
            if (!inside_site_cell(offset, d))
                continue;
            const double bearing = std::atan2(offset.y, offset.x) / kDeg;
            if (std::abs(wrap_degrees(bearing - sector.azimuth_deg)) > 60.0)
                continue;
            ues.push_back({origin + offset, s});
            ++placed;
        }
    }
    return ues;
}

void write_layout_csv(const NetworkLayout& layout, std::ostream& out)
{
    out << "sector,site,site_x_m,site_y_m,height_m,azimuth_deg,downtilt_deg\n";
    for (std::size_t s = 0; s < layout.sectors.size(); ++s) {
        const Sector& sector = layout.sectors[s];
        const Site& site = layout.sites[sector.site];
        out << s << ',' << sector.site << ',' << site.position.x << ',' << site.position.y << ','
            << site.height_m << ',' << sector.azimuth_deg << ',' << sector.downtilt_deg << '\n';
    }
}

}  // namespace mobisim
