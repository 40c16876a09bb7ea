#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mobisim/rng.hpp"

namespace mobisim {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

/// Parametric sector pattern: parabolic horizontal and vertical cuts in dB,
/// summed and capped.
struct AntennaPattern {
    double horizontal_hpbw_deg = 70.0;
    double vertical_hpbw_deg = 10.0;
    double front_to_back_cap_db = 20.0;
    double boresight_gain_dbi = 15.0;
    double downtilt_deg = 8.0;
};

struct Site {
    Vec2 position;
    double height_m = 20.0;
};

struct Sector {
    std::size_t site = 0;
    double azimuth_deg = 0.0;  ///< counter-clockwise from +x
    double downtilt_deg = 0.0;
    double boresight_gain_dbi = 0.0;
};

/// Hexagonal multi-site layout. Site 0 is at the origin; sector index
/// 3·s + k belongs to site s.
struct NetworkLayout {
    std::vector<Site> sites;
    std::vector<Sector> sectors;
    double inter_site_distance_m = 500.0;
    std::size_t rings = 0;
    AntennaPattern pattern;

    std::size_t sectors_per_site() const { return 3; }

    /// Inradius of the circumscribing hexagon (face normals at 30° + k·60°)
    /// that contains every site's coverage cell.
    double coverage_inradius_m() const;
};

struct LayoutOptions {
    double inter_site_distance_m = 500.0;
    std::size_t rings = 2;
    double bs_height_m = 20.0;
    double azimuth_offset_deg = 30.0;
    AntennaPattern pattern;
};

/// Sites on hexagonal rings around the origin: 1 + 3·rings·(rings + 1).
NetworkLayout build_layout(double inter_site_distance_m, std::size_t rings);
NetworkLayout build_layout(const LayoutOptions& options);

/// Wrap an angle in degrees into (−180, 180].
double wrap_degrees(double angle_deg);

/// Pattern attenuation in dB (≥ 0). `horizontal_angle_deg` is relative to
/// boresight azimuth; `vertical_angle_deg` is the depression angle below the
/// horizon (the downtilt is subtracted inside).
double antenna_attenuation_db(const AntennaPattern& pattern, double horizontal_angle_deg,
                              double vertical_angle_deg);

struct DroppedUe {
    Vec2 position;
    std::size_t home_sector = 0;
};

/// Uniform drop of `per_sector` UEs inside each sector's dominance area
/// (the site's hexagonal cell intersected with the sector's 120° wedge).
std::vector<DroppedUe> drop_ues(const NetworkLayout& layout, std::size_t per_sector,
                                CounterRng& rng);

/// True if `p` (relative to its site) lies in the site's hexagonal cell.
bool inside_site_cell(Vec2 offset, double inter_site_distance_m);

/// CSV export: one row per sector with its site coordinates.
void write_layout_csv(const NetworkLayout& layout, std::ostream& out);

}  // namespace mobisim
