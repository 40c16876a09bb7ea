#include "mobisim/mobility.hpp"

#include <cmath>
#include <stdexcept>

namespace mobisim {

namespace {

Vec2 face_normal(int k)
{
    const double a = (30.0 + 60.0 * k) * kPi / 180.0;
    return {std::cos(a), std::sin(a)};
}

}  // namespace

bool MobilityRegion::contains(Vec2 p) const
{
    for (int k = 0; k < 6; ++k)
        if (p.dot(face_normal(k)) > inradius_m + 1e-9)
            return false;
    return true;
}

MobilityRegion mobility_region(const NetworkLayout& layout, double margin_m)
{
    return {layout.coverage_inradius_m() + margin_m};
}

MotionState advance(const MotionState& motion, double dt_s, const MobilityRegion& region)
{
    if (!(dt_s > 0.0))
        throw std::invalid_argument("time step must be positive");
    if (motion.speed_kmph < 0.0)
        throw std::invalid_argument("speed must be non-negative");

    MotionState next = motion;
    const double length = motion.speed_kmph / 3.6 * dt_s;
    if (length == 0.0)
        return next;

    Vec2 direction{std::cos(motion.heading_rad), std::sin(motion.heading_rad)};
    Vec2 p = motion.position + length * direction;
    // Each reflection strictly reduces the excursion; a handful suffices.
    for (int pass = 0; pass < 8; ++pass) {
        bool reflected = false;
        for (int k = 0; k < 6; ++k) {
            const Vec2 n = face_normal(k);
            const double excess = p.dot(n) - region.inradius_m;
            if (excess > 0.0) {
                p = p - (2.0 * excess) * n;
                direction = direction - (2.0 * direction.dot(n)) * n;
                reflected = true;
            }
        }
        if (!reflected)
            break;
    }
    next.position = p;
    next.heading_rad = std::atan2(direction.y, direction.x);
    return next;
}

MotionState step(const MotionState& motion, double dt_s, const MobilityRegion& region,
                 CounterRng& rng)
{
    MotionState turned = motion;
    turned.heading_rad = 2.0 * kPi * rng.uniform();
    return advance(turned, dt_s, region);
}

}  // namespace mobisim
