#pragma once

#include "mobisim/geometry.hpp"
#include "mobisim/rng.hpp"

namespace mobisim {

struct MotionState {
    Vec2 position;
    double speed_kmph = 0.0;
    double heading_rad = 0.0;
};

/// Regular hexagon centered at the origin with face normals at
/// 30° + k·60°; UEs reflect off its faces.
struct MobilityRegion {
    double inradius_m = 0.0;

    bool contains(Vec2 p) const;
};

/// Layout coverage hexagon plus `margin_m`.
MobilityRegion mobility_region(const NetworkLayout& layout, double margin_m = 100.0);

/// Random-walk step: fresh uniform heading, displacement (speed/3.6)·dt,
/// specular reflection at the region boundary.
MotionState step(const MotionState& motion, double dt_s, const MobilityRegion& region,
                 CounterRng& rng);

/// Moves along the current heading with reflection (no heading redraw).
MotionState advance(const MotionState& motion, double dt_s, const MobilityRegion& region);

}  // namespace mobisim
