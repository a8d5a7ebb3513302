#pragma once

#include <cstdint>
#include <vector>

#include "tiledvr/geometry.hpp"
#include "tiledvr/manifest.hpp"

namespace tiledvr {

// Per-tile viewport relationship for one pose. A tile is IN_VIEWPORT iff its
// sampled intersection with the viewport is nonzero; IN tiles carry a
// coverage weight (intersection pixels / rho_tot), OUTSIDE tiles carry the
// chord distance from the view axis to the tile center.
struct TileClass {
    int tile_id = 0;
    bool in_viewport = false;
    std::int64_t pixels = 0;   // sampled viewport-intersection pixels (scaled)
    double weight = 0.0;       // coverage weight, 0 for OUTSIDE tiles
    double distance = 0.0;     // chord from view axis to tile center
};

struct TileClassification {
    std::vector<TileClass> tiles;   // layout order (ascending tile id)
    std::int64_t rho_tot = 0;       // total sampled viewport pixels
    int stride = 1;
    Vec3 axis;                      // view axis the distances refer to
};

// Outcome of the viewport-aware selection for one pose and bandwidth sample.
struct TileAllocation {
    int tile_id = 0;
    bool in_viewport = false;
    double weight = 0.0;
    double distance = 0.0;
    double target_bps = 0.0;       // pre-quantization bitrate share
    int rep_id = 0;                // selected ladder entry
    std::int64_t rep_bps = 0;      // its bitrate
};

struct AllocationResult {
    std::vector<TileAllocation> tiles;
    double gamma = 0.0;
    double r_cur_bps = 0.0;
    std::int64_t rho_tot = 0;
    int stride = 1;
};

// Splits the layout into the in-viewport and outside sets for a pose; the
// numerator and rho_tot use the same sampling stride, so weights sum to 1
// exactly. Throws ComputationError when the stride samples no viewport pixel.
TileClassification classify_tiles(const TileLayout& layout, const ViewportPose& pose,
                                  int stride);

// Per-tile bitrate targets: IN tiles split gamma * r_cur by coverage weight;
// OUTSIDE tiles split the remaining (1 - gamma) * r_cur by normalized
// inverse-distance kappa_i = max(delta) / delta_i. When no tile is outside,
// the whole budget goes to the IN tiles (still weight-proportional). Targets
// are returned in classification order and sum to r_cur.
std::vector<double> allocate(const TileClassification& classification, double r_cur_bps,
                             double gamma);

// Ladder entry minimizing |bps - target|; ties go to the lower bitrate.
int select_representation(double target_bps, const std::vector<Representation>& ladder);

// Classification, allocation and per-tile selection in one deterministic pass.
AllocationResult allocate_and_select(const TileLayout& layout, const ViewportPose& pose,
                                     const std::vector<Representation>& ladder,
                                     double r_cur_bps, double gamma, int stride);

// Non-tiled baseline: the whole-frame ladder entry closest to r_cur.
int select_reference(const std::vector<Representation>& ladder, double r_cur_bps);

}  // namespace tiledvr
