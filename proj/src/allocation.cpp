#include "tiledvr/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tiledvr/errors.hpp"

namespace tiledvr {

TileClassification classify_tiles(const TileLayout& layout, const ViewportPose& pose,
                                  int stride) {
    layout.validate();
    pose.validate();
    if (stride < 1) {
        throw DomainError("stride must be >= 1");
    }

    TileClassification result;
    result.stride = stride;
    result.axis = view_axis(pose);
    result.tiles.reserve(layout.tiles.size());

    for (const Tile& tile : layout.tiles) {
        TileClass tc;
        tc.tile_id = tile.id;
        tc.pixels = tile_viewport_pixels(tile.rect, pose, layout.frame, stride);
        tc.in_viewport = tc.pixels > 0;
        tc.distance = chord_distance(result.axis, tile.center);
        result.tiles.push_back(tc);
        result.rho_tot += tc.pixels;
    }
    if (result.rho_tot == 0) {
        throw ComputationError(
            "viewport intersects no sampled pixel at stride " + std::to_string(stride) +
            "; use a smaller stride");
    }
    for (TileClass& tc : result.tiles) {
        if (tc.in_viewport) {
            tc.weight = static_cast<double>(tc.pixels) /
                        static_cast<double>(result.rho_tot);
        }
    }
    return result;
}

std::vector<double> allocate(const TileClassification& classification, double r_cur_bps,
                             double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw DomainError("gamma must lie in [0, 1]");
    }
    if (!(r_cur_bps > 0.0)) {
        throw DomainError("r_cur must be positive");
    }

    bool any_in = false;
    bool any_out = false;
    double max_distance = 0.0;
    for (const TileClass& tc : classification.tiles) {
        if (tc.in_viewport) {
            any_in = true;
        } else {
            any_out = true;
            if (tc.distance <= 0.0) {
                throw ComputationError(
                    "outside tile " + std::to_string(tc.tile_id) +
                    " coincides with the view axis; classification is inconsistent");
            }
            max_distance = std::max(max_distance, tc.distance);
        }
    }
    if (!any_in) {
        throw ComputationError("viewport intersects no tile; corrupt classification");
    }

    double kappa_sum = 0.0;
    for (const TileClass& tc : classification.tiles) {
        if (!tc.in_viewport) {
            kappa_sum += max_distance / tc.distance;
        }
    }

    std::vector<double> targets(classification.tiles.size(), 0.0);
    for (std::size_t i = 0; i < classification.tiles.size(); ++i) {
        const TileClass& tc = classification.tiles[i];
        if (tc.in_viewport) {
            // The viewport share; when nothing is outside the remaining
            // budget folds back in, keeping the total at r_cur.
            const double share = any_out ? gamma : 1.0;
            targets[i] = share * r_cur_bps * tc.weight;
        } else {
            const double kappa_hat = (max_distance / tc.distance) / kappa_sum;
            targets[i] = kappa_hat * ((1.0 - gamma) * r_cur_bps);
        }
    }
    return targets;
}

int select_representation(double target_bps,
                          const std::vector<Representation>& ladder) {
    if (ladder.empty()) {
        throw DomainError("ladder is empty");
    }
    int best_id = ladder.front().id;
    double best_err = std::abs(static_cast<double>(ladder.front().bps) - target_bps);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (ladder[i].bps <= ladder[i - 1].bps) {
            throw DomainError("ladder must be sorted ascending by bitrate");
        }
        const double err = std::abs(static_cast<double>(ladder[i].bps) - target_bps);
        if (err < best_err) {  // strict: ties keep the lower bitrate
            best_err = err;
            best_id = ladder[i].id;
        }
    }
    return best_id;
}

AllocationResult allocate_and_select(const TileLayout& layout, const ViewportPose& pose,
                                     const std::vector<Representation>& ladder,
                                     double r_cur_bps, double gamma, int stride) {
    const TileClassification classification = classify_tiles(layout, pose, stride);
    const std::vector<double> targets = allocate(classification, r_cur_bps, gamma);

    AllocationResult result;
    result.gamma = gamma;
    result.r_cur_bps = r_cur_bps;
    result.rho_tot = classification.rho_tot;
    result.stride = stride;
    result.tiles.reserve(classification.tiles.size());
    for (std::size_t i = 0; i < classification.tiles.size(); ++i) {
        const TileClass& tc = classification.tiles[i];
        TileAllocation ta;
        ta.tile_id = tc.tile_id;
        ta.in_viewport = tc.in_viewport;
        ta.weight = tc.weight;
        ta.distance = tc.distance;
        ta.target_bps = targets[i];
        ta.rep_id = select_representation(ta.target_bps, ladder);
        for (const auto& rep : ladder) {
            if (rep.id == ta.rep_id) {
                ta.rep_bps = rep.bps;
            }
        }
        result.tiles.push_back(ta);
    }
    return result;
}

int select_reference(const std::vector<Representation>& ladder, double r_cur_bps) {
    return select_representation(r_cur_bps, ladder);
}

}  // namespace tiledvr
