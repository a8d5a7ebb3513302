#pragma once

#include <cstdint>
#include <vector>

namespace tiledvr {

// Coordinate convention used throughout: right-handed, +Z up, longitude 0
// along +X, longitude increasing towards +Y. An equirectangular (ERP) frame
// maps longitude linearly to columns and latitude linearly to rows, with the
// top row at latitude +pi/2.

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
    Vec3 normalized() const;

    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend bool operator==(const Vec3& a, const Vec3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

// Full equirectangular frame, width = 2 * height, both even.
struct ErpFrame {
    int width = 0;
    int height = 0;

    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(width) * height;
    }
    void validate() const;

    friend bool operator==(const ErpFrame&, const ErpFrame&) = default;
};

// Pixel-aligned rectangle inside a frame.
struct TileRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(w) * h;
    }

    friend bool operator==(const TileRect&, const TileRect&) = default;
};

struct Tile {
    int id = 0;          // 1-based, consecutive
    TileRect rect;
    Vec3 center;         // rect midpoint mapped to the unit sphere

    friend bool operator==(const Tile&, const Tile&) = default;
};

// Partition of an ERP frame into tiles. Tiles are ordered by id (1..N), their
// rects are pairwise disjoint and cover the frame exactly.
struct TileLayout {
    ErpFrame frame;
    std::vector<Tile> tiles;

    // Re-checks every structural invariant; throws ValidationError with one
    // line per violated rule.
    void validate() const;

    friend bool operator==(const TileLayout&, const TileLayout&) = default;
};

// Viewing orientation plus angular extent of the head-mounted display.
// Angles in radians. The viewport is a rectilinear pinhole frustum with
// independent horizontal/vertical FOV; roll rotates around the view axis.
struct ViewportPose {
    double yaw = 0.0;
    double pitch = 0.0;
    double roll = 0.0;
    double hfov = 0.0;
    double vfov = 0.0;

    void validate() const;
};

struct LayoutOptions {
    // Fraction of the frame height given to each pole band. The equator band
    // gets the remaining 1 - 2 * pole_band_fraction.
    double pole_band_fraction = 0.25;
};

// Direction of the pixel whose center sits at column u + 0.5, row v + 0.5.
// Accepts fractional coordinates so rect midpoints can be mapped exactly:
// longitude = 2*pi*(u+0.5)/W - pi, latitude = pi/2 - pi*(v+0.5)/H.
Vec3 erp_to_sphere(double u, double v, const ErpFrame& frame);

// Pole/equator partition: one full-width tile per pole band, the equator band
// split into n_tiles - 2 equal-width columns. Ids: 1 = top pole, 2..N-1 =
// equator left to right, N = bottom pole.
TileLayout build_layout(const ErpFrame& frame, int n_tiles,
                        const LayoutOptions& options = {});

// Whole frame as one tile; the layout the non-tiled reference streamer uses.
TileLayout single_tile_layout(const ErpFrame& frame);

// Unit direction the pose looks along (roll has no effect on the axis).
Vec3 view_axis(const ViewportPose& pose);

// True iff dir falls inside the pose's frustum: with dir rotated into the
// camera frame (camera looks along +X), both |atan2(y_c, x_c)| <= hfov/2 and
// |atan2(z_c, x_c)| <= vfov/2 must hold with x_c > 0.
bool viewport_contains(const Vec3& dir, const ViewportPose& pose);

// Number of tile pixels whose center direction lies in the viewport, sampled
// every step-th row and column from the tile origin and scaled by step^2.
// step = 1 is the exact count.
std::int64_t tile_viewport_pixels(const TileRect& tile, const ViewportPose& pose,
                                  const ErpFrame& frame, int step);

// Euclidean (chord) length between two unit vectors; range [0, 2].
double chord_distance(const Vec3& a, const Vec3& b);

}  // namespace tiledvr
