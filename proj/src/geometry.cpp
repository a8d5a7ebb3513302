#include "tiledvr/geometry.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tiledvr/errors.hpp"

namespace tiledvr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUnitNormTol = 1e-6;

// Orthonormal camera basis: right-handed, camera looks along `forward`.
struct CameraBasis {
    Vec3 forward;  // +X of the camera frame
    Vec3 left;     // +Y
    Vec3 up;       // +Z
};

// Columns of Rz(yaw) * Ry(-pitch) * Rx(roll); transposing (dotting a world
// direction against each column) moves the direction into the camera frame.
CameraBasis camera_basis(const ViewportPose& pose) {
    const double cy = std::cos(pose.yaw), sy = std::sin(pose.yaw);
    const double cp = std::cos(pose.pitch), sp = std::sin(pose.pitch);
    const double cr = std::cos(pose.roll), sr = std::sin(pose.roll);
    CameraBasis b;
    b.forward = {cy * cp, sy * cp, sp};
    b.left = {-sy * cr - cy * sp * sr, cy * cr - sy * sp * sr, cp * sr};
    b.up = {sy * sr - cy * sp * cr, -cy * sr - sy * sp * cr, cp * cr};
    return b;
}

void require_unit(const Vec3& v, const char* what) {
    if (std::abs(v.norm() - 1.0) > kUnitNormTol) {
        throw DomainError(std::string(what) + ": vector is not unit-norm");
    }
}

// Shared membership predicate; tile_viewport_pixels must classify each pixel
// exactly as viewport_contains does, so both go through this one function.
// |atan2(y, x)| <= fov/2 with x > 0 is equivalent to |y| <= x tan(fov/2);
// fov/2 < pi/2 keeps the tangent finite.
bool frustum_contains(const CameraBasis& b, double tan_h, double tan_v,
                      const Vec3& dir) {
    const double xc = b.forward.dot(dir);
    if (xc <= 0.0) {
        return false;
    }
    const double yc = b.left.dot(dir);
    const double zc = b.up.dot(dir);
    return std::abs(yc) <= xc * tan_h && std::abs(zc) <= xc * tan_v;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw DomainError("cannot normalize the zero vector");
    }
    return {x / n, y / n, z / n};
}

void ErpFrame::validate() const {
    if (width <= 0 || height <= 0) {
        throw DomainError("frame dimensions must be positive");
    }
    if (width != 2 * height) {
        throw DomainError("frame width must be exactly twice its height (ERP), got " +
                          std::to_string(width) + "x" + std::to_string(height));
    }
    if (width % 2 != 0 || height % 2 != 0) {
        throw DomainError("frame dimensions must be even");
    }
}

void ViewportPose::validate() const {
    if (!(hfov > 0.0 && hfov < kPi)) {
        throw DomainError("hfov must lie in (0, pi)");
    }
    if (!(vfov > 0.0 && vfov < kPi)) {
        throw DomainError("vfov must lie in (0, pi)");
    }
    if (!(pitch >= -kPi / 2 && pitch <= kPi / 2)) {
        throw DomainError("pitch must lie in [-pi/2, pi/2]");
    }
}

Vec3 erp_to_sphere(double u, double v, const ErpFrame& frame) {
    frame.validate();
    if (!(u >= 0.0 && u < frame.width) || !(v >= 0.0 && v < frame.height)) {
        throw DomainError("pixel (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") outside frame " + std::to_string(frame.width) + "x" +
                          std::to_string(frame.height));
    }
    const double lon = 2.0 * kPi * (u + 0.5) / frame.width - kPi;
    const double lat = kPi / 2 - kPi * (v + 0.5) / frame.height;
    const double cl = std::cos(lat);
    return {cl * std::cos(lon), cl * std::sin(lon), std::sin(lat)};
}

namespace {

Vec3 rect_center_direction(const TileRect& rect, const ErpFrame& frame) {
    return erp_to_sphere(rect.x + rect.w / 2.0 - 0.5, rect.y + rect.h / 2.0 - 0.5,
                         frame);
}

}  // namespace

void TileLayout::validate() const {
    frame.validate();
    std::vector<std::string> problems;
    if (tiles.empty()) {
        throw ValidationError("layout has no tiles");
    }
    std::int64_t area = 0;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const Tile& t = tiles[i];
        if (t.id != static_cast<int>(i) + 1) {
            problems.push_back("tile ids must be consecutive from 1; position " +
                               std::to_string(i) + " has id " + std::to_string(t.id));
        }
        if (t.rect.w <= 0 || t.rect.h <= 0) {
            problems.push_back("tile " + std::to_string(t.id) + " has empty rect");
        }
        if (t.rect.x < 0 || t.rect.y < 0 || t.rect.x + t.rect.w > frame.width ||
            t.rect.y + t.rect.h > frame.height) {
            problems.push_back("tile " + std::to_string(t.id) + " exceeds the frame");
        }
        area += t.rect.pixel_count();
        if (std::abs(t.center.norm() - 1.0) > 1e-9) {
            problems.push_back("tile " + std::to_string(t.id) +
                               " center not on unit sphere");
        } else {
            const Vec3 want = rect_center_direction(t.rect, frame);
            if (chord_distance(t.center, want) > 1e-9) {
                problems.push_back("tile " + std::to_string(t.id) +
                                   " center does not match its rect midpoint");
            }
        }
        for (std::size_t j = i + 1; j < tiles.size(); ++j) {
            const TileRect& a = t.rect;
            const TileRect& b = tiles[j].rect;
            const bool overlap = a.x < b.x + b.w && b.x < a.x + a.w &&
                                 a.y < b.y + b.h && b.y < a.y + a.h;
            if (overlap) {
                problems.push_back("tiles " + std::to_string(t.id) + " and " +
                                   std::to_string(tiles[j].id) + " overlap");
            }
        }
    }
    if (area != frame.pixel_count()) {
        problems.push_back("tile areas sum to " + std::to_string(area) +
                           ", expected " + std::to_string(frame.pixel_count()));
    }
    if (!problems.empty()) {
        std::string msg = "invalid tile layout:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ValidationError(msg);
    }
}

TileLayout build_layout(const ErpFrame& frame, int n_tiles,
                        const LayoutOptions& options) {
    frame.validate();
    if (n_tiles < 3) {
        throw ConfigError("layout needs at least 3 tiles (two poles plus equator), got " +
                          std::to_string(n_tiles));
    }
    if (!(options.pole_band_fraction > 0.0 && options.pole_band_fraction < 0.5)) {
        throw ConfigError("pole band fraction must lie in (0, 0.5)");
    }
    const double pole_rows_exact = options.pole_band_fraction * frame.height;
    const int pole_rows = static_cast<int>(std::llround(pole_rows_exact));
    if (std::abs(pole_rows_exact - pole_rows) > 1e-9 || pole_rows < 1) {
        throw ConfigError("frame height " + std::to_string(frame.height) +
                          " does not split into integral pole bands at fraction " +
                          std::to_string(options.pole_band_fraction));
    }
    const int equator_rows = frame.height - 2 * pole_rows;
    const int columns = n_tiles - 2;
    if (frame.width % columns != 0) {
        throw ConfigError("frame width " + std::to_string(frame.width) +
                          " is not divisible into " + std::to_string(columns) +
                          " equal equator tiles");
    }
    const int col_w = frame.width / columns;

    TileLayout layout;
    layout.frame = frame;
    layout.tiles.reserve(static_cast<std::size_t>(n_tiles));

    const auto add = [&](int id, TileRect rect) {
        layout.tiles.push_back({id, rect, rect_center_direction(rect, frame)});
    };
    add(1, {0, 0, frame.width, pole_rows});
    for (int c = 0; c < columns; ++c) {
        add(2 + c, {c * col_w, pole_rows, col_w, equator_rows});
    }
    add(n_tiles, {0, frame.height - pole_rows, frame.width, pole_rows});
    return layout;
}

TileLayout single_tile_layout(const ErpFrame& frame) {
    frame.validate();
    TileLayout layout;
    layout.frame = frame;
    TileRect rect{0, 0, frame.width, frame.height};
    layout.tiles.push_back({1, rect, rect_center_direction(rect, frame)});
    return layout;
}

Vec3 view_axis(const ViewportPose& pose) {
    const double cp = std::cos(pose.pitch);
    return {cp * std::cos(pose.yaw), cp * std::sin(pose.yaw), std::sin(pose.pitch)};
}

bool viewport_contains(const Vec3& dir, const ViewportPose& pose) {
    pose.validate();
    require_unit(dir, "viewport_contains");
    return frustum_contains(camera_basis(pose), std::tan(pose.hfov / 2),
                            std::tan(pose.vfov / 2), dir);
}

std::int64_t tile_viewport_pixels(const TileRect& tile, const ViewportPose& pose,
                                  const ErpFrame& frame, int step) {
    frame.validate();
    pose.validate();
    if (step < 1) {
        throw DomainError("sampling step must be >= 1");
    }
    if (tile.w <= 0 || tile.h <= 0 || tile.x < 0 || tile.y < 0 ||
        tile.x + tile.w > frame.width || tile.y + tile.h > frame.height) {
        throw DomainError("tile rect does not fit the frame");
    }

    const CameraBasis b = camera_basis(pose);
    const double tan_h = std::tan(pose.hfov / 2);
    const double tan_v = std::tan(pose.vfov / 2);

    // Pixel-center directions factor into per-column longitude terms and
    // per-row latitude terms; precompute both to keep the inner loop cheap.
    const int cols = (tile.w + step - 1) / step;
    const int rows = (tile.h + step - 1) / step;
    std::vector<double> cos_lon(static_cast<std::size_t>(cols));
    std::vector<double> sin_lon(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) {
        const double u = tile.x + static_cast<double>(c) * step;
        const double lon = 2.0 * kPi * (u + 0.5) / frame.width - kPi;
        cos_lon[static_cast<std::size_t>(c)] = std::cos(lon);
        sin_lon[static_cast<std::size_t>(c)] = std::sin(lon);
    }

    std::int64_t count = 0;
    for (int r = 0; r < rows; ++r) {
        const double v = tile.y + static_cast<double>(r) * step;
        const double lat = kPi / 2 - kPi * (v + 0.5) / frame.height;
        const double cl = std::cos(lat);
        const double sl = std::sin(lat);
        for (int c = 0; c < cols; ++c) {
            const std::size_t ci = static_cast<std::size_t>(c);
            const Vec3 dir{cl * cos_lon[ci], cl * sin_lon[ci], sl};
            if (frustum_contains(b, tan_h, tan_v, dir)) {
                ++count;
            }
        }
    }
    return count * static_cast<std::int64_t>(step) * step;
}

double chord_distance(const Vec3& a, const Vec3& b) {
    require_unit(a, "chord_distance");
    require_unit(b, "chord_distance");
    return (a - b).norm();
}

}  // namespace tiledvr
