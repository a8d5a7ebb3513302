#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiledvr/geometry.hpp"

namespace tiledvr {

// Document format identifier; bumped when the schema changes.
inline constexpr const char* kManifestFormat = "tiled-vr-abr/1";

// One bitrate variant of a tile's stream.
struct Representation {
    int id = 0;               // unique within a ladder, >= 1
    std::int64_t bps = 0;     // bits per second, > 0

    friend bool operator==(const Representation&, const Representation&) = default;
};

// Extended MPD: tile geometry with spherical centers, one representation
// ladder shared by all tiles, and segment timing.
struct Manifest {
    TileLayout layout;
    std::vector<Representation> ladder;   // sorted ascending by bitrate
    double segment_duration_s = 0.0;
    double media_duration_s = 0.0;
    std::string url_template;             // must contain {tile}, {rep}, {seg}

    int segment_count() const;
    // Throws ValidationError listing every violated rule.
    void validate() const;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

// The 13 target bitrates used for both streamers, 0.9 through 25 Mbps.
std::vector<Representation> paper_target_ladder();

// Per-tile ladder under the equal-distribution rule: each target divided by
// the tile count (rounded to whole bps). Ids are preserved.
std::vector<Representation> per_tile_ladder(const std::vector<Representation>& targets,
                                            int n_tiles);

// Inverse of per_tile_ladder up to rounding; used by the reference policy to
// recover full-frame targets from a per-tile ladder.
std::vector<Representation> scale_ladder(const std::vector<Representation>& ladder,
                                         std::int64_t factor);

// Canonical document text: keys sorted, integers bare, reals at up to 9
// significant digits. Emitting the same manifest twice is byte-identical.
std::string emit_manifest(const Manifest& manifest);

// Parses and fully re-validates a manifest document. Tile centers are checked
// against the rect midpoints (1e-6) and then recomputed exactly.
Manifest parse_manifest(const std::string& text);

// URL for one segment of one tile representation.
std::string segment_url(const Manifest& manifest, int tile_id, int rep_id,
                        int seg_index);

}  // namespace tiledvr
