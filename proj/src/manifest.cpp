#include "tiledvr/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "tiledvr/canonical.hpp"
#include "tiledvr/errors.hpp"

namespace tiledvr {

namespace {

using nlohmann::json;

constexpr double kCenterTol = 1e-6;

bool has_placeholder(const std::string& tpl, const std::string& key) {
    return tpl.find(key) != std::string::npos;
}

void collect_ladder_problems(const std::vector<Representation>& ladder,
                             std::vector<std::string>& problems) {
    if (ladder.empty()) {
        problems.push_back("ladder is empty");
        return;
    }
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i].id < 1) {
            problems.push_back("representation at position " + std::to_string(i) +
                               " has id < 1");
        }
        if (ladder[i].bps <= 0) {
            problems.push_back("representation " + std::to_string(ladder[i].id) +
                               " has non-positive bitrate");
        }
        for (std::size_t j = i + 1; j < ladder.size(); ++j) {
            if (ladder[i].id == ladder[j].id) {
                problems.push_back("duplicate representation id " +
                                   std::to_string(ladder[i].id));
            }
        }
        if (i > 0 && ladder[i].bps <= ladder[i - 1].bps) {
            problems.push_back("ladder bitrates must be strictly increasing at id " +
                               std::to_string(ladder[i].id));
        }
    }
}

std::string replace_all(std::string s, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = s.find(key, pos)) != std::string::npos) {
        s.replace(pos, key.size(), value);
        pos += value.size();
    }
    return s;
}

}  // namespace

int Manifest::segment_count() const {
    return static_cast<int>(std::ceil(media_duration_s / segment_duration_s));
}

void Manifest::validate() const {
    std::vector<std::string> problems;
    try {
        layout.validate();
    } catch (const Error& e) {
        problems.push_back(e.what());
    }
    collect_ladder_problems(ladder, problems);
    if (!(segment_duration_s > 0.0)) {
        problems.push_back("segment duration must be positive");
    }
    if (!(media_duration_s > 0.0)) {
        problems.push_back("media duration must be positive");
    }
    for (const char* key : {"{tile}", "{rep}", "{seg}"}) {
        if (!has_placeholder(url_template, key)) {
            problems.push_back(std::string("url template lacks the ") + key +
                               " placeholder");
        }
    }
    if (!problems.empty()) {
        std::string msg = "invalid manifest:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ValidationError(msg);
    }
}

std::vector<Representation> paper_target_ladder() {
    const double mbps[] = {0.9, 2, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25};
    std::vector<Representation> ladder;
    int id = 1;
    for (double m : mbps) {
        ladder.push_back({id++, static_cast<std::int64_t>(std::llround(m * 1e6))});
    }
    return ladder;
}

std::vector<Representation> per_tile_ladder(const std::vector<Representation>& targets,
                                            int n_tiles) {
    if (n_tiles < 1) {
        throw DomainError("tile count must be >= 1");
    }
    std::vector<Representation> out;
    out.reserve(targets.size());
    for (const auto& rep : targets) {
        out.push_back({rep.id, std::llround(static_cast<double>(rep.bps) / n_tiles)});
    }
    return out;
}

std::vector<Representation> scale_ladder(const std::vector<Representation>& ladder,
                                         std::int64_t factor) {
    if (factor < 1) {
        throw DomainError("ladder scale factor must be >= 1");
    }
    std::vector<Representation> out;
    out.reserve(ladder.size());
    for (const auto& rep : ladder) {
        out.push_back({rep.id, rep.bps * factor});
    }
    return out;
}

std::string emit_manifest(const Manifest& manifest) {
    manifest.validate();
    json doc;
    doc["format"] = kManifestFormat;
    doc["frame"] = {{"width", manifest.layout.frame.width},
                    {"height", manifest.layout.frame.height}};
    doc["segment_duration_s"] = manifest.segment_duration_s;
    doc["media_duration_s"] = manifest.media_duration_s;
    doc["url_template"] = manifest.url_template;
    json ladder = json::array();
    for (const auto& rep : manifest.ladder) {
        ladder.push_back({{"id", rep.id}, {"bps", rep.bps}});
    }
    doc["ladder"] = std::move(ladder);
    json tiles = json::array();
    for (const auto& tile : manifest.layout.tiles) {
        tiles.push_back({{"id", tile.id},
                         {"x", tile.rect.x},
                         {"y", tile.rect.y},
                         {"w", tile.rect.w},
                         {"h", tile.rect.h},
                         {"center", {tile.center.x, tile.center.y, tile.center.z}}});
    }
    doc["tiles"] = std::move(tiles);
    return canonical_json(doc);
}

namespace {

[[noreturn]] void syntax_error(const std::string& text, const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = e.byte > 0 ? std::min(text.size(), e.byte - 1) : 0;
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw ParseError("manifest syntax error at line " + std::to_string(line) +
                     ", column " + std::to_string(col) + ": " + e.what());
}

// Typed field access collecting problems instead of throwing per field.
class FieldReader {
public:
    explicit FieldReader(std::vector<std::string>& problems) : problems_(problems) {}

    std::int64_t integer(const json& obj, const std::string& key, const std::string& ctx) {
        const json* v = find(obj, key, ctx);
        if (v == nullptr) return 0;
        if (!v->is_number_integer() && !v->is_number_unsigned()) {
            problems_.push_back(ctx + "." + key + " must be an integer");
            return 0;
        }
        return v->get<std::int64_t>();
    }

    double real(const json& obj, const std::string& key, const std::string& ctx) {
        const json* v = find(obj, key, ctx);
        if (v == nullptr) return 0.0;
        if (!v->is_number()) {
            problems_.push_back(ctx + "." + key + " must be a number");
            return 0.0;
        }
        return v->get<double>();
    }

    std::string text(const json& obj, const std::string& key, const std::string& ctx) {
        const json* v = find(obj, key, ctx);
        if (v == nullptr) return {};
        if (!v->is_string()) {
            problems_.push_back(ctx + "." + key + " must be a string");
            return {};
        }
        return v->get<std::string>();
    }

    const json* array(const json& obj, const std::string& key, const std::string& ctx) {
        const json* v = find(obj, key, ctx);
        if (v == nullptr) return nullptr;
        if (!v->is_array()) {
            problems_.push_back(ctx + "." + key + " must be an array");
            return nullptr;
        }
        return v;
    }

private:
    const json* find(const json& obj, const std::string& key, const std::string& ctx) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            problems_.push_back(ctx + " is missing field '" + key + "'");
            return nullptr;
        }
        return &*it;
    }

    std::vector<std::string>& problems_;
};

}  // namespace

Manifest parse_manifest(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        syntax_error(text, e);
    }
    if (!doc.is_object()) {
        throw ValidationError("manifest document root must be an object");
    }

    std::vector<std::string> problems;
    FieldReader read(problems);

    const std::string format = read.text(doc, "format", "document");
    if (!format.empty() && format != kManifestFormat) {
        problems.push_back("unsupported format '" + format + "', expected '" +
                           std::string(kManifestFormat) + "'");
    }

    Manifest m;
    if (doc.contains("frame") && doc["frame"].is_object()) {
        m.layout.frame.width =
            static_cast<int>(read.integer(doc["frame"], "width", "frame"));
        m.layout.frame.height =
            static_cast<int>(read.integer(doc["frame"], "height", "frame"));
    } else {
        problems.push_back("document is missing the frame object");
    }
    m.segment_duration_s = read.real(doc, "segment_duration_s", "document");
    m.media_duration_s = read.real(doc, "media_duration_s", "document");
    m.url_template = read.text(doc, "url_template", "document");

    if (const json* ladder = read.array(doc, "ladder", "document")) {
        for (std::size_t i = 0; i < ladder->size(); ++i) {
            const json& entry = (*ladder)[i];
            const std::string ctx = "ladder[" + std::to_string(i) + "]";
            if (!entry.is_object()) {
                problems.push_back(ctx + " must be an object");
                continue;
            }
            Representation rep;
            rep.id = static_cast<int>(read.integer(entry, "id", ctx));
            rep.bps = read.integer(entry, "bps", ctx);
            m.ladder.push_back(rep);
        }
    }

    bool frame_ok = false;
    try {
        m.layout.frame.validate();
        frame_ok = true;
    } catch (const Error& e) {
        problems.push_back(e.what());
    }

    if (const json* tiles = read.array(doc, "tiles", "document")) {
        for (std::size_t i = 0; i < tiles->size(); ++i) {
            const json& entry = (*tiles)[i];
            const std::string ctx = "tiles[" + std::to_string(i) + "]";
            if (!entry.is_object()) {
                problems.push_back(ctx + " must be an object");
                continue;
            }
            Tile tile;
            tile.id = static_cast<int>(read.integer(entry, "id", ctx));
            tile.rect.x = static_cast<int>(read.integer(entry, "x", ctx));
            tile.rect.y = static_cast<int>(read.integer(entry, "y", ctx));
            tile.rect.w = static_cast<int>(read.integer(entry, "w", ctx));
            tile.rect.h = static_cast<int>(read.integer(entry, "h", ctx));
            const json* center = read.array(entry, "center", ctx);
            if (center != nullptr) {
                if (center->size() != 3 || !(*center)[0].is_number() ||
                    !(*center)[1].is_number() || !(*center)[2].is_number()) {
                    problems.push_back(ctx + ".center must be an array of 3 numbers");
                } else {
                    tile.center = {(*center)[0].get<double>(), (*center)[1].get<double>(),
                                   (*center)[2].get<double>()};
                }
            }
            m.layout.tiles.push_back(tile);
        }
    }

    // Stored centers are advisory: verify them against the rect midpoints,
    // then recompute so downstream math is exact.
    if (frame_ok) {
        for (auto& tile : m.layout.tiles) {
            const std::string label = "tile " + std::to_string(tile.id);
            if (tile.rect.w <= 0 || tile.rect.h <= 0 || tile.rect.x < 0 ||
                tile.rect.y < 0 || tile.rect.x + tile.rect.w > m.layout.frame.width ||
                tile.rect.y + tile.rect.h > m.layout.frame.height) {
                continue;  // layout.validate() reports the rect problem
            }
            if (std::abs(tile.center.norm() - 1.0) > kCenterTol) {
                problems.push_back(label + ": center not on unit sphere");
                continue;
            }
            const Vec3 derived =
                erp_to_sphere(tile.rect.x + tile.rect.w / 2.0 - 0.5,
                              tile.rect.y + tile.rect.h / 2.0 - 0.5, m.layout.frame);
            if ((tile.center - derived).norm() > kCenterTol) {
                problems.push_back(label + ": center does not match its rect midpoint");
                continue;
            }
            tile.center = derived;
        }
        std::sort(m.layout.tiles.begin(), m.layout.tiles.end(),
                  [](const Tile& a, const Tile& b) { return a.id < b.id; });
    }

    if (!problems.empty()) {
        std::string msg = "invalid manifest:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ValidationError(msg);
    }

    m.validate();
    return m;
}

std::string segment_url(const Manifest& manifest, int tile_id, int rep_id,
                        int seg_index) {
    bool tile_ok = false;
    for (const auto& tile : manifest.layout.tiles) {
        tile_ok |= tile.id == tile_id;
    }
    if (!tile_ok) {
        throw DomainError("unknown tile id " + std::to_string(tile_id));
    }
    bool rep_ok = false;
    for (const auto& rep : manifest.ladder) {
        rep_ok |= rep.id == rep_id;
    }
    if (!rep_ok) {
        throw DomainError("unknown representation id " + std::to_string(rep_id));
    }
    if (seg_index < 0 || seg_index >= manifest.segment_count()) {
        throw DomainError("segment index " + std::to_string(seg_index) +
                          " outside [0, " + std::to_string(manifest.segment_count()) +
                          ")");
    }
    std::string url = manifest.url_template;
    url = replace_all(url, "{tile}", std::to_string(tile_id));
    url = replace_all(url, "{rep}", std::to_string(rep_id));
    url = replace_all(url, "{seg}", std::to_string(seg_index));
    return url;
}

}  // namespace tiledvr
