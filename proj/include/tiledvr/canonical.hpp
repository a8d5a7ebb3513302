#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace tiledvr {

// Canonical number formatting shared by the manifest, run summaries and the
// CSV writers: integers bare, reals with up to 9 significant digits, no
// negative zero. Emitting the same value twice yields byte-identical text.
std::string format_real(double value);
std::string format_int(std::int64_t value);

// Serializes a JSON tree in canonical form: object keys sorted, two-space
// indent, numbers via format_real/format_int, "\n"-terminated.
std::string canonical_json(const nlohmann::json& doc);

// FNV-1a 64-bit over raw bytes, rendered as 16 hex digits. Used for content
// fingerprints in run metadata.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace tiledvr
