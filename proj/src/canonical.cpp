#include "tiledvr/canonical.hpp"

#include <cstdio>

#include "tiledvr/errors.hpp"

namespace tiledvr {

std::string format_real(double value) {
    if (value == 0.0) {
        value = 0.0;  // collapse -0
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::string format_int(std::int64_t value) {
    return std::to_string(value);
}

namespace {

void dump_node(const nlohmann::json& node, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (node.type()) {
        case nlohmann::json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            // nlohmann objects iterate in key-sorted order.
            for (auto it = node.begin(); it != node.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                dump_node(it.value(), depth + 1, out);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : node) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_node(item, depth + 1, out);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::json::value_t::string:
            out += node.dump();
            return;
        case nlohmann::json::value_t::boolean:
            out += node.get<bool>() ? "true" : "false";
            return;
        case nlohmann::json::value_t::number_integer:
            out += format_int(node.get<std::int64_t>());
            return;
        case nlohmann::json::value_t::number_unsigned:
            out += format_int(static_cast<std::int64_t>(node.get<std::uint64_t>()));
            return;
        case nlohmann::json::value_t::number_float:
            out += format_real(node.get<double>());
            return;
        case nlohmann::json::value_t::null:
            out += "null";
            return;
        default:
            throw Error("canonical_json: unsupported value type");
    }
}

}  // namespace

std::string canonical_json(const nlohmann::json& doc) {
    std::string out;
    dump_node(doc, 0, out);
    out += "\n";
    return out;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace tiledvr
