#include "report.hpp"

#include <cstdio>

#include "error.hpp"

namespace ringmap {

namespace {

void append_escaped(std::string &out, const std::string &s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void write(std::string &out, const nlohmann::json &v) {
    using value_t = nlohmann::json::value_t;
    switch (v.type()) {
        case value_t::null: out += "null"; break;
        case value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
        case value_t::number_integer: out += std::to_string(v.get<std::int64_t>()); break;
        case value_t::number_unsigned: out += std::to_string(v.get<std::uint64_t>()); break;
        case value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
            out += buf;
            break;
        }
        case value_t::string: append_escaped(out, v.get<std::string>()); break;
        case value_t::array: {
            out += '[';
            bool first = true;
            for (const auto &item : v) {
                if (!first) out += ',';
                first = false;
                write(out, item);
            }
            out += ']';
            break;
        }
        case value_t::object: {
            // nlohmann::json already keeps object keys sorted.
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                append_escaped(out, it.key());
                out += ':';
                write(out, it.value());
            }
            out += '}';
            break;
        }
        default: raise(errc::invalid, "unsupported JSON value in report");
    }
}

}  // namespace

std::string canonical_json(const nlohmann::json &doc) {
    std::string out;
    write(out, doc);
    out += '\n';
    return out;
}

std::uint64_t fnv1a64(const void *data, std::size_t size) {
    const auto *bytes = static_cast<const unsigned char *>(data);
    std::uint64_t hash = 1469598103934665603ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string fnv1a64_hex(const std::string &text) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text.data(), text.size())));
    return buf;
}

}  // namespace ringmap
