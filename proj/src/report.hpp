#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace ringmap {

/// Canonical report form: keys sorted, integers bare, floats printed with 12
/// significant digits, exact rationals carried as "p/q" strings by their
/// producers. Two emissions of the same document are byte-identical.
std::string canonical_json(const nlohmann::json &doc);

std::uint64_t fnv1a64(const void *data, std::size_t size);
std::string fnv1a64_hex(const std::string &text);

}  // namespace ringmap
