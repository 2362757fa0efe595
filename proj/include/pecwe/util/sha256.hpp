#pragma once

#include <string>
#include <string_view>

namespace pecwe {

/// Lowercase hex SHA-256 digest of the exact byte sequence.
std::string sha256_hex(std::string_view data);

}  // namespace pecwe
