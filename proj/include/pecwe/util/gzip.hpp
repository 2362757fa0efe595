#pragma once

#include <string>
#include <string_view>

namespace pecwe {

/// Gzip-wraps data with a fixed (zero) mtime so equal inputs always produce
/// identical bytes.
std::string gzip_compress(std::string_view data, int level = 9);

/// Inflates gzip or zlib data. `max_output` guards against decompression
/// bombs from untrusted feeds.
std::string gzip_decompress(std::string_view data,
                            std::size_t max_output = 512ull << 20);

/// Raw-deflate inflate (no header), used by the zip reader.
std::string inflate_raw(std::string_view data, std::size_t expected_size,
                        std::size_t max_output = 512ull << 20);

}  // namespace pecwe
