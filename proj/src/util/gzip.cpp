#include "pecwe/util/gzip.hpp"

#include <zlib.h>

#include <cstring>

#include "pecwe/errors.hpp"

namespace pecwe {
namespace {

constexpr int kGzipWindow = 15 + 16;  // gzip wrapper
constexpr int kAutoWindow = 15 + 32;  // auto-detect gzip or zlib

std::string inflate_with_window(std::string_view data, int window_bits,
                                std::size_t size_hint, std::size_t max_output) {
  z_stream zs;
  std::memset(&zs, 0, sizeof zs);
  if (inflateInit2(&zs, window_bits) != Z_OK) {
    fail(ErrorKind::Io, "inflateInit2 failed");
  }
  std::string out;
  out.resize(size_hint > 0 ? size_hint : std::max<std::size_t>(data.size() * 4, 1024));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  int rc = Z_OK;
  do {
    if (zs.total_out >= out.size()) {
      if (out.size() >= max_output) {
        inflateEnd(&zs);
        fail(ErrorKind::Parse, "compressed data expands beyond limit");
      }
      out.resize(std::min(max_output, out.size() * 2));
    }
    zs.next_out = reinterpret_cast<Bytef*>(out.data() + zs.total_out);
    zs.avail_out = static_cast<uInt>(out.size() - zs.total_out);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END && rc != Z_BUF_ERROR) {
      inflateEnd(&zs);
      fail(ErrorKind::Parse, std::string("corrupt compressed data: ") + zError(rc));
    }
    if (rc == Z_BUF_ERROR && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      fail(ErrorKind::Parse, "truncated compressed data");
    }
  } while (rc != Z_STREAM_END);
  out.resize(zs.total_out);
  inflateEnd(&zs);
  return out;
}

}  // namespace

std::string gzip_compress(std::string_view data, int level) {
  z_stream zs;
  std::memset(&zs, 0, sizeof zs);
  if (deflateInit2(&zs, level, Z_DEFLATED, kGzipWindow, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    fail(ErrorKind::Io, "deflateInit2 failed");
  }
  // Pin the gzip header fields that would otherwise vary run to run.
  gz_header header;
  std::memset(&header, 0, sizeof header);
  header.time = 0;
  header.os = 255;
  deflateSetHeader(&zs, &header);

  std::string out;
  out.resize(deflateBound(&zs, static_cast<uLong>(data.size())) + 32);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  if (rc != Z_STREAM_END) {
    deflateEnd(&zs);
    fail(ErrorKind::Io, "deflate failed");
  }
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

std::string gzip_decompress(std::string_view data, std::size_t max_output) {
  return inflate_with_window(data, kAutoWindow, 0, max_output);
}

std::string inflate_raw(std::string_view data, std::size_t expected_size,
                        std::size_t max_output) {
  return inflate_with_window(data, -15, expected_size, max_output);
}

}  // namespace pecwe
